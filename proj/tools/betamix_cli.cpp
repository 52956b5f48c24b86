// betamix: generate paths, estimate beta(m), query oracles, run convergence experiments.
//
// Exit codes: 0 success, 2 usage or domain error, 3 numerical failure.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "betamix/errors.hpp"
#include "betamix/experiment.hpp"
#include "betamix/generators.hpp"
#include "betamix/oracles.hpp"
#include "betamix/path_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitNumerical = 3;

std::ifstream open_input(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw betamix::DomainError("cannot open " + file);
  return in;
}

Eigen::MatrixXd load_matrix(const std::string& file) {
  auto in = open_input(file);
  return betamix::read_matrix_csv(in);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

struct GenerateArgs {
  std::string model = "ar1";
  double phi = 0.5;
  double sigma = 1.0;
  std::string matrix;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string out;
};

void cmd_generate(const GenerateArgs& a) {
  std::ofstream file;
  if (!a.out.empty() && a.out != "-") {
    file.open(a.out);
    if (!file) throw betamix::DomainError("cannot write " + a.out);
  }
  std::ostream& out = file.is_open() ? static_cast<std::ostream&>(file) : std::cout;

  if (a.model == "ar1" || a.model == "lognormal-ar1") {
    const betamix::ARSpec spec(a.phi, a.sigma);
    const auto path = a.model == "ar1" ? betamix::gen_ar1(spec, a.n, a.seed)
                                       : betamix::gen_lognormal_ar1(spec, a.n, a.seed);
    betamix::write_path_file(out, betamix::path_header(a.model, a.n, a.seed), path);
  } else if (a.model == "chain" || a.model == "finite-chain") {
    if (a.matrix.empty()) throw betamix::DomainError("--model chain needs --matrix");
    const betamix::FiniteChainSpec chain(load_matrix(a.matrix));
    const auto path = betamix::gen_finite_chain(chain, a.n, a.seed);
    betamix::write_path_file(out, betamix::path_header("finite-chain", a.n, a.seed), path);
  } else {
    throw betamix::DomainError("unknown model '" + a.model + "'");
  }
}

struct EstimateArgs {
  std::string path;
  std::string estimator = "kde-scott";
  std::size_t m = 1;
  std::string k;
  std::optional<double> b;
  std::optional<std::size_t> alphabet;
  betamix::EstimatorSettings settings;
};

void cmd_estimate(EstimateArgs a) {
  auto in = open_input(a.path);
  const auto file = betamix::read_path_file(in);
  a.settings.k = a.k;
  if (a.b) {
    if (!a.k.empty()) throw betamix::DomainError("--b and --k are mutually exclusive");
    a.settings.k = "ar:" + fmt(*a.b);
  }
  betamix::BetaEstimate est;
  if (betamix::is_finite_estimator(a.estimator)) {
    est = betamix::run_estimator(a.estimator, betamix::to_symbol_path(file, a.alphabet), a.m,
                                 a.settings);
  } else {
    if (a.alphabet) throw betamix::DomainError("--alphabet applies only to the finite estimator");
    est = betamix::run_estimator(a.estimator, betamix::RealPath(file.values), a.m, a.settings);
  }
  for (const auto& w : est.diagnostics.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << "estimator,m,k,N,beta_hat,raw_beta_hat\n"
            << a.estimator << ',' << est.m << ',' << est.k << ',' << est.n_pairs << ','
            << fmt(est.beta_hat) << ',' << fmt(est.diagnostics.raw_beta_hat) << '\n';
}

struct ExperimentArgs {
  std::string config;
  std::string out;
  std::size_t jobs = 1;
};

void cmd_experiment(const ExperimentArgs& a) {
  auto in = open_input(a.config);
  const auto config = betamix::parse_experiment_config(in);
  const auto rows = betamix::run_experiment(config, a.jobs);
  // Rows are complete before anything is written, so a failure leaves no partial file.
  std::ostringstream buffer;
  betamix::write_experiment_csv(buffer, rows);
  if (a.out.empty() || a.out == "-") {
    std::cout << buffer.str();
    return;
  }
  std::ofstream out(a.out, std::ios::binary);
  if (!out) throw betamix::DomainError("cannot write " + a.out);
  out << buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Estimate beta-mixing coefficients of stationary Markov processes"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Simulate a sample path");
  generate->add_option("--model", gen.model, "ar1 | lognormal-ar1 | chain")->capture_default_str();
  generate->add_option("--phi", gen.phi, "AR(1) coefficient")->capture_default_str();
  generate->add_option("--sigma", gen.sigma, "AR(1) innovation scale")->capture_default_str();
  generate->add_option("--matrix", gen.matrix, "transition matrix CSV (chain)");
  generate->add_option("--n", gen.n, "path length")->required();
  generate->add_option("--seed", gen.seed, "random seed")->capture_default_str();
  generate->add_option("--out", gen.out, "output file (default stdout)");

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Estimate beta(m) from a path file");
  estimate->add_option("--path", est.path, "path file")->required();
  estimate->add_option("--estimator", est.estimator, "kde-scott | kde-condition1 | kde-k0 | finite | acf")
      ->capture_default_str();
  estimate->add_option("--m", est.m, "lag")->capture_default_str();
  estimate->add_option("--k", est.k, "skip length: integer | auto | ar:<b> | zero");
  estimate->add_option("--b", est.b, "AR(1) coefficient bound for the KDE skip length");
  estimate->add_option("--eta", est.settings.eta, "mixing envelope eta (k = auto)");
  estimate->add_option("--gamma", est.settings.gamma, "mixing envelope gamma (k = auto)");
  estimate->add_option("--s", est.settings.kde_s, "smoothness s")->capture_default_str();
  estimate->add_option("--lambda", est.settings.kde_lambda, "Besov norm bound")->capture_default_str();
  estimate->add_option("--l1", est.settings.kde_l1, "L1 bound of the joint density")
      ->capture_default_str();
  estimate->add_option("--kernel", est.settings.kernel, "gaussian | order4")->capture_default_str();
  estimate->add_option("--alphabet", est.alphabet, "alphabet size (finite)");

  auto* oracle = app.add_subcommand("oracle", "Ground-truth beta values and bounds");
  oracle->require_subcommand(1);
  double phi = 0.5;
  double rho = 0.0;
  std::size_t lag = 1;
  std::string matrix_file;
  auto* ar1_beta = oracle->add_subcommand("ar1-beta", "beta(m) of a Gaussian AR(1)");
  ar1_beta->add_option("--phi", phi, "AR(1) coefficient")->required();
  ar1_beta->add_option("--m", lag, "lag")->required();
  auto* chain_beta = oracle->add_subcommand("chain-beta", "beta(m) of a finite chain");
  chain_beta->add_option("--matrix", matrix_file, "transition matrix CSV")->required();
  chain_beta->add_option("--m", lag, "lag")->required();
  auto* jansson = oracle->add_subcommand("jansson", "TV bounds for a bivariate normal");
  jansson->add_option("--rho", rho, "correlation")->required();

  ExperimentArgs exp;
  auto* experiment = app.add_subcommand("experiment", "Run a convergence experiment");
  experiment->add_option("--config", exp.config, "config file")->required();
  experiment->add_option("--out", exp.out, "CSV output (default stdout)");
  experiment->add_option("--jobs", exp.jobs, "worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitDomain;
  }

  try {
    if (*generate) {
      cmd_generate(gen);
    } else if (*estimate) {
      cmd_estimate(est);
    } else if (*ar1_beta) {
      std::cout << fmt(betamix::beta_gaussian_ar1(betamix::ARSpec(phi, 1.0), lag)) << '\n';
    } else if (*chain_beta) {
      const betamix::FiniteChainSpec chain(load_matrix(matrix_file));
      std::cout << fmt(betamix::beta_exact_finite(chain, lag)) << '\n';
    } else if (*jansson) {
      const auto j = betamix::jansson_bounds(rho);
      std::cout << fmt(j.lower_clamped) << ',' << fmt(j.upper) << '\n';
    } else if (*experiment) {
      cmd_experiment(exp);
    }
  } catch (const betamix::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const betamix::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}
