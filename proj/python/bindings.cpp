#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "betamix/blocks.hpp"
#include "betamix/errors.hpp"
#include "betamix/experiment.hpp"
#include "betamix/finite.hpp"
#include "betamix/generators.hpp"
#include "betamix/kde.hpp"
#include "betamix/oracles.hpp"
#include "betamix/path_io.hpp"

namespace py = pybind11;
using namespace betamix;

namespace {

py::dict estimate_to_dict(const BetaEstimate& e) {
  py::dict d;
  d["m"] = e.m;
  d["k"] = e.k;
  d["n_pairs"] = e.n_pairs;
  d["kind"] = to_string(e.kind);
  d["beta_hat"] = e.beta_hat;
  d["raw_beta_hat"] = e.diagnostics.raw_beta_hat;
  d["bandwidth"] = e.diagnostics.bandwidth;
  d["warnings"] = e.diagnostics.warnings;
  return d;
}

EstimatorSettings make_settings(const std::string& k, std::optional<double> eta,
                                std::optional<double> gamma, double s, double lam,
                                const std::string& kernel) {
  EstimatorSettings st;
  st.k = k;
  st.eta = eta;
  st.gamma = gamma;
  st.kde_s = s;
  st.kde_lambda = lam;
  st.kernel = kernel;
  return st;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "beta-mixing coefficient estimators";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("block_count", &block_count, py::arg("k"), py::arg("n"));
  m.def("k_star_ar1", &k_star_ar1, py::arg("b"), py::arg("n"));

  m.def(
      "gen_ar1",
      [](double phi, double sigma, std::size_t n, std::uint64_t seed) {
        return gen_ar1(ARSpec(phi, sigma), n, seed).values;
      },
      py::arg("phi"), py::arg("sigma"), py::arg("n"), py::arg("seed"));
  m.def(
      "gen_lognormal_ar1",
      [](double phi, double sigma, std::size_t n, std::uint64_t seed) {
        return gen_lognormal_ar1(ARSpec(phi, sigma), n, seed).values;
      },
      py::arg("phi"), py::arg("sigma"), py::arg("n"), py::arg("seed"));
  m.def(
      "gen_finite_chain",
      [](const Eigen::MatrixXd& transition, std::size_t n, std::uint64_t seed) {
        return gen_finite_chain(FiniteChainSpec(transition), n, seed).symbols;
      },
      py::arg("transition"), py::arg("n"), py::arg("seed"));
  m.def("stationary_distribution", &stationary_distribution, py::arg("transition"));

  m.def(
      "estimate",
      [](const std::vector<double>& path, std::size_t lag, const std::string& estimator,
         const std::string& k, std::optional<double> eta, std::optional<double> gamma, double s,
         double lam, const std::string& kernel) {
        const auto st = make_settings(k, eta, gamma, s, lam, kernel);
        if (is_finite_estimator(estimator)) {
          PathFile f{"", path};
          return estimate_to_dict(run_estimator(estimator, to_symbol_path(f), lag, st));
        }
        return estimate_to_dict(run_estimator(estimator, RealPath(path), lag, st));
      },
      py::arg("path"), py::arg("m"), py::arg("estimator") = "kde-scott", py::arg("k") = "",
      py::arg("eta") = py::none(), py::arg("gamma") = py::none(), py::arg("s") = 3.0,
      py::arg("besov_bound") = 1.0, py::arg("kernel") = "gaussian",
      "Runs a named estimator (kde-scott, kde-condition1, kde-k0, finite, acf) on a path.");

  m.def(
      "estimate_sup",
      [](const std::vector<std::uint32_t>& symbols, std::size_t alphabet, std::size_t k) {
        py::list out;
        for (const auto& e : estimate_beta_sup(SymbolPath(symbols, alphabet), k)) {
          out.append(estimate_to_dict(e));
        }
        return out;
      },
      py::arg("symbols"), py::arg("alphabet"), py::arg("k"));

  m.def(
      "beta_gaussian_ar1",
      [](double phi, std::size_t lag) { return beta_gaussian_ar1(ARSpec(phi, 1.0), lag); },
      py::arg("phi"), py::arg("m"));
  m.def(
      "beta_gaussian_correlation", [](double rho) { return beta_gaussian_correlation(rho); },
      py::arg("rho"));
  m.def(
      "beta_exact_finite",
      [](const Eigen::MatrixXd& transition, std::size_t lag) {
        return beta_exact_finite(FiniteChainSpec(transition), lag);
      },
      py::arg("transition"), py::arg("m"));
  m.def(
      "jansson_bounds",
      [](double rho) {
        const auto j = jansson_bounds(rho);
        return py::make_tuple(j.lower, j.upper);
      },
      py::arg("rho"));
  m.def(
      "acf",
      [](const std::vector<double>& path, std::size_t lag) {
        return acf_estimate(RealPath(path), lag).rho_hat;
      },
      py::arg("path"), py::arg("m"));

  m.def(
      "run_experiment",
      [](const std::string& config_text, std::size_t jobs) {
        std::istringstream in(config_text);
        const auto config = parse_experiment_config(in);
        std::vector<ExperimentRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_experiment(config, jobs);
        }
        std::ostringstream out;
        write_experiment_csv(out, rows);
        return out.str();
      },
      py::arg("config"), py::arg("jobs") = 1,
      "Runs an experiment from config text and returns the CSV.");
}
