#include "betamix/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "betamix/errors.hpp"
#include "betamix/finite.hpp"
#include "betamix/generators.hpp"
#include "betamix/kde.hpp"
#include "betamix/oracles.hpp"
#include "betamix/path_io.hpp"

namespace betamix {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw DomainError("config: " + key + " is not a number: " + v);
  return d;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
    throw DomainError("config: " + key + " is not a non-negative integer: " + v);
  }
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw DomainError("config: " + key + " out of range: " + v);
  }
}

KernelSpec kernel_by_name(const std::string& name) {
  if (name == "gaussian") return gaussian_kernel();
  if (name == "order4") return product_order4_kernel();
  throw DomainError("unknown kernel '" + name + "'");
}

MixingEnvelope envelope_from(const EstimatorSettings& s) {
  if (!s.eta || !s.gamma) throw DomainError("k = auto needs mixing eta and gamma");
  return MixingEnvelope(*s.eta, *s.gamma);
}

SkipPolicy kde_skip(const EstimatorSettings& s) {
  const std::string k = s.k.empty() ? "ar:0.9" : s.k;
  if (k == "zero" || k == "0") return OverlappingPairs{};
  if (k == "auto") {
    return AutoContinuousSkip{envelope_from(s), SmoothnessSpec(s.kde_s, s.kde_lambda), s.kde_l1};
  }
  if (k.rfind("ar:", 0) == 0) return AutoAr1Skip{to_double("k", k.substr(3))};
  return FixedSkip{static_cast<std::size_t>(to_uint("k", k))};
}

FiniteSkip finite_skip(const EstimatorSettings& s) {
  const std::string k = s.k.empty() ? "auto" : s.k;
  if (k == "auto") return envelope_from(s);
  const auto v = to_uint("k", k);
  if (v < 1) throw DomainError("finite estimator needs k >= 1");
  return static_cast<std::size_t>(v);
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// Rethrows the captured exception with context, keeping its category.
[[noreturn]] void rethrow_with_context(const std::exception_ptr& err, const std::string& ctx) {
  try {
    std::rethrow_exception(err);
  } catch (const NumericalError& e) {
    throw NumericalError(ctx + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError(ctx + ": " + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(ctx + ": " + e.what());
  }
}

}  // namespace

bool is_finite_estimator(const std::string& name) { return name == "finite"; }

BetaEstimate run_estimator(const std::string& name, const RealPath& path, std::size_t m,
                           const EstimatorSettings& settings) {
  if (name == "acf") {
    const AcfEstimate acf = acf_estimate(path, m);
    BetaEstimate est;
    est.m = m;
    est.kind = EstimatorKind::acf;
    est.n_pairs = path.size() - m;
    est.beta_hat = beta_from_acf(acf.rho_hat);
    est.diagnostics.raw_beta_hat = est.beta_hat;
    return est;
  }
  KdeOptions opt;
  opt.kernel = kernel_by_name(settings.kernel);
  if (name == "kde-scott") {
    opt.skip = kde_skip(settings);
  } else if (name == "kde-k0") {
    opt.skip = OverlappingPairs{};
  } else if (name == "kde-condition1") {
    opt.skip = kde_skip(settings);
    opt.bandwidth = BandwidthRule::condition1(SmoothnessSpec(settings.kde_s, settings.kde_lambda));
  } else if (name == "finite") {
    throw DomainError("estimator 'finite' needs a finite-alphabet path");
  } else {
    throw DomainError("unknown estimator '" + name + "'");
  }
  return estimate_beta_kde(path, m, opt);
}

BetaEstimate run_estimator(const std::string& name, const SymbolPath& path, std::size_t m,
                           const EstimatorSettings& settings) {
  if (!is_finite_estimator(name)) {
    throw DomainError("estimator '" + name + "' does not accept a finite-alphabet path");
  }
  return estimate_beta_finite(path, m, finite_skip(settings));
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::ar1: return "ar1";
    case ModelKind::lognormal_ar1: return "lognormal-ar1";
    case ModelKind::finite_chain: return "finite-chain";
  }
  return "unknown";
}

EstimatorSettings ExperimentConfig::settings_for(const std::string& estimator) const {
  EstimatorSettings s = settings;
  const auto it = k_policy.find(estimator);
  s.k = it == k_policy.end() ? std::string{} : it->second;
  return s;
}

void ExperimentConfig::validate() const {
  if (replicates < 1) throw DomainError("config: replicates must be >= 1");
  if (sizes.empty()) throw DomainError("config: sizes is empty");
  if (!std::is_sorted(sizes.begin(), sizes.end())) {
    throw DomainError("config: sizes must be ascending");
  }
  if (lags.empty()) throw DomainError("config: lags is empty");
  for (auto m : lags) {
    if (m < 1) throw DomainError("config: lags must be >= 1");
  }
  if (estimators.empty()) throw DomainError("config: no estimators");
  const auto& known = estimator_names();
  for (const auto& e : estimators) {
    if (std::find(known.begin(), known.end(), e) == known.end()) {
      throw DomainError("config: unknown estimator '" + e + "'");
    }
    const bool finite_model = model == ModelKind::finite_chain;
    if (is_finite_estimator(e) != finite_model) {
      throw DomainError("config: estimator '" + e + "' does not match model " + to_string(model));
    }
  }
  if (model == ModelKind::finite_chain) {
    FiniteChainSpec chain(matrix);  // validates
  } else {
    ARSpec spec(phi, sigma);
  }
}

ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig c;
  std::string line;
  std::size_t line_no = 0;
  bool have_model = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    if (key == "model") {
      have_model = true;
      if (val == "ar1") c.model = ModelKind::ar1;
      else if (val == "lognormal-ar1") c.model = ModelKind::lognormal_ar1;
      else if (val == "finite-chain") c.model = ModelKind::finite_chain;
      else throw DomainError("config: unknown model '" + val + "'");
    } else if (key == "model.phi") {
      c.phi = to_double(key, val);
    } else if (key == "model.sigma") {
      c.sigma = to_double(key, val);
    } else if (key == "model.matrix") {
      c.matrix = parse_inline_matrix(val);
    } else if (key == "sizes") {
      for (const auto& v : split(val, ',')) c.sizes.push_back(to_uint(key, v));
    } else if (key == "lags") {
      for (const auto& v : split(val, ',')) c.lags.push_back(to_uint(key, v));
    } else if (key == "replicates") {
      c.replicates = to_uint(key, val);
    } else if (key == "seed") {
      c.seed = to_uint(key, val);
    } else if (key == "estimators") {
      c.estimators = split(val, ',');
    } else if (key.rfind("estimator.", 0) == 0 && key.size() > 12 &&
               key.compare(key.size() - 2, 2, ".k") == 0) {
      c.k_policy[key.substr(10, key.size() - 12)] = val;
    } else if (key == "mixing.eta") {
      c.settings.eta = to_double(key, val);
    } else if (key == "mixing.gamma") {
      c.settings.gamma = to_double(key, val);
    } else if (key == "kde.s") {
      c.settings.kde_s = to_double(key, val);
    } else if (key == "kde.lambda") {
      c.settings.kde_lambda = to_double(key, val);
    } else if (key == "kde.l1") {
      c.settings.kde_l1 = to_double(key, val);
    } else if (key == "kde.kernel") {
      c.settings.kernel = val;
    } else {
      throw DomainError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (!have_model) throw DomainError("config: model is required");
  c.validate();
  return c;
}

double true_beta(const ExperimentConfig& config, std::size_t m) {
  if (config.model == ModelKind::finite_chain) {
    return beta_exact_finite(FiniteChainSpec(config.matrix), m);
  }
  // The log-normal transform is a bijection of each coordinate, so beta is unchanged.
  return beta_gaussian_ar1(ARSpec(config.phi, config.sigma), m);
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config, std::size_t jobs) {
  config.validate();
  const std::size_t n_sizes = config.sizes.size();
  const std::size_t n_lags = config.lags.size();
  const std::size_t n_est = config.estimators.size();
  const std::size_t reps = config.replicates;

  std::vector<double> truth(n_lags);
  for (std::size_t j = 0; j < n_lags; ++j) truth[j] = true_beta(config, config.lags[j]);

  std::optional<FiniteChainSpec> chain;
  if (config.model == ModelKind::finite_chain) chain.emplace(config.matrix);
  const ARSpec ar = config.model == ModelKind::finite_chain ? ARSpec(0.5, 1.0)
                                                            : ARSpec(config.phi, config.sigma);

  std::vector<EstimatorSettings> settings;
  for (const auto& e : config.estimators) settings.push_back(config.settings_for(e));

  // One task per (size, replicate): generate the path once, run every estimator and lag.
  const std::size_t tasks = n_sizes * reps;
  std::vector<double> estimates(n_est * n_sizes * n_lags * reps, 0.0);
  auto slot = [&](std::size_t e, std::size_t s, std::size_t l, std::size_t r) -> double& {
    return estimates[((e * n_sizes + s) * n_lags + l) * reps + r];
  };

  std::vector<std::exception_ptr> errors(tasks);
  std::vector<std::string> contexts(tasks);
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (std::size_t t = next.fetch_add(1); t < tasks; t = next.fetch_add(1)) {
      const std::size_t s = t / reps;
      const std::size_t r = t % reps;
      const std::size_t n = config.sizes[s];
      const std::uint64_t seed = replicate_seed(config.seed, r);
      std::string ctx = "n=" + std::to_string(n) + " rep=" + std::to_string(r);
      try {
        if (chain) {
          const SymbolPath path = gen_finite_chain(*chain, n, seed);
          for (std::size_t e = 0; e < n_est; ++e) {
            for (std::size_t l = 0; l < n_lags; ++l) {
              ctx = config.estimators[e] + " n=" + std::to_string(n) + " m=" +
                    std::to_string(config.lags[l]) + " rep=" + std::to_string(r);
              slot(e, s, l, r) =
                  run_estimator(config.estimators[e], path, config.lags[l], settings[e]).beta_hat;
            }
          }
        } else {
          const RealPath path = config.model == ModelKind::ar1 ? gen_ar1(ar, n, seed)
                                                               : gen_lognormal_ar1(ar, n, seed);
          for (std::size_t e = 0; e < n_est; ++e) {
            for (std::size_t l = 0; l < n_lags; ++l) {
              ctx = config.estimators[e] + " n=" + std::to_string(n) + " m=" +
                    std::to_string(config.lags[l]) + " rep=" + std::to_string(r);
              slot(e, s, l, r) =
                  run_estimator(config.estimators[e], path, config.lags[l], settings[e]).beta_hat;
            }
          }
        }
      } catch (...) {
        errors[t] = std::current_exception();
        contexts[t] = ctx;
      }
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, tasks));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (std::size_t t = 0; t < tasks; ++t) {
    if (errors[t]) rethrow_with_context(errors[t], "experiment failed at " + contexts[t]);
  }

  std::vector<ExperimentRow> rows;
  rows.reserve(estimates.size());
  const std::string model = to_string(config.model);
  for (std::size_t e = 0; e < n_est; ++e) {
    for (std::size_t s = 0; s < n_sizes; ++s) {
      for (std::size_t l = 0; l < n_lags; ++l) {
        for (std::size_t r = 0; r < reps; ++r) {
          const double est = slot(e, s, l, r);
          rows.push_back(ExperimentRow{model, config.estimators[e], config.sizes[s],
                                       config.lags[l], r, replicate_seed(config.seed, r), est,
                                       truth[l], std::abs(est - truth[l])});
        }
      }
    }
  }
  return rows;
}

void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "model,estimator,n,m,rep,seed,beta_hat,beta_true,abs_error\n";
  for (const auto& r : rows) {
    out << r.model << ',' << r.estimator << ',' << r.n << ',' << r.m << ',' << r.rep << ','
        << r.seed << ',' << format_double(r.beta_hat) << ',' << format_double(r.beta_true) << ','
        << format_double(r.abs_error) << '\n';
  }
}

}  // namespace betamix
