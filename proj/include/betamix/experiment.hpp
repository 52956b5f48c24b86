#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "betamix/types.hpp"

namespace betamix {

/// Per-estimator tuning shared by the experiment runner and the CLI.
struct EstimatorSettings {
  std::string k;  // integer | auto | ar:<b> | zero; empty picks the estimator default
  std::optional<double> eta;
  std::optional<double> gamma;
  double kde_s = 3.0;
  double kde_lambda = 1.0;
  double kde_l1 = 2.0;
  std::string kernel = "gaussian";
};

inline const std::vector<std::string>& estimator_names() {
  static const std::vector<std::string> names{"kde-scott", "kde-condition1", "kde-k0", "finite",
                                              "acf"};
  return names;
}

bool is_finite_estimator(const std::string& name);

/// Runs a named estimator on a real-valued path (kde-*, acf).
BetaEstimate run_estimator(const std::string& name, const RealPath& path, std::size_t m,
                           const EstimatorSettings& settings);

/// Runs the finite estimator on a symbol path.
BetaEstimate run_estimator(const std::string& name, const SymbolPath& path, std::size_t m,
                           const EstimatorSettings& settings);

enum class ModelKind { ar1, lognormal_ar1, finite_chain };

std::string to_string(ModelKind kind);

/// Convergence-experiment description, read from a flat `key = value` file.
///
/// Keys:
///   model                  ar1 | lognormal-ar1 | finite-chain
///   model.phi, model.sigma AR(1) parameters (sigma defaults to 1)
///   model.matrix           finite chain, rows separated by ';', entries by ','
///   sizes, lags            comma-separated, sizes ascending, lags >= 1
///   replicates, seed       replicate count and base seed
///   estimators             subset of kde-scott, kde-condition1, kde-k0, finite, acf
///   estimator.<name>.k     integer | auto | ar:<b> | zero   (kde default ar:0.9,
///                          finite default auto)
///   mixing.eta, mixing.gamma   envelope used by `auto`
///   kde.s, kde.lambda, kde.l1  smoothness, Besov bound and L1 for kde-condition1/auto
///   kde.kernel             gaussian | order4
struct ExperimentConfig {
  ModelKind model = ModelKind::ar1;
  double phi = 0.5;
  double sigma = 1.0;
  Eigen::MatrixXd matrix;
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> lags;
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> estimators;
  std::map<std::string, std::string> k_policy;
  EstimatorSettings settings;  // k is taken from k_policy per estimator

  EstimatorSettings settings_for(const std::string& estimator) const;

  void validate() const;
};

ExperimentConfig parse_experiment_config(std::istream& in);

struct ExperimentRow {
  std::string model;
  std::string estimator;
  std::size_t n;
  std::size_t m;
  std::size_t rep;
  std::uint64_t seed;
  double beta_hat;
  double beta_true;
  double abs_error;
};

/// Runs every (estimator, n, m, replicate) cell. Rows come back sorted by estimator
/// (config order), n, m, rep, independent of `jobs`. Any failure aborts the run.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config, std::size_t jobs = 1);

/// Header `model,estimator,n,m,rep,seed,beta_hat,beta_true,abs_error` then one line per row.
void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

/// Ground-truth beta(m) for the configured model.
double true_beta(const ExperimentConfig& config, std::size_t m);

}  // namespace betamix
