#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace betamix {

/// Real-valued observations X_0..X_{n-1} of a stationary process.
struct RealPath {
  std::vector<double> values;

  RealPath() = default;
  explicit RealPath(std::vector<double> v);

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

/// Finite-alphabet observations, each symbol in [0, alphabet_size).
struct SymbolPath {
  std::vector<std::uint32_t> symbols;
  std::size_t alphabet_size = 0;

  SymbolPath() = default;
  SymbolPath(std::vector<std::uint32_t> s, std::size_t alphabet);

  std::size_t size() const { return symbols.size(); }
  std::uint32_t operator[](std::size_t i) const { return symbols[i]; }
};

/// Exponential envelope beta(m) <= eta * exp(-gamma * m).
struct MixingEnvelope {
  double eta;
  double gamma;

  MixingEnvelope(double eta, double gamma);
};

/// Besov smoothness s = [s] + {s} with {s} in (0, 1], and the norm bound Lambda.
struct SmoothnessSpec {
  double s;
  int int_part;
  double frac_part;
  double besov_bound;

  SmoothnessSpec(double s, double besov_bound);
};

enum class EstimatorKind { kde, finite, acf };

std::string to_string(EstimatorKind kind);

struct BetaDiagnostics {
  double raw_beta_hat = 0.0;
  double bandwidth = 0.0;
  double grid_step = 0.0;
  std::size_t grid_nodes_per_axis = 0;
  double kde_mass = 0.0;
  std::vector<std::string> warnings;
};

struct BetaEstimate {
  std::size_t m = 0;
  double beta_hat = 0.0;
  std::size_t k = 0;
  std::size_t n_pairs = 0;
  EstimatorKind kind = EstimatorKind::kde;
  BetaDiagnostics diagnostics;
};

}  // namespace betamix
