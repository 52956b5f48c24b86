#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "betamix/oracles.hpp"
#include "betamix/types.hpp"

namespace betamix {

/// Counter-based uniform source: draw i is SplitMix64's finalizer applied to
/// key + (i + 1) * 0x9E3779B97F4A7C15, where key is the finalizer of the seed.
/// The same seed gives the same stream on every platform.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed);

  std::uint64_t bits(std::uint64_t counter) const;

  /// Uniform on the open interval (0, 1): ((bits >> 11) + 0.5) / 2^53.
  double uniform(std::uint64_t counter) const;

  /// Standard normal by inverse CDF of uniform(counter).
  double normal(std::uint64_t counter) const;

private:
  std::uint64_t key_;
};

std::uint64_t splitmix64_mix(std::uint64_t z);

/// Seed of replicate `rep` derived from a base seed: base XOR rep.
inline std::uint64_t replicate_seed(std::uint64_t base, std::uint64_t rep) { return base ^ rep; }

/// Stationary AR(1) path; X_0 ~ N(0, sigma^2/(1-phi^2)) from draw 0, noise from draws 1..n-1.
RealPath gen_ar1(const ARSpec& spec, std::size_t n, std::uint64_t seed);

/// exp(X_t) - E exp(X_t) for the AR(1) path of the same seed; the mean exp(v/2),
/// v = sigma^2/(1-phi^2), is subtracted in closed form.
RealPath gen_lognormal_ar1(const ARSpec& spec, std::size_t n, std::uint64_t seed);

/// Stationary finite chain path: X_0 ~ pi, then rows of the transition matrix,
/// each step by inverse CDF of one uniform.
SymbolPath gen_finite_chain(const FiniteChainSpec& chain, std::size_t n, std::uint64_t seed);

/// Solves pi P = pi by power iteration on all point-mass starts at once.
/// Throws NumericalError "chain may be periodic or reducible" on failure.
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& transition);

}  // namespace betamix
