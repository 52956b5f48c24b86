#include "betamix/generators.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "betamix/errors.hpp"

namespace betamix {

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed) : key_(splitmix64_mix(seed)) {}

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
  return splitmix64_mix(key_ + (counter + 1) * 0x9E3779B97F4A7C15ULL);
}

double CounterRng::uniform(std::uint64_t counter) const {
  return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t counter) const {
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * uniform(counter));
}

RealPath gen_ar1(const ARSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw DomainError("path length must be >= 2");
  const CounterRng rng(seed);
  std::vector<double> x(n);
  x[0] = std::sqrt(spec.stationary_variance()) * rng.normal(0);
  for (std::size_t t = 1; t < n; ++t) x[t] = spec.phi * x[t - 1] + spec.sigma * rng.normal(t);
  return RealPath(std::move(x));
}

RealPath gen_lognormal_ar1(const ARSpec& spec, std::size_t n, std::uint64_t seed) {
  RealPath p = gen_ar1(spec, n, seed);
  const double mean = std::exp(spec.stationary_variance() / 2.0);
  for (double& v : p.values) v = std::exp(v) - mean;
  return p;
}

namespace {

std::uint32_t draw_categorical(const double* probs, Eigen::Index count, double u) {
  double acc = 0.0;
  for (Eigen::Index j = 0; j + 1 < count; ++j) {
    acc += probs[j];
    if (u < acc) return static_cast<std::uint32_t>(j);
  }
  // Rounding leaves u >= acc only for the last category (or zero-mass tails).
  for (Eigen::Index j = count - 1; j > 0; --j) {
    if (probs[j] > 0.0) return static_cast<std::uint32_t>(j);
  }
  return 0;
}

}  // namespace

SymbolPath gen_finite_chain(const FiniteChainSpec& chain, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw DomainError("path length must be >= 2");
  const CounterRng rng(seed);
  const Eigen::Index s = chain.transition.rows();
  // Row-major copy so each row's probabilities are contiguous.
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> p = chain.transition;
  std::vector<std::uint32_t> x(n);
  x[0] = draw_categorical(chain.stationary.data(), s, rng.uniform(0));
  for (std::size_t t = 1; t < n; ++t) {
    x[t] = draw_categorical(p.data() + x[t - 1] * s, s, rng.uniform(t));
  }
  return SymbolPath(std::move(x), static_cast<std::size_t>(s));
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& transition) {
  const Eigen::Index s = transition.rows();
  if (s == 0 || transition.cols() != s) throw DomainError("transition matrix must be square");
  constexpr double kTol = 1e-12;
  constexpr std::size_t kMaxIter = 1'000'000;
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(s, s);
  bool converged = false;
  for (std::size_t it = 0; it < kMaxIter; ++it) {
    Eigen::MatrixXd next = q * transition;
    const double change = (next - q).cwiseAbs().maxCoeff();
    q = std::move(next);
    if (change < kTol) {
      converged = true;
      break;
    }
  }
  // A few squarings push the residual geometric tail down to rounding level.
  if (converged) {
    for (int i = 0; i < 4; ++i) q = q * q;
  }
  const Eigen::VectorXd pi = q.colwise().mean().transpose();
  double spread = 0.0;
  for (Eigen::Index i = 0; i < s; ++i) {
    spread = std::max(spread, (q.row(i).transpose() - pi).cwiseAbs().maxCoeff());
  }
  if (!converged || spread > 1e-10) {
    throw NumericalError("stationary distribution: chain may be periodic or reducible");
  }
  const Eigen::VectorXd normalized = pi / pi.sum();
  if ((transition.transpose() * normalized - normalized).cwiseAbs().maxCoeff() > 1e-10) {
    throw NumericalError("stationary distribution: pi P = pi not reached to 1e-10");
  }
  return normalized;
}

}  // namespace betamix
