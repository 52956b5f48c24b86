#include "betamix/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "betamix/errors.hpp"
#include "betamix/generators.hpp"

namespace betamix {

namespace {

void validate_transition(const Eigen::MatrixXd& p) {
  if (p.rows() == 0 || p.rows() != p.cols()) {
    throw DomainError("transition matrix must be square and non-empty");
  }
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      if (!(p(i, j) >= 0.0)) throw DomainError("transition matrix has a negative entry");
      row += p(i, j);
    }
    if (std::abs(row - 1.0) > 1e-12) {
      throw DomainError("transition matrix row " + std::to_string(i) + " does not sum to 1");
    }
  }
}

// Sum over [-w, w]^2 at spacing `step` of |f_rho - phi x phi|, times step^2 / 2.
double gaussian_tv_on_grid(double rho, double half_width, double step) {
  const auto n = static_cast<std::size_t>(std::llround(2.0 * half_width / step)) + 1;
  std::vector<double> x(n), phi(n);
  constexpr double inv_sqrt_2pi = 0.3989422804014327;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = -half_width + static_cast<double>(i) * step;
    phi[i] = inv_sqrt_2pi * std::exp(-0.5 * x[i] * x[i]);
  }
  const double one_minus = 1.0 - rho * rho;
  const double norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(one_minus));
  const double inv = 1.0 / (2.0 * one_minus);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double q = x[i] * x[i] - 2.0 * rho * x[i] * x[j] + x[j] * x[j];
      row += std::abs(norm * std::exp(-q * inv) - phi[i] * phi[j]);
    }
    total += row;
  }
  return 0.5 * total * step * step;
}

}  // namespace

FiniteChainSpec::FiniteChainSpec(Eigen::MatrixXd p) : transition(std::move(p)) {
  validate_transition(transition);
  stationary = stationary_distribution(transition);
}

FiniteChainSpec::FiniteChainSpec(Eigen::MatrixXd p, Eigen::VectorXd pi)
    : transition(std::move(p)), stationary(std::move(pi)) {
  validate_transition(transition);
  if (stationary.size() != transition.rows()) {
    throw DomainError("stationary distribution has the wrong length");
  }
  if ((stationary.array() < 0.0).any() || std::abs(stationary.sum() - 1.0) > 1e-10) {
    throw DomainError("stationary distribution must be a probability vector");
  }
  const Eigen::VectorXd moved = transition.transpose() * stationary;
  if ((moved - stationary).cwiseAbs().maxCoeff() > 1e-10) {
    throw DomainError("supplied distribution is not stationary for the transition matrix");
  }
}

ARSpec::ARSpec(double phi_, double sigma_) : phi(phi_), sigma(sigma_) {
  if (!(std::abs(phi) < 1.0)) throw DomainError("AR(1) needs |phi| < 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("AR(1) needs sigma > 0");
}

double beta_exact_finite(const FiniteChainSpec& chain, std::size_t m) {
  if (m < 1) throw DomainError("lag m must be >= 1");
  const Eigen::Index s = chain.transition.rows();
  Eigen::MatrixXd pm = chain.transition;
  for (std::size_t i = 1; i < m; ++i) pm = pm * chain.transition;
  const Eigen::VectorXd& pi = chain.stationary;
  double total = 0.0;
  for (Eigen::Index u = 0; u < s; ++u) {
    for (Eigen::Index v = 0; v < s; ++v) total += std::abs(pi(u) * pm(u, v) - pi(u) * pi(v));
  }
  return 0.5 * total;
}

double beta_gaussian_correlation(double rho, const QuadraturePolicy& policy) {
  if (!(std::abs(rho) < 1.0)) throw DomainError("correlation must satisfy |rho| < 1");
  if (rho == 0.0) return 0.0;
  const double coarse = gaussian_tv_on_grid(rho, policy.half_width, policy.step);
  const double fine = gaussian_tv_on_grid(rho, policy.half_width, policy.step / 2.0);
  if (std::abs(fine - coarse) >= policy.tolerance) {
    throw NumericalError("Gaussian TV quadrature did not stabilize at rho = " +
                         std::to_string(rho));
  }
  return fine;
}

double beta_gaussian_ar1(const ARSpec& spec, std::size_t m, const QuadraturePolicy& policy) {
  if (m < 1) throw DomainError("lag m must be >= 1");
  return beta_gaussian_correlation(std::pow(spec.phi, static_cast<double>(m)), policy);
}

AcfEstimate acf_estimate(const RealPath& path, std::size_t m) {
  const std::size_t n = path.size();
  if (m >= n) throw DomainError("ACF lag must be smaller than the path length");
  double ss = 0.0;
  for (double v : path.values) ss += v * v;
  const double sigma2 = ss / static_cast<double>(n);
  if (!(sigma2 > 0.0)) throw DomainError("ACF undefined for a zero-variance path");
  double cross = 0.0;
  for (std::size_t t = 0; t + m < n; ++t) cross += path[t] * path[t + m];
  const double rho = cross / (static_cast<double>(n - m) * sigma2);
  if (!(std::abs(rho) <= 1.5)) {
    throw DomainError("ACF estimate " + std::to_string(rho) + " outside the sanity range");
  }
  return AcfEstimate{m, rho, sigma2};
}

double beta_from_acf(double rho_hat, const QuadraturePolicy& policy) {
  if (!(std::abs(rho_hat) < 1.0)) throw DomainError("ACF-based beta needs |rho_hat| < 1");
  return beta_gaussian_correlation(rho_hat, policy);
}

JanssonBounds jansson_bounds(double rho) {
  if (!(std::abs(rho) < 1.0)) throw DomainError("Jansson bounds need |rho| < 1");
  const double r2 = rho * rho;
  const double r4 = r2 * r2;
  const double d = (1.0 - rho) * (1.0 - rho);
  JanssonBounds b{};
  b.lower = std::abs(rho) / std::numbers::pi - (r2 + 0.25 * r4) / d;
  b.upper = std::abs(rho) / std::sqrt(2.0 * std::numbers::pi) + (r2 + r4 / 16.0) / d;
  b.lower_clamped = std::max(b.lower, 0.0);
  return b;
}

double k_star_ar1_raw(double b, double n) {
  if (!(b > 0.0 && b < 1.0)) throw DomainError("AR(1) skip rule needs 0 < b < 1");
  const double l = std::log(1.0 / b);
  return (std::log(l) + 1.5 * std::log(n)) / l;
}

std::size_t k_star_ar1(double b, std::size_t n) {
  const double raw = k_star_ar1_raw(b, static_cast<double>(n));
  if (!(raw >= 1.0)) {
    throw DomainError("AR(1) skip rule gives k* = " + std::to_string(raw) + " < 1");
  }
  return static_cast<std::size_t>(std::floor(raw));
}

double envelope_from_b(double b, std::size_t m) {
  if (!(b > 0.0 && b < 1.0)) throw DomainError("envelope needs 0 < b < 1");
  return std::pow(b, static_cast<double>(m)) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace betamix
