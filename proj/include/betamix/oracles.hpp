#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "betamix/types.hpp"

namespace betamix {

/// Row-stochastic transition matrix with its stationary law.
struct FiniteChainSpec {
  Eigen::MatrixXd transition;
  Eigen::VectorXd stationary;

  /// Computes the stationary law by power iteration.
  explicit FiniteChainSpec(Eigen::MatrixXd transition);
  FiniteChainSpec(Eigen::MatrixXd transition, Eigen::VectorXd stationary);

  std::size_t states() const { return static_cast<std::size_t>(transition.rows()); }
};

/// Gaussian AR(1): X_t = phi X_{t-1} + eps_t with eps_t ~ N(0, sigma^2).
struct ARSpec {
  double phi;
  double sigma;

  ARSpec(double phi, double sigma);
  double stationary_variance() const { return sigma * sigma / (1.0 - phi * phi); }
};

struct AcfEstimate {
  std::size_t m;
  double rho_hat;
  double sigma2_hat;
};

/// Exact beta(m) = (1/2) sum_{u,v} |pi_u (P^m)_{uv} - pi_u pi_v|.
double beta_exact_finite(const FiniteChainSpec& chain, std::size_t m);

struct QuadraturePolicy {
  double half_width = 8.0;  // integrate over [-half_width, half_width]^2 at unit variance
  double step = 0.01;
  double tolerance = 1e-4;  // allowed change when the step is halved
};

/// Half the L1 distance between a standard bivariate normal with correlation rho and
/// the product of its marginals. Throws NumericalError when step halving moves the
/// result by more than the tolerance.
double beta_gaussian_correlation(double rho, const QuadraturePolicy& policy = {});

/// beta(m) of a stationary Gaussian AR(1); the lag-m correlation is phi^m.
double beta_gaussian_ar1(const ARSpec& spec, std::size_t m, const QuadraturePolicy& policy = {});

/// rho_hat_m = sum_{t<n-m} X_t X_{t+m} / ((n-m) sigma2_hat), sigma2_hat = sum X_t^2 / n.
AcfEstimate acf_estimate(const RealPath& path, std::size_t m);

/// Plug-in Gaussian beta at correlation rho_hat.
double beta_from_acf(double rho_hat, const QuadraturePolicy& policy = {});

struct JanssonBounds {
  double lower;          // may be negative
  double upper;
  double lower_clamped;  // max(lower, 0)
};

JanssonBounds jansson_bounds(double rho);

double k_star_ar1_raw(double b, double n);

/// Skip length floor((log log(1/b) + 1.5 log n) / log(1/b)) for AR(1) with |phi| <= b.
std::size_t k_star_ar1(double b, std::size_t n);

/// b^m / sqrt(2 pi).
double envelope_from_b(double b, std::size_t m);

}  // namespace betamix
