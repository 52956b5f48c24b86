#pragma once

#include <cstddef>

#include "betamix/types.hpp"

namespace betamix {

/// Constants of the continuous-state error bounds.
///
/// L1 stands in for the density-moment constant; it cannot be computed from data
/// and defaults to 2. c_lambda is c * Lambda with c = c_[s](K) / [s]!.
struct BoundParams {
  double L1 = 2.0;
  double c_lambda = 1.0;
  double c0 = 1.0;
  double kernel_l1 = 1.0;
  double C_tilde = 0.0;
  double C = 0.0;

  /// Builds C~ and C from kernel constants. c_moment is c_[s](K).
  static BoundParams from_kernel_constants(const SmoothnessSpec& smooth, double c0,
                                           double c_moment, double kernel_l1,
                                           double L1 = 2.0);

  /// Only C is meaningful; used when C is known directly.
  static BoundParams from_constant(double C);
};

inline constexpr double kDefaultL1 = 2.0;

/// L1 = sqrt( sqrt(2) * int f (1+|z|^2) * int K^2 (1+|z|^2) ).
double l1_from_moments(double density_weighted_moment, double kernel_weighted_sq_integral);

double theorem1_expected_bound(const MixingEnvelope& env, const SmoothnessSpec& smooth,
                               const BoundParams& bounds, double n);

struct HighProbabilityBound {
  double C1;
  double C2;
  double deviation;    // bound on |beta - beta_hat|
  double probability;  // the bound holds with at least this probability
};

/// High-probability form of the continuous-state bound. Requires [s] >= 2.
HighProbabilityBound theorem1_high_probability_bound(const MixingEnvelope& env,
                                                     const SmoothnessSpec& smooth,
                                                     const BoundParams& bounds, double n);

double theorem2_expected_bound(const MixingEnvelope& env, std::size_t alphabet_size, double n);

/// Upper bound on P(|beta_hat - beta| >= eps) for the finite-state estimator.
double theorem2_tail_bound(const MixingEnvelope& env, std::size_t alphabet_size, double n,
                           double eps);

double theorem3_expected_bound(const MixingEnvelope& env, std::size_t alphabet_size, double n);

double theorem3_tail_bound(const MixingEnvelope& env, std::size_t alphabet_size, double n,
                           double eps);

}  // namespace betamix
