#include "betamix/bounds.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "betamix/blocks.hpp"
#include "betamix/errors.hpp"

namespace betamix {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

void require_n(double n) {
  if (!(n >= 2.0) || !std::isfinite(n)) throw DomainError("sample size n must be >= 2");
}

void require_k_at_least_one(double k_raw, const char* what) {
  if (!(k_raw >= 1.0)) {
    throw DomainError(std::string(what) + " = " + std::to_string(k_raw) +
                      " < 1: sample too short for these mixing parameters");
  }
}

// Second term of C1 and C2: Lambda (c Lambda)^{-[s]^2/([s]+1)} (([s]-1)/2)^{-[s]^2/(2[s]+2)}
double bias_term(const SmoothnessSpec& smooth, double c_lambda) {
  const double s = smooth.int_part;
  if (smooth.int_part < 2) {
    throw DomainError("high-probability bound degenerate for [s]=1");
  }
  return smooth.besov_bound * std::pow(c_lambda, -s * s / (s + 1.0)) *
         std::pow((s - 1.0) / 2.0, -s * s / (2.0 * s + 2.0));
}

}  // namespace

BoundParams BoundParams::from_kernel_constants(const SmoothnessSpec& smooth, double c0,
                                               double c_moment, double kernel_l1, double L1) {
  if (!(L1 > 0.0)) throw DomainError("L1 must be > 0");
  if (!(c0 > 0.0) || !(c_moment > 0.0) || !(kernel_l1 > 0.0)) {
    throw DomainError("kernel constants must be > 0");
  }
  const double s = smooth.int_part;
  BoundParams p;
  p.L1 = L1;
  p.c0 = c0;
  p.kernel_l1 = kernel_l1;
  p.c_lambda = c_moment / factorial(smooth.int_part) * smooth.besov_bound;
  p.C_tilde = 2.0 * std::pow(L1, s / (s + 1.0)) * std::pow(p.c_lambda, 1.0 / (s + 1.0));
  p.C = (2.0 + c0) * p.C_tilde / 2.0;
  return p;
}

BoundParams BoundParams::from_constant(double C) {
  if (!(C > 0.0)) throw DomainError("bound constant C must be > 0");
  BoundParams p;
  p.C = C;
  p.C_tilde = 2.0 * C / (2.0 + p.c0);
  return p;
}

double l1_from_moments(double density_weighted_moment, double kernel_weighted_sq_integral) {
  if (!(density_weighted_moment > 0.0) || !(kernel_weighted_sq_integral > 0.0)) {
    throw DomainError("moment integrals must be > 0");
  }
  return std::sqrt(std::numbers::sqrt2 * density_weighted_moment * kernel_weighted_sq_integral);
}

double theorem1_expected_bound(const MixingEnvelope& env, const SmoothnessSpec& smooth,
                               const BoundParams& bounds, double n) {
  require_n(n);
  const double s = smooth.int_part;
  require_k_at_least_one(k_star_continuous_raw(env, smooth.int_part, bounds.C, n), "k*");
  const double rate = s / (2.0 * s + 2.0);
  const double log_mult = (3.0 * s + 2.0) / (2.0 * s + 2.0);
  return 8.0 * bounds.C * std::pow(n, -rate) / env.gamma *
         (std::exp(env.gamma) + std::log(env.gamma * env.eta / (8.0 * bounds.C)) +
          log_mult * std::log(n));
}

HighProbabilityBound theorem1_high_probability_bound(const MixingEnvelope& env,
                                                     const SmoothnessSpec& smooth,
                                                     const BoundParams& bounds, double n) {
  require_n(n);
  require_k_at_least_one(k_star_continuous_raw(env, smooth.int_part, bounds.C, n), "k*");
  const double s = smooth.int_part;
  const double g = env.gamma;
  const double log_term = std::log(g * env.eta / (8.0 * bounds.C));
  const double bracket = 3.0 * std::pow(bounds.L1, s / (s + 1.0)) *
                             std::pow(bounds.c_lambda, 1.0 / (s + 1.0)) +
                         bias_term(smooth, bounds.c_lambda);
  HighProbabilityBound out{};
  out.C1 = log_term / g * bracket;
  out.C2 = 4.0 * bounds.kernel_l1 / g * log_term + 3.0 / (2.0 * g) * bracket;
  const double rate = std::pow(n, -s / (2.0 * s + 2.0));
  const double ln = std::log(n);
  out.deviation = 64.0 * (1.0 + bounds.c0 / 2.0) *
                  (out.C1 + out.C2 * ln + 6.0 * bounds.kernel_l1 / g * ln * ln) * rate;
  out.probability = 1.0 - 8.0 * bounds.C * rate;
  return out;
}

double theorem2_expected_bound(const MixingEnvelope& env, std::size_t alphabet_size, double n) {
  require_n(n);
  const double x = static_cast<double>(alphabet_size);
  if (n < finite_min_sample_size(env, alphabet_size)) {
    throw DomainError("n below the finite-state admissibility bound");
  }
  require_k_at_least_one(k_star_finite_raw(env, alphabet_size, n), "k*");
  return std::sqrt(8.0) * x / std::sqrt(n) / env.gamma *
         (std::numbers::e + std::log(env.eta * env.gamma / (std::numbers::sqrt2 * x)) +
          1.5 * std::log(n));
}

double theorem2_tail_bound(const MixingEnvelope& env, std::size_t alphabet_size, double n,
                           double eps) {
  require_n(n);
  if (!(eps > 0.0)) throw DomainError("eps must be > 0");
  const double x = static_cast<double>(alphabet_size);
  const double k_raw = k_star_finite_raw(env, alphabet_size, n);
  require_k_at_least_one(k_raw, "k*");
  const double first = std::numbers::e * std::numbers::sqrt2 * x / std::sqrt(n) /
                       (2.0 * env.gamma * k_raw);
  const double second =
      4.0 * x * x * std::exp(-env.gamma * n * eps * eps / (48.0 * x * x * x * x * std::log(n)));
  return first + second;
}

double theorem3_expected_bound(const MixingEnvelope& env, std::size_t alphabet_size, double n) {
  require_n(n);
  const double x = static_cast<double>(alphabet_size);
  if (n < sup_min_sample_size(env, alphabet_size)) {
    throw DomainError("n below the sup-estimator admissibility bound");
  }
  const double k_raw = k_dagger_raw(env, alphabet_size, n);
  require_k_at_least_one(k_raw, "k_dagger");
  const double lg = std::log2(n * x);
  return 4.0 * std::numbers::sqrt2 * x * x / std::sqrt(n) * lg / env.gamma *
         (std::numbers::e + env.gamma * k_raw);
}

double theorem3_tail_bound(const MixingEnvelope& env, std::size_t alphabet_size, double n,
                           double eps) {
  require_n(n);
  if (!(eps > 0.0)) throw DomainError("eps must be > 0");
  const double x = static_cast<double>(alphabet_size);
  const double eg = env.eta * env.gamma;
  const double denom_arg = eg * std::pow(n, 1.5) / (8.0 * std::numbers::sqrt2 * x * x);
  if (!(denom_arg > 1.0)) throw DomainError("theorem3 tail bound: log argument <= 1");
  const double first =
      4.0 * std::numbers::sqrt2 * x * x * std::log(n * x) / std::sqrt(n) / std::log(denom_arg);
  const double inner = 3.0 * x / (2.0 * env.gamma) * std::log(std::pow(eg, 2.0 / 3.0) * n);
  if (!(inner > 1.0)) throw DomainError("theorem3 tail bound: log argument <= 1");
  const double second = 16.0 * x * x * std::log(inner) *
                        std::exp(-env.gamma * n * eps * eps / (3072.0 * x * x * x * x * std::log(n)));
  return first + second;
}

}  // namespace betamix
