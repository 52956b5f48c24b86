#include "betamix/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "betamix/errors.hpp"

namespace betamix {

namespace {

std::size_t checked_floor(double raw, std::size_t n, const char* what) {
  if (!std::isfinite(raw) || raw < 1.0) {
    throw DomainError(std::string(what) + " = " + std::to_string(raw) +
                      " < 1: sample too short for these mixing parameters");
  }
  const auto k = static_cast<std::size_t>(std::floor(raw));
  if (k > n / 8) {
    throw DomainError(std::string(what) + " = " + std::to_string(k) + " exceeds floor(n/8) = " +
                      std::to_string(n / 8) + ": sample too short for these mixing parameters");
  }
  return k;
}

}  // namespace

std::size_t block_count(std::size_t k, std::size_t n) {
  if (k < 1) throw DomainError("block_count: k must be >= 1");
  if (k > n / 8) {
    throw DomainError("block_count: k = " + std::to_string(k) + " exceeds floor(n/8) = " +
                      std::to_string(n / 8));
  }
  return (n - k) / (2 * (k + 1));
}

BlockPlan make_block_plan(std::size_t k, std::size_t m, std::size_t n,
                          std::vector<std::string>* warnings) {
  if (m < 1) throw DomainError("lag m must be >= 1");
  if (m > k) {
    throw DomainError("lag m = " + std::to_string(m) + " exceeds skip length k = " +
                      std::to_string(k));
  }
  const std::size_t N = block_count(k, n);
  if (N < 1) throw DomainError("path too short: no complete block for k = " + std::to_string(k));
  if (k == m && warnings != nullptr) {
    warnings->push_back("k == m: coupling argument assumes k > m");
  }
  return BlockPlan{k, m, n, N};
}

std::vector<IndexPair> pair_indices(const BlockPlan& plan) {
  std::vector<IndexPair> out;
  out.reserve(plan.N);
  for (std::size_t i = 0; i < plan.N; ++i) {
    const std::size_t start = 2 * i * (plan.k + 1);
    out.emplace_back(start, start + plan.m);
  }
  return out;
}

std::vector<IndexPair> overlapping_pair_indices(std::size_t m, std::size_t n) {
  if (m < 1) throw DomainError("lag m must be >= 1");
  if (m >= n) throw DomainError("lag m must be smaller than the path length");
  std::vector<IndexPair> out;
  out.reserve(n - m);
  for (std::size_t i = 0; i + m < n; ++i) out.emplace_back(i, i + m);
  return out;
}

double k_star_continuous_raw(const MixingEnvelope& env, int s_int, double C, double n) {
  if (!(C > 0.0)) throw DomainError("bound constant C must be > 0");
  if (s_int < 1) throw DomainError("[s] must be >= 1");
  const double rate = (3.0 * s_int + 2.0) / (2.0 * s_int + 2.0);
  return (std::log(env.gamma * env.eta / (8.0 * C)) + rate * std::log(n)) / env.gamma;
}

double k_star_finite_raw(const MixingEnvelope& env, std::size_t alphabet_size, double n) {
  const double x = static_cast<double>(alphabet_size);
  return std::log(env.eta * env.gamma * std::pow(n, 1.5) / (std::numbers::sqrt2 * x)) / env.gamma;
}

double k_dagger_raw(const MixingEnvelope& env, std::size_t alphabet_size, double n) {
  const double x = static_cast<double>(alphabet_size);
  const double arg = env.eta * env.gamma * std::pow(n, 1.5) /
                     (4.0 * std::numbers::sqrt2 * x * x * std::log2(n * x));
  if (!(arg > 1.0)) {
    throw DomainError("k_dagger: log argument " + std::to_string(arg) + " <= 1");
  }
  return std::log(arg) / env.gamma;
}

std::size_t k_star_continuous(const MixingEnvelope& env, int s_int, double C, std::size_t n) {
  return checked_floor(k_star_continuous_raw(env, s_int, C, static_cast<double>(n)), n, "k*");
}

double finite_min_sample_size(const MixingEnvelope& env, std::size_t alphabet_size) {
  const double x = static_cast<double>(alphabet_size);
  const double eg = env.eta * env.gamma;
  const double a = std::pow(std::numbers::sqrt2 * x * std::exp(2.0 * env.gamma) / eg, 2.0 / 3.0);
  const double b = std::pow(eg / x, 2.0 / 3.0);
  return std::max(a, b);
}

double sup_min_sample_size(const MixingEnvelope& env, std::size_t alphabet_size) {
  const double x = static_cast<double>(alphabet_size);
  return 4.0 * std::numbers::sqrt2 * x * x * x * std::exp(env.gamma) / (env.eta * env.gamma);
}

std::size_t k_star_finite(const MixingEnvelope& env, std::size_t alphabet_size, std::size_t n) {
  if (alphabet_size < 1) throw DomainError("alphabet size must be >= 1");
  const double n_min = finite_min_sample_size(env, alphabet_size);
  if (static_cast<double>(n) < n_min) {
    throw DomainError("k*: n = " + std::to_string(n) + " below admissibility bound " +
                      std::to_string(n_min));
  }
  return checked_floor(k_star_finite_raw(env, alphabet_size, static_cast<double>(n)), n, "k*");
}

std::size_t k_dagger(const MixingEnvelope& env, std::size_t alphabet_size, std::size_t n) {
  if (alphabet_size < 1) throw DomainError("alphabet size must be >= 1");
  const double nd = static_cast<double>(n);
  const double n_min = sup_min_sample_size(env, alphabet_size);
  if (nd < n_min) {
    throw DomainError("k_dagger: n = " + std::to_string(n) +
                      " below admissibility bound 4*sqrt(2)|X|^3 e^gamma/(eta gamma) = " +
                      std::to_string(n_min));
  }
  const std::size_t k = checked_floor(k_dagger_raw(env, alphabet_size, nd), n, "k_dagger");
  const double kd = static_cast<double>(k);
  if (nd < 2.0 * kd * (kd + 1.0) / (3.0 * kd + 2.0)) {
    throw DomainError("k_dagger: n below 2k(k+1)/(3k+2)");
  }
  return k;
}

}  // namespace betamix
