#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "betamix/types.hpp"

namespace betamix {

using IndexPair = std::pair<std::size_t, std::size_t>;

// Skip-sampling layout: pairs Z_i = (X_{2i(k+1)}, X_{2i(k+1)+m}) for i < N.
struct BlockPlan {
  std::size_t k;
  std::size_t m;
  std::size_t n;
  std::size_t N;
};

/// N(k, n) = floor((n - k) / (2(k + 1))), requires 1 <= k <= floor(n/8).
std::size_t block_count(std::size_t k, std::size_t n);

/// Validates 1 <= m <= k <= floor(n/8) and N >= 1. Appends a warning when k == m.
BlockPlan make_block_plan(std::size_t k, std::size_t m, std::size_t n,
                          std::vector<std::string>* warnings = nullptr);

std::vector<IndexPair> pair_indices(const BlockPlan& plan);

/// k = 0 layout: every (i, i + m) for i = 0..n-m-1. Pairs overlap.
std::vector<IndexPair> overlapping_pair_indices(std::size_t m, std::size_t n);

// Unfloored closed forms of the skip-length rules. n is real so the formulas can
// be evaluated off the integers; the integer versions below add range checks.
double k_star_continuous_raw(const MixingEnvelope& env, int smooth_int_part, double C, double n);
double k_star_finite_raw(const MixingEnvelope& env, std::size_t alphabet_size, double n);
double k_dagger_raw(const MixingEnvelope& env, std::size_t alphabet_size, double n);

/// k* for the KDE estimator. Throws DomainError when k* < 1 or k* > floor(n/8).
std::size_t k_star_continuous(const MixingEnvelope& env, int smooth_int_part, double C,
                              std::size_t n);

/// k* of the finite-state estimator, with the admissibility bound on n checked first.
std::size_t k_star_finite(const MixingEnvelope& env, std::size_t alphabet_size, std::size_t n);

/// k-dagger for the simultaneous (sup over m) estimator.
std::size_t k_dagger(const MixingEnvelope& env, std::size_t alphabet_size, std::size_t n);

// Lower bounds on n required by the finite-state theorems.
double finite_min_sample_size(const MixingEnvelope& env, std::size_t alphabet_size);
double sup_min_sample_size(const MixingEnvelope& env, std::size_t alphabet_size);

}  // namespace betamix
