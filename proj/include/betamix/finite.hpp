#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "betamix/types.hpp"

namespace betamix {

/// Pair and marginal frequency tables of a finite-alphabet path.
struct EmpiricalPairMeasure {
  std::size_t alphabet_size = 0;
  std::vector<std::uint64_t> pair_counts;      // row-major, alphabet_size^2
  std::vector<std::uint64_t> marginal_counts;  // alphabet_size
  std::size_t N = 0;                           // number of pairs
  std::size_t M = 0;                           // number of marginal draws

  std::uint64_t pair_count(std::size_t u, std::size_t v) const {
    return pair_counts[u * alphabet_size + v];
  }
};

/// Pairs (X_{2i(k+1)}, X_{2i(k+1)+m}) for i < N and marginal draws X_{ki} for i < 2N.
EmpiricalPairMeasure count_pairs(const SymbolPath& path, std::size_t m, std::size_t k);

/// (1/2) sum_{u,v} |P_m(u,v) - P_0(u) P_0(v)| over the empirical tables.
double beta_hat_finite(const EmpiricalPairMeasure& emp);

/// A fixed skip length, or an envelope from which k* / k-dagger is derived.
using FiniteSkip = std::variant<std::size_t, MixingEnvelope>;

BetaEstimate estimate_beta_finite(const SymbolPath& path, std::size_t m, const FiniteSkip& skip);

/// Estimates beta(m) for m = 1..k from one set of length-(k+1) blocks, where k is
/// k-dagger when `skip` holds an envelope.
std::vector<BetaEstimate> estimate_beta_sup(const SymbolPath& path, const FiniteSkip& skip);

}  // namespace betamix
