#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "betamix/blocks.hpp"
#include "betamix/errors.hpp"
#include "betamix/finite.hpp"

using namespace betamix;

namespace {

// Literal evaluation of the count estimator: indicator sums per cell, no shared tables.
double naive_beta_hat(const std::vector<std::uint32_t>& x, std::size_t alphabet, std::size_t m,
                      std::size_t k) {
  const std::size_t N = (x.size() - k) / (2 * (k + 1));
  double total = 0.0;
  for (std::size_t u = 0; u < alphabet; ++u) {
    for (std::size_t v = 0; v < alphabet; ++v) {
      std::uint64_t joint = 0;
      for (std::size_t i = 0; i < N; ++i) {
        const std::size_t a = 2 * i * (k + 1);
        if (x[a] == u && x[a + m] == v) ++joint;
      }
      std::uint64_t cu = 0;
      std::uint64_t cv = 0;
      for (std::size_t i = 0; i < 2 * N; ++i) {
        if (x[k * i] == u) ++cu;
        if (x[k * i] == v) ++cv;
      }
      const double pu = static_cast<double>(cu) / static_cast<double>(2 * N);
      const double pv = static_cast<double>(cv) / static_cast<double>(2 * N);
      total += std::abs(static_cast<double>(joint) / static_cast<double>(N) - pu * pv);
    }
  }
  return 0.5 * total;
}

}  // namespace

TEST(CountPairs, AlternatingExample) {
  const SymbolPath path({0, 1, 0, 1, 0, 1, 0, 1}, 2);
  const auto emp = count_pairs(path, 1, 1);
  EXPECT_EQ(emp.N, 1u);
  EXPECT_EQ(emp.M, 2u);
  EXPECT_EQ(emp.pair_count(0, 1), 1u);
  EXPECT_EQ(emp.pair_count(0, 0) + emp.pair_count(1, 0) + emp.pair_count(1, 1), 0u);
  EXPECT_EQ(emp.marginal_counts, (std::vector<std::uint64_t>{1, 1}));
  EXPECT_DOUBLE_EQ(beta_hat_finite(emp), 0.75);
}

TEST(CountPairs, ConstantPath) {
  const SymbolPath path(std::vector<std::uint32_t>(20, 0), 2);
  const auto emp = count_pairs(path, 1, 2);
  EXPECT_EQ(emp.pair_count(0, 0), emp.N);
  EXPECT_DOUBLE_EQ(beta_hat_finite(emp), 0.0);
}

TEST(CountPairs, TooShortPath) {
  EXPECT_THROW(count_pairs(SymbolPath({0, 1, 0, 1}, 2), 1, 1), DomainError);
}

TEST(CountPairs, TablesAreConsistent) {
  std::mt19937_64 rng(9);
  std::vector<std::uint32_t> s(5000);
  for (auto& v : s) v = static_cast<std::uint32_t>(rng() % 4);
  const auto emp = count_pairs(SymbolPath(s, 4), 2, 5);
  EXPECT_EQ(std::accumulate(emp.pair_counts.begin(), emp.pair_counts.end(), std::uint64_t{0}),
            emp.N);
  EXPECT_EQ(std::accumulate(emp.marginal_counts.begin(), emp.marginal_counts.end(),
                            std::uint64_t{0}),
            emp.M);
}

TEST(BetaHatFinite, ProductMeasureGivesZero) {
  EmpiricalPairMeasure emp;
  emp.alphabet_size = 2;
  emp.marginal_counts = {2, 2};
  emp.M = 4;
  emp.pair_counts = {1, 1, 1, 1};
  emp.N = 4;
  EXPECT_DOUBLE_EQ(beta_hat_finite(emp), 0.0);
}

TEST(BetaHatFinite, SingleCellWithDegenerateMarginals) {
  EmpiricalPairMeasure emp;
  emp.alphabet_size = 3;
  emp.pair_counts = {0, 0, 0, 0, 0, 0, 0, 5, 0};  // all mass on (2, 1)
  emp.N = 5;
  emp.marginal_counts = {0, 0, 10};
  emp.M = 10;
  // Marginals degenerate at u = 2 only, so the product sits on (2, 2).
  EXPECT_DOUBLE_EQ(beta_hat_finite(emp), 1.0);
  emp.pair_counts = {0, 0, 0, 0, 0, 0, 0, 0, 5};
  EXPECT_DOUBLE_EQ(beta_hat_finite(emp), 0.0);
}

TEST(BetaHatFinite, RequiresCounts) {
  EmpiricalPairMeasure emp;
  emp.alphabet_size = 2;
  emp.pair_counts = {0, 0, 0, 0};
  emp.marginal_counts = {0, 0};
  EXPECT_THROW(beta_hat_finite(emp), DomainError);
}

TEST(BetaHatFinite, BruteForceEquivalence) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 8 + rng() % 33;  // 8..40
    const std::size_t alphabet = 1 + rng() % 3;
    const std::size_t k = 1 + rng() % (n / 8);
    const std::size_t m = 1 + rng() % k;
    std::vector<std::uint32_t> x(n);
    for (auto& v : x) v = static_cast<std::uint32_t>(rng() % alphabet);
    if (n < 2 * (k + 1) + m) continue;
    const double fast = beta_hat_finite(count_pairs(SymbolPath(x, alphabet), m, k));
    ASSERT_EQ(fast, naive_beta_hat(x, alphabet, m, k)) << "trial " << trial;
  }
}

TEST(BetaHatFinite, RelabelingInvariantAndBounded) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t alphabet = 2 + rng() % 4;
    std::vector<std::uint32_t> x(400);
    for (auto& v : x) v = static_cast<std::uint32_t>(rng() % alphabet);
    std::vector<std::uint32_t> perm(alphabet);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::uint32_t> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = perm[x[i]];
    const double bx = beta_hat_finite(count_pairs(SymbolPath(x, alphabet), 1, 3));
    const double by = beta_hat_finite(count_pairs(SymbolPath(y, alphabet), 1, 3));
    EXPECT_NEAR(bx, by, 1e-15);
    EXPECT_GE(bx, 0.0);
    EXPECT_LE(bx, 1.0);
  }
}

TEST(EstimateFinite, FixedAndAutoSkip) {
  std::vector<std::uint32_t> x(10000);
  std::mt19937_64 rng(1);
  for (auto& v : x) v = static_cast<std::uint32_t>(rng() % 2);
  const SymbolPath path(x, 2);
  const auto fixed = estimate_beta_finite(path, 2, std::size_t{5});
  EXPECT_EQ(fixed.k, 5u);
  EXPECT_EQ(fixed.n_pairs, (10000u - 5) / 12);
  EXPECT_EQ(fixed.kind, EstimatorKind::finite);
  const auto aut = estimate_beta_finite(path, 1, MixingEnvelope(1.0, 0.5));
  EXPECT_EQ(aut.k, 24u);
  EXPECT_THROW(estimate_beta_finite(path, 6, std::size_t{5}), DomainError);
  EXPECT_THROW(estimate_beta_finite(path, 1, MixingEnvelope(1e-9, 0.5)), DomainError);
}

TEST(EstimateSup, ConstantPathGivesZeros) {
  const SymbolPath path(std::vector<std::uint32_t>(500, 1), 3);
  const auto all = estimate_beta_sup(path, std::size_t{6});
  ASSERT_EQ(all.size(), 6u);
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(all[i].m, i + 1);
    EXPECT_DOUBLE_EQ(all[i].beta_hat, 0.0);
  }
}

TEST(EstimateSup, MatchesSingleLagEstimator) {
  std::mt19937_64 rng(31);
  std::vector<std::uint32_t> x(20000);
  std::uint32_t state = 0;
  for (auto& v : x) {
    if (rng() % 10 < 3) state = static_cast<std::uint32_t>(rng() % 3);
    v = state;
  }
  const SymbolPath path(x, 3);
  const auto all = estimate_beta_sup(path, std::size_t{8});
  for (std::size_t m = 1; m <= 8; ++m) {
    const auto one = estimate_beta_finite(path, m, std::size_t{8});
    EXPECT_EQ(all[m - 1].beta_hat, one.beta_hat) << "m = " << m;
    EXPECT_EQ(all[m - 1].n_pairs, one.n_pairs);
  }
  const auto auto_k = estimate_beta_sup(path, MixingEnvelope(1.0, 0.5));
  EXPECT_EQ(auto_k.size(), k_dagger(MixingEnvelope(1.0, 0.5), 3, 20000));
}
