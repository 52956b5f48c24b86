#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "betamix/density_grid.hpp"
#include "betamix/errors.hpp"
#include "betamix/generators.hpp"
#include "betamix/kde.hpp"
#include "betamix/kernel.hpp"
#include "betamix/oracles.hpp"

using namespace betamix;

namespace {

const double kInv2Pi = 1.0 / (2.0 * std::numbers::pi);

// Untruncated (1/(N h^2)) sum_i K((z - Z_i)/h) at every node, one node at a time.
DensityGrid direct_sum_kde(const std::vector<Point2>& pairs, const KernelSpec& kernel, double h,
                           const GridBounds& bounds) {
  DensityGrid g = DensityGrid::zeros(bounds);
  const double norm = 1.0 / (static_cast<double>(pairs.size()) * h * h);
  for (std::size_t i = 0; i < g.nx; ++i) {
    for (std::size_t j = 0; j < g.ny; ++j) {
      double s = 0.0;
      for (const auto& p : pairs) s += kernel.eval((g.x(i) - p.x) / h, (g.y(j) - p.y) / h);
      g.at(i, j) = s * norm;
    }
  }
  return g;
}

std::string data_path(const std::string& name) {
  return std::string(BETAMIX_TEST_DATA_DIR) + "/" + name;
}

}  // namespace

TEST(Kernel, GaussianConstants) {
  const auto k = gaussian_kernel();
  EXPECT_EQ(k.order, 2);
  EXPECT_NEAR(k.eval(0.0, 0.0), kInv2Pi, 1e-15);
  EXPECT_NEAR(k.c0, 1.0, 1e-9);
  EXPECT_NEAR(k.l1_norm, 1.0, 1e-9);
  // Integral of phi(z1)^2 phi(z2)^2 (1 + z1^2 + z2^2) = (1/(4 pi)) (1 + 1/2 + 1/2).
  EXPECT_NEAR(k.weighted_sq_integral, 2.0 / (4.0 * std::numbers::pi), 1e-9);
  EXPECT_NO_THROW(validate_kernel(k));
}

TEST(Kernel, Order4MomentsVanish) {
  const auto k = product_order4_kernel();
  EXPECT_EQ(k.order, 4);
  const auto check = check_kernel_moments(k, 8.0, 0.01);
  EXPECT_NEAR(check.mass, 1.0, 1e-6);
  EXPECT_LT(check.max_low_moment, 1e-6);
  EXPECT_GE(k.c0, 1.0);
  EXPECT_LT(k.profile(2.0), 0.0);  // signed kernel
  EXPECT_NO_THROW(validate_kernel(k));
}

TEST(Kernel, Order4SecondMomentByDirectQuadrature) {
  const auto k = product_order4_kernel();
  double s = 0.0;
  const double step = 0.01;
  for (int i = -800; i <= 800; ++i) {
    for (int j = -800; j <= 800; ++j) {
      const double z1 = i * step;
      s += z1 * z1 * k.eval(z1, j * step);
    }
  }
  EXPECT_NEAR(s * step * step, 0.0, 1e-6);
}

TEST(Kernel, ValidateRejectsBadKernel) {
  auto bad = make_product_kernel("scaled", 2, [](double u) {
    return 1.1 * std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
  });
  EXPECT_THROW(validate_kernel(bad), DomainError);
}

TEST(Bandwidth, ScottExamples) {
  EXPECT_DOUBLE_EQ(scott_bandwidth(4096), 0.25);
  EXPECT_THROW(scott_bandwidth(1), DomainError);
  EXPECT_DOUBLE_EQ(bandwidth(BandwidthRule::scott(), gaussian_kernel(), 4096), 0.25);
}

TEST(Bandwidth, Condition1Examples) {
  EXPECT_NEAR(condition1_bandwidth(1.0, 2, 729), std::cbrt(2.0) / 3.0, 1e-12);
  EXPECT_NEAR(condition1_bandwidth(1.0, 2, 729), 0.4200, 1e-4);
  EXPECT_THROW(condition1_bandwidth(1.0, 1, 729), DomainError);
  EXPECT_THROW(bandwidth(BandwidthRule::condition1(SmoothnessSpec(2.0, 1.0)), gaussian_kernel(), 729),
               DomainError);
}

TEST(Bandwidth, Condition1UsesMomentConstant) {
  const auto k = gaussian_kernel();
  const SmoothnessSpec smooth(3.0, 2.0);
  const double expected = condition1_bandwidth(k.moment_constant(2) / 2.0 * 2.0, 2, 1000);
  EXPECT_DOUBLE_EQ(bandwidth(BandwidthRule::condition1(smooth), k, 1000), expected);
  EXPECT_GT(expected, 0.0);
}

TEST(Bandwidth, FixedMustBePositive) {
  EXPECT_DOUBLE_EQ(bandwidth(BandwidthRule::fixed(0.3), gaussian_kernel(), 10), 0.3);
  EXPECT_THROW(bandwidth(BandwidthRule::fixed(0.0), gaussian_kernel(), 10), DomainError);
}

TEST(KdeOnGrid, SinglePairAtOrigin) {
  const std::vector<Point2> pairs{{0.0, 0.0}};
  const GridBounds b{-3.0, 3.0, -3.0, 3.0, 0.5};
  const auto g = kde_on_grid(pairs, gaussian_kernel(), 1.0, b);
  EXPECT_NEAR(g.at(6, 6), kInv2Pi, 1e-15);
}

TEST(KdeOnGrid, EmptyPairsRejected) {
  const std::vector<Point2> none;
  EXPECT_THROW(kde_on_grid(none, gaussian_kernel(), 1.0, GridBounds{-1, 1, -1, 1, 0.5}),
               DomainError);
  EXPECT_THROW(kde_on_grid(std::vector<Point2>{{0, 0}}, gaussian_kernel(), 0.0,
                           GridBounds{-1, 1, -1, 1, 0.5}),
               DomainError);
}

TEST(KdeOnGrid, DefaultGridHasUnitMass) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (std::size_t n : {5u, 50u, 500u}) {
    std::vector<Point2> pairs;
    for (std::size_t i = 0; i < n; ++i) pairs.push_back({nd(rng), 3.0 * nd(rng)});
    const double h = scott_bandwidth(n);
    const auto g = kde_on_grid(pairs, gaussian_kernel(), h, default_grid(pairs, h));
    EXPECT_GE(g.mass(), 0.98);
    EXPECT_LE(g.mass(), 1.02);
    EXPECT_NO_THROW(check_unit_mass(g));
  }
}

TEST(KdeOnGrid, TruncationMatchesDirectSum) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ud(-4.0, 4.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 5;
    std::vector<Point2> pairs;
    for (std::size_t i = 0; i < n; ++i) pairs.push_back({ud(rng), ud(rng)});
    const double h = 0.3 + 0.1 * trial;
    // Wide coarse grid so many node offsets fall past the cutoff.
    const GridBounds b{-15.0, 15.0, -14.0, 16.0, 0.25};
    for (const auto& kernel : {gaussian_kernel(), product_order4_kernel()}) {
      const auto fast = kde_on_grid(pairs, kernel, h, b);
      const auto slow = direct_sum_kde(pairs, kernel, h, b);
      double max_err = 0.0;
      for (std::size_t i = 0; i < fast.values.size(); ++i) {
        max_err = std::max(max_err, std::abs(fast.values[i] - slow.values[i]));
      }
      EXPECT_LT(max_err, 1e-9) << kernel.name << " trial " << trial;
    }
  }
}

TEST(KdeOnGrid, GoldenThreePairs) {
  std::ifstream in(data_path("kde_three_pairs_grid.csv"));
  ASSERT_TRUE(in) << "missing golden grid";
  const DensityGrid golden = read_grid_csv(in);
  const GridBounds b{-6.0, 6.0, -6.0, 6.0, 0.05};
  ASSERT_EQ(golden.bounds, b);
  const std::vector<Point2> pairs{{0.0, 0.0}, {1.0, -1.0}, {-2.0, 0.5}};
  const auto g = kde_on_grid(pairs, gaussian_kernel(), 0.7, b);
  ASSERT_EQ(g.values.size(), golden.values.size());
  double max_err = 0.0;
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    max_err = std::max(max_err, std::abs(g.values[i] - golden.values[i]));
  }
  EXPECT_LT(max_err, 1e-12);
}

TEST(Marginal, GoldenThreePairs) {
  std::ifstream in(data_path("kde_three_pairs_marginal.csv"));
  ASSERT_TRUE(in) << "missing golden marginal";
  std::string line;
  std::getline(in, line);  // column names
  std::getline(in, line);
  double xmin = 0.0, step = 0.0;
  char comma = 0;
  std::istringstream(line) >> xmin >> comma >> step;
  std::vector<double> golden;
  for (double v; in >> v;) golden.push_back(v);

  const std::vector<Point2> pairs{{0.0, 0.0}, {1.0, -1.0}, {-2.0, 0.5}};
  const auto g = kde_on_grid(pairs, gaussian_kernel(), 0.7, GridBounds{-6.0, 6.0, -6.0, 6.0, 0.05});
  const auto marginal = marginalize_x(g);
  EXPECT_DOUBLE_EQ(marginal.xmin, xmin);
  EXPECT_DOUBLE_EQ(marginal.step, step);
  ASSERT_EQ(marginal.values.size(), golden.size());
  for (std::size_t i = 0; i < golden.size(); ++i) {
    EXPECT_NEAR(marginal.values[i], golden[i], 1e-12) << "node " << i;
  }
  EXPECT_NEAR(marginal.mass(), 1.0, 0.02);
}

TEST(Marginal, SeparableProductRecoversFactor) {
  const GridBounds b{-8.0, 8.0, -9.0, 9.0, 0.05};
  auto g = DensityGrid::zeros(b);
  auto phi = [](double x, double s) {
    return std::exp(-0.5 * x * x / (s * s)) / (s * std::sqrt(2.0 * std::numbers::pi));
  };
  for (std::size_t i = 0; i < g.nx; ++i) {
    for (std::size_t j = 0; j < g.ny; ++j) g.at(i, j) = phi(g.x(i), 1.0) * phi(g.y(j), 1.5);
  }
  const auto m = marginalize_x(g);
  ASSERT_EQ(m.values.size(), g.nx);
  for (std::size_t i = 0; i < g.nx; ++i) EXPECT_NEAR(m.values[i], phi(g.x(i), 1.0), 1e-3);
}

TEST(Marginal, SymmetricGridGivesSymmetricMarginal) {
  const std::vector<Point2> pairs{{1.0, 2.0}, {-1.0, 2.0}, {0.5, -1.0}, {-0.5, -1.0}};
  const auto g = kde_on_grid(pairs, gaussian_kernel(), 0.8, GridBounds{-5, 5, -5, 5, 0.1});
  const auto m = marginalize_x(g);
  const std::size_t n = m.values.size();
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(m.values[i], m.values[n - 1 - i], 1e-14);
}

TEST(TvHalfDistance, Identities) {
  const GridBounds b{0.0, 19.0, 0.0, 19.0, 1.0};
  auto a = DensityGrid::zeros(b);
  auto c = DensityGrid::zeros(b);
  a.at(2, 3) = 1.0;
  c.at(10, 11) = 1.0;
  EXPECT_DOUBLE_EQ(tv_half_distance(a, a), 0.0);
  EXPECT_DOUBLE_EQ(tv_half_distance(a, c), 1.0);

  auto box1 = DensityGrid::zeros(b);
  auto box2 = DensityGrid::zeros(b);
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      box1.at(i, j) = 1.0 / 40.0;
      box2.at(i + 5, j) = 1.0 / 40.0;
    }
  }
  EXPECT_DOUBLE_EQ(tv_half_distance(box1, box2), 0.5);
}

TEST(TvHalfDistance, MismatchedGridsRejected) {
  const auto a = DensityGrid::zeros(GridBounds{0, 1, 0, 1, 0.5});
  const auto b = DensityGrid::zeros(GridBounds{0, 1, 0, 1, 0.25});
  EXPECT_THROW(tv_half_distance(a, b), DomainError);
}

TEST(TvHalfDistance, UnitMassGridsStayInRange) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  const GridBounds b{-10, 10, -10, 10, 0.1};
  for (int t = 0; t < 10; ++t) {
    std::vector<Point2> p1, p2;
    for (int i = 0; i < 20; ++i) {
      p1.push_back({nd(rng), nd(rng)});
      p2.push_back({nd(rng) + t * 0.5, nd(rng)});
    }
    const double v = tv_half_distance(kde_on_grid(p1, gaussian_kernel(), 0.5, b),
                                      kde_on_grid(p2, gaussian_kernel(), 0.5, b));
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.02);
  }
}

TEST(GridCsv, RoundTrip) {
  const std::vector<Point2> pairs{{0.1, 0.2}, {-0.3, 0.4}};
  const auto g = kde_on_grid(pairs, gaussian_kernel(), 0.5, GridBounds{-2, 2, -1, 1.5, 0.25});
  std::stringstream ss;
  write_grid_csv(ss, g);
  const auto back = read_grid_csv(ss);
  EXPECT_EQ(back.bounds, g.bounds);
  EXPECT_EQ(back.values, g.values);
}

TEST(BetaFromPairs, PermutationInvariantBitForBit) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> nd;
  std::vector<Point2> pairs;
  for (int i = 0; i < 300; ++i) {
    const double x = nd(rng);
    pairs.push_back({x, 0.6 * x + 0.8 * nd(rng)});
  }
  const double ref = beta_from_pairs(pairs, gaussian_kernel(), BandwidthRule::scott()).raw;
  for (int t = 0; t < 5; ++t) {
    std::shuffle(pairs.begin(), pairs.end(), rng);
    EXPECT_EQ(beta_from_pairs(pairs, gaussian_kernel(), BandwidthRule::scott()).raw, ref);
  }
}

TEST(BetaFromPairs, IdenticalPairsStillDefined) {
  const std::vector<Point2> pairs(10, Point2{1.0, 1.0});
  const auto r = beta_from_pairs(pairs, gaussian_kernel(), BandwidthRule::scott());
  EXPECT_TRUE(std::isfinite(r.raw));
  EXPECT_GE(r.beta_hat, 0.0);
  EXPECT_LE(r.beta_hat, 1.0);
}

TEST(BetaFromPairs, SignedKernelKeepsRawValue) {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> nd;
  std::vector<Point2> pairs;
  for (int i = 0; i < 50; ++i) pairs.push_back({nd(rng), nd(rng)});
  const auto r = beta_from_pairs(pairs, product_order4_kernel(), BandwidthRule::fixed(0.3));
  EXPECT_DOUBLE_EQ(r.beta_hat, std::clamp(r.raw, 0.0, 1.0));
}

TEST(EstimateKde, ReportsPlanAndDiagnostics) {
  const auto path = gen_ar1(ARSpec(0.5, 1.0), 4000, 1);
  KdeOptions opt;
  opt.skip = FixedSkip{4};
  const auto est = estimate_beta_kde(path, 2, opt);
  EXPECT_EQ(est.m, 2u);
  EXPECT_EQ(est.k, 4u);
  EXPECT_EQ(est.n_pairs, block_count(4, 4000));
  EXPECT_EQ(est.kind, EstimatorKind::kde);
  EXPECT_GE(est.beta_hat, 0.0);
  EXPECT_LE(est.beta_hat, 1.0);
  EXPECT_DOUBLE_EQ(est.diagnostics.bandwidth, scott_bandwidth(est.n_pairs));
  EXPECT_NEAR(est.diagnostics.kde_mass, 1.0, 0.02);
}

TEST(EstimateKde, SkipPolicies) {
  const auto path = gen_ar1(ARSpec(0.5, 1.0), 1u << 13, 2);
  KdeOptions opt;
  opt.skip = AutoAr1Skip{0.9};
  EXPECT_EQ(estimate_beta_kde(path, 1, opt).k, k_star_ar1(0.9, 1u << 13));
  opt.skip = OverlappingPairs{};
  const auto k0 = estimate_beta_kde(path, 1, opt);
  EXPECT_EQ(k0.k, 0u);
  EXPECT_EQ(k0.n_pairs, (1u << 13) - 1);
  opt.skip = AutoContinuousSkip{MixingEnvelope(1.0, 0.5), SmoothnessSpec(3.0, 1.0), 2.0};
  const auto a = estimate_beta_kde(path, 1, opt);
  EXPECT_GE(a.k, 1u);
}

TEST(EstimateKde, Errors) {
  const auto path = gen_ar1(ARSpec(0.5, 1.0), 200, 3);
  KdeOptions opt;
  opt.skip = FixedSkip{2};
  EXPECT_THROW(estimate_beta_kde(path, 3, opt), DomainError);  // m > k
  opt.skip = FixedSkip{25};
  EXPECT_THROW(estimate_beta_kde(RealPath(std::vector<double>(30, 0.0)), 1, opt), DomainError);
  opt.skip = AutoContinuousSkip{MixingEnvelope(1.0, 0.01), SmoothnessSpec(3.0, 1.0), 2.0};
  EXPECT_THROW(estimate_beta_kde(path, 1, opt), DomainError);
}

TEST(EstimateKde, Condition1Bandwidth) {
  const auto path = gen_ar1(ARSpec(0.5, 1.0), 1u << 13, 4);
  KdeOptions opt;
  opt.skip = FixedSkip{10};
  opt.bandwidth = BandwidthRule::condition1(SmoothnessSpec(3.0, 1.0));
  const auto est = estimate_beta_kde(path, 1, opt);
  EXPECT_DOUBLE_EQ(est.diagnostics.bandwidth,
                   bandwidth(opt.bandwidth, opt.kernel, est.n_pairs));
  EXPECT_GE(est.beta_hat, 0.0);
  EXPECT_LE(est.beta_hat, 1.0);
}
