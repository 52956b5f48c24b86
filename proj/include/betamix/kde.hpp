#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "betamix/blocks.hpp"
#include "betamix/density_grid.hpp"
#include "betamix/kernel.hpp"
#include "betamix/types.hpp"

namespace betamix {

struct Point2 {
  double x;
  double y;
  auto operator<=>(const Point2&) const = default;
};

struct BandwidthRule {
  enum class Kind { condition1, scott, fixed };
  Kind kind = Kind::scott;
  double value = 0.0;                     // fixed only
  std::optional<SmoothnessSpec> smooth;   // condition1 only

  static BandwidthRule scott() { return {}; }
  static BandwidthRule fixed(double h) { return {Kind::fixed, h, std::nullopt}; }
  static BandwidthRule condition1(const SmoothnessSpec& s) { return {Kind::condition1, 0.0, s}; }
};

/// Scott's rule h = n^{-1/(4+d)}.
double scott_bandwidth(std::size_t n, int dim = 2);

/// (c Lambda)^{-[s]/([s]+1)} (([s]-1)/2)^{-[s]/(2[s]+2)} n^{-1/(2[s]+2)}; undefined for [s] = 1.
double condition1_bandwidth(double c_lambda, int s_int, std::size_t n);

/// Resolves a rule for a sample of n points. Condition 1 uses c = c_[s](K)/[s]!.
double bandwidth(const BandwidthRule& rule, const KernelSpec& kernel, std::size_t n);

struct GridPolicy {
  double padding = 4.0;                       // bounds extend this many h past the data
  double nodes_per_bandwidth = 4.0;           // step = h / nodes_per_bandwidth
  std::size_t max_nodes_per_axis = 1u << 15;  // step grows when this would be exceeded
};

/// Square grid covering both coordinates of the pairs, padded by `policy.padding * h`.
GridBounds default_grid(std::span<const Point2> pairs, double h, const GridPolicy& policy = {});

/// Kernel density estimate (1/(N h^2)) sum_i K((z - Z_i)/h) at the grid nodes.
/// Per-axis kernel offsets beyond 8h are skipped.
DensityGrid kde_on_grid(std::span<const Point2> pairs, const KernelSpec& kernel, double h,
                        const GridBounds& bounds);

inline constexpr double kKernelCutoff = 8.0;

// Skip length policies for the KDE estimator.
struct FixedSkip {
  std::size_t k;
};
struct OverlappingPairs {};  // k = 0: every (i, i+m)
struct AutoContinuousSkip {
  MixingEnvelope env;
  SmoothnessSpec smooth;
  double L1 = 2.0;
};
struct AutoAr1Skip {
  double b;  // assumed bound on |phi|
};
using SkipPolicy = std::variant<FixedSkip, OverlappingPairs, AutoContinuousSkip, AutoAr1Skip>;

struct KdeOptions {
  KernelSpec kernel = gaussian_kernel();
  BandwidthRule bandwidth = BandwidthRule::scott();
  SkipPolicy skip = FixedSkip{1};
  GridPolicy grid{};
};

struct KdeBetaResult {
  double beta_hat;  // clamped to [0, 1]
  double raw;
  double bandwidth;
  GridBounds grid;
  double mass;
};

/// Half the L1 distance between the pair KDE and the square of its x-marginal.
/// Invariant under permutations of `pairs` (they are sorted first).
KdeBetaResult beta_from_pairs(std::span<const Point2> pairs, const KernelSpec& kernel,
                              const BandwidthRule& rule, const GridPolicy& policy = {});

/// Continuous-state estimate of beta(m) from a single path.
BetaEstimate estimate_beta_kde(const RealPath& path, std::size_t m, const KdeOptions& options = {});

/// Pairs (X_a, X_b) for the given index pairs.
std::vector<Point2> gather_pairs(const RealPath& path, std::span<const IndexPair> idx);

}  // namespace betamix
