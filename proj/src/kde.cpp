#include "betamix/kde.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "betamix/blocks.hpp"
#include "betamix/bounds.hpp"
#include "betamix/errors.hpp"
#include "betamix/oracles.hpp"

namespace betamix {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Sparse accumulator over a node grid. Only the 64x64 tiles touched by some
// kernel footprint are allocated; everything else is exactly zero.
class TiledField {
public:
  static constexpr std::size_t kTile = 64;

  TiledField(std::size_t nx, std::size_t ny)
      : nx_(nx), ny_(ny), tx_((nx + kTile - 1) / kTile), ty_((ny + kTile - 1) / kTile),
        tiles_(tx_ * ty_) {}

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t tiles_x() const { return tx_; }
  std::size_t tiles_y() const { return ty_; }

  const double* tile(std::size_t tx, std::size_t ty) const { return tiles_[tx * ty_ + ty].get(); }

  double* tile_for_write(std::size_t tx, std::size_t ty) {
    auto& t = tiles_[tx * ty_ + ty];
    if (!t) {
      t = std::make_unique<double[]>(kTile * kTile);
      std::fill_n(t.get(), kTile * kTile, 0.0);
    }
    return t.get();
  }

  // Adds wx[i - ix0] * wy[j - iy0] to every node (i, j) of the rectangle.
  void add_outer(std::size_t ix0, const std::vector<double>& wx, std::size_t iy0,
                 const std::vector<double>& wy) {
    const std::size_t ix1 = ix0 + wx.size();
    const std::size_t iy1 = iy0 + wy.size();
    for (std::size_t tx = ix0 / kTile; tx * kTile < ix1; ++tx) {
      const std::size_t xa = std::max(ix0, tx * kTile);
      const std::size_t xb = std::min(ix1, (tx + 1) * kTile);
      for (std::size_t ty = iy0 / kTile; ty * kTile < iy1; ++ty) {
        const std::size_t ya = std::max(iy0, ty * kTile);
        const std::size_t yb = std::min(iy1, (ty + 1) * kTile);
        double* t = tile_for_write(tx, ty);
        for (std::size_t i = xa; i < xb; ++i) {
          const double w = wx[i - ix0];
          double* row = t + (i - tx * kTile) * kTile + (ya - ty * kTile);
          const double* wyp = wy.data() + (ya - iy0);
          for (std::size_t j = 0; j < yb - ya; ++j) row[j] += w * wyp[j];
        }
      }
    }
  }

  // Calls f(i, j, value) for every node inside an allocated tile, in tile order.
  template <class F>
  void for_each_allocated(F&& f) const {
    for (std::size_t tx = 0; tx < tx_; ++tx) {
      for (std::size_t ty = 0; ty < ty_; ++ty) {
        const double* t = tile(tx, ty);
        if (!t) continue;
        const std::size_t xb = std::min(nx_, (tx + 1) * kTile);
        const std::size_t yb = std::min(ny_, (ty + 1) * kTile);
        for (std::size_t i = tx * kTile; i < xb; ++i) {
          const double* row = t + (i - tx * kTile) * kTile;
          for (std::size_t j = ty * kTile; j < yb; ++j) f(i, j, row[j - ty * kTile]);
        }
      }
    }
  }

private:
  std::size_t nx_, ny_, tx_, ty_;
  std::vector<std::unique_ptr<double[]>> tiles_;
};

// Nodes within the cutoff of `centre` on one axis, and their kernel weights.
std::size_t axis_weights(const KernelSpec& kernel, double centre, double h, double lo, double step,
                         std::size_t count, double scale, std::vector<double>& w) {
  const double reach = kKernelCutoff * h;
  const double a = std::ceil((centre - reach - lo) / step);
  const double b = std::floor((centre + reach - lo) / step);
  w.clear();
  if (b < 0.0 || a > static_cast<double>(count) - 1.0) return 0;
  const auto i0 = static_cast<std::size_t>(std::max(a, 0.0));
  const auto i1 = static_cast<std::size_t>(std::min(b, static_cast<double>(count) - 1.0));
  for (std::size_t i = i0; i <= i1; ++i) {
    const double node = lo + static_cast<double>(i) * step;
    w.push_back(scale * kernel.profile((node - centre) / h));
  }
  return i0;
}

TiledField accumulate(std::span<const Point2> sorted, const KernelSpec& kernel, double h,
                      const GridBounds& bounds) {
  TiledField field(bounds.nx(), bounds.ny());
  const double scale = 1.0 / (static_cast<double>(sorted.size()) * h * h);
  std::vector<double> wx, wy;
  for (const Point2& p : sorted) {
    const std::size_t ix0 =
        axis_weights(kernel, p.x, h, bounds.xmin, bounds.step, field.nx(), scale, wx);
    const std::size_t iy0 =
        axis_weights(kernel, p.y, h, bounds.ymin, bounds.step, field.ny(), 1.0, wy);
    if (wx.empty() || wy.empty()) continue;
    field.add_outer(ix0, wx, iy0, wy);
  }
  return field;
}

std::vector<Point2> sorted_copy(std::span<const Point2> pairs) {
  std::vector<Point2> v(pairs.begin(), pairs.end());
  std::sort(v.begin(), v.end());
  return v;
}

void require_pairs(std::span<const Point2> pairs) {
  if (pairs.empty()) throw DomainError("KDE needs at least one pair");
  for (const Point2& p : pairs) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw DomainError("KDE input is not finite");
  }
}

}  // namespace

double scott_bandwidth(std::size_t n, int dim) {
  if (n < 2) throw DomainError("Scott's rule needs n >= 2");
  return std::pow(static_cast<double>(n), -1.0 / (4.0 + dim));
}

double condition1_bandwidth(double c_lambda, int s_int, std::size_t n) {
  if (n < 2) throw DomainError("bandwidth rule needs n >= 2");
  if (s_int < 2) throw DomainError("bandwidth rule degenerate for [s]=1");
  if (!(c_lambda > 0.0)) throw DomainError("c * Lambda must be > 0");
  const double s = s_int;
  return std::pow(c_lambda, -s / (s + 1.0)) * std::pow((s - 1.0) / 2.0, -s / (2.0 * s + 2.0)) *
         std::pow(static_cast<double>(n), -1.0 / (2.0 * s + 2.0));
}

double bandwidth(const BandwidthRule& rule, const KernelSpec& kernel, std::size_t n) {
  switch (rule.kind) {
    case BandwidthRule::Kind::scott:
      return scott_bandwidth(n, 2);
    case BandwidthRule::Kind::fixed:
      if (!(rule.value > 0.0)) throw DomainError("fixed bandwidth must be > 0");
      return rule.value;
    case BandwidthRule::Kind::condition1: {
      if (!rule.smooth) throw DomainError("condition1 bandwidth needs a smoothness spec");
      const SmoothnessSpec& sm = *rule.smooth;
      if (sm.int_part < 2) throw DomainError("bandwidth rule degenerate for [s]=1");
      const double c = kernel.moment_constant(sm.int_part) / factorial(sm.int_part);
      return condition1_bandwidth(c * sm.besov_bound, sm.int_part, n);
    }
  }
  throw DomainError("unknown bandwidth rule");
}

GridBounds default_grid(std::span<const Point2> pairs, double h, const GridPolicy& policy) {
  require_pairs(pairs);
  if (!(h > 0.0)) throw DomainError("bandwidth must be > 0");
  double lo = pairs[0].x;
  double hi = pairs[0].x;
  for (const Point2& p : pairs) {
    lo = std::min({lo, p.x, p.y});
    hi = std::max({hi, p.x, p.y});
  }
  lo -= policy.padding * h;
  hi += policy.padding * h;
  double step = h / policy.nodes_per_bandwidth;
  auto nodes = static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 1;
  if (nodes > policy.max_nodes_per_axis) {
    nodes = policy.max_nodes_per_axis;
    step = (hi - lo) / static_cast<double>(nodes - 1);
  }
  hi = lo + static_cast<double>(nodes - 1) * step;
  return GridBounds{lo, hi, lo, hi, step};
}

DensityGrid kde_on_grid(std::span<const Point2> pairs, const KernelSpec& kernel, double h,
                        const GridBounds& bounds) {
  require_pairs(pairs);
  if (!(h > 0.0)) throw DomainError("bandwidth must be > 0");
  bounds.validate();
  const auto sorted = sorted_copy(pairs);
  const TiledField field = accumulate(sorted, kernel, h, bounds);
  DensityGrid out = DensityGrid::zeros(bounds);
  field.for_each_allocated([&](std::size_t i, std::size_t j, double v) { out.at(i, j) = v; });
  return out;
}

KdeBetaResult beta_from_pairs(std::span<const Point2> pairs, const KernelSpec& kernel,
                              const BandwidthRule& rule, const GridPolicy& policy) {
  require_pairs(pairs);
  const auto sorted = sorted_copy(pairs);
  const double h = bandwidth(rule, kernel, sorted.size());
  const GridBounds bounds = default_grid(sorted, h, policy);
  const TiledField field = accumulate(sorted, kernel, h, bounds);
  const double step = bounds.step;

  // x-marginal; rows outside every allocated tile are zero.
  std::vector<double> f0(field.nx(), 0.0);
  field.for_each_allocated([&](std::size_t i, std::size_t, double v) { f0[i] += v; });
  double f0_total = 0.0;
  for (double& v : f0) {
    v *= step;
    f0_total += v;
  }

  // On allocated tiles take |f - f0 x f0| directly. Elsewhere f = 0 and the integrand
  // is the product itself, whose sum is the grand total minus the allocated part.
  double abs_sum = 0.0;
  double prod_inside = 0.0;
  field.for_each_allocated([&](std::size_t i, std::size_t j, double v) {
    const double g = f0[i] * f0[j];
    abs_sum += std::abs(v - g);
    prod_inside += g;
  });
  const double prod_outside = std::max(0.0, f0_total * f0_total - prod_inside);
  const double raw = 0.5 * step * step * (abs_sum + prod_outside);

  return KdeBetaResult{std::clamp(raw, 0.0, 1.0), raw, h, bounds, f0_total * step};
}

std::vector<Point2> gather_pairs(const RealPath& path, std::span<const IndexPair> idx) {
  std::vector<Point2> out;
  out.reserve(idx.size());
  for (const auto& [a, b] : idx) {
    if (a >= path.size() || b >= path.size()) throw DomainError("pair index beyond path end");
    out.push_back(Point2{path[a], path[b]});
  }
  return out;
}

BetaEstimate estimate_beta_kde(const RealPath& path, std::size_t m, const KdeOptions& options) {
  const std::size_t n = path.size();
  if (m < 1) throw DomainError("lag m must be >= 1");
  BetaEstimate est;
  est.m = m;
  est.kind = EstimatorKind::kde;

  std::vector<IndexPair> idx;
  if (std::holds_alternative<OverlappingPairs>(options.skip)) {
    est.k = 0;
    idx = overlapping_pair_indices(m, n);
  } else {
    std::size_t k = 0;
    if (const auto* f = std::get_if<FixedSkip>(&options.skip)) {
      k = f->k;
    } else if (const auto* a = std::get_if<AutoContinuousSkip>(&options.skip)) {
      const BoundParams bp = BoundParams::from_kernel_constants(
          a->smooth, options.kernel.c0, options.kernel.moment_constant(a->smooth.int_part),
          options.kernel.l1_norm, a->L1);
      k = k_star_continuous(a->env, a->smooth.int_part, bp.C, n);
    } else if (const auto* ar = std::get_if<AutoAr1Skip>(&options.skip)) {
      k = k_star_ar1(ar->b, n);
    }
    const BlockPlan plan = make_block_plan(k, m, n, &est.diagnostics.warnings);
    est.k = k;
    idx = pair_indices(plan);
  }
  if (idx.size() < 2) {
    throw DomainError("path too short: KDE needs at least 2 pairs, got " +
                      std::to_string(idx.size()));
  }
  const auto pairs = gather_pairs(path, idx);
  const KdeBetaResult r = beta_from_pairs(pairs, options.kernel, options.bandwidth, options.grid);

  est.n_pairs = pairs.size();
  est.beta_hat = r.beta_hat;
  est.diagnostics.raw_beta_hat = r.raw;
  est.diagnostics.bandwidth = r.bandwidth;
  est.diagnostics.grid_step = r.grid.step;
  est.diagnostics.grid_nodes_per_axis = r.grid.nx();
  est.diagnostics.kde_mass = r.mass;
  if (std::abs(r.mass - 1.0) > kMassTolerance) {
    est.diagnostics.warnings.push_back("KDE grid mass " + std::to_string(r.mass) +
                                       " outside the unit-mass tolerance");
  }
  return est;
}

}  // namespace betamix
