#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace betamix {

// Uniform rectangular node layout with equal spacing on both axes.
struct GridBounds {
  double xmin;
  double xmax;
  double ymin;
  double ymax;
  double step;

  std::size_t nx() const;
  std::size_t ny() const;
  void validate() const;
  bool operator==(const GridBounds&) const = default;
};

/// Function tabulated on a GridBounds layout. Row-major with rows indexed by x:
/// values[i * ny + j] is the value at (xmin + i*step, ymin + j*step).
struct DensityGrid {
  GridBounds bounds{};
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<double> values;

  static DensityGrid zeros(const GridBounds& bounds);

  double x(std::size_t i) const { return bounds.xmin + static_cast<double>(i) * bounds.step; }
  double y(std::size_t j) const { return bounds.ymin + static_cast<double>(j) * bounds.step; }
  double& at(std::size_t i, std::size_t j) { return values[i * ny + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * ny + j]; }

  /// step^2 * sum of values.
  double mass() const;
};

/// 1D table on nodes xmin + i*step.
struct Density1D {
  double xmin = 0.0;
  double step = 1.0;
  std::vector<double> values;

  double mass() const;
};

/// Tolerance on the unit-mass check of a probability-density grid.
inline constexpr double kMassTolerance = 0.02;

/// Throws DomainError when a probability-density grid's mass is off by more than `tol`.
void check_unit_mass(const DensityGrid& grid, double tol = kMassTolerance);

/// out[i] = step * sum_j values[i, j].
Density1D marginalize_x(const DensityGrid& grid);

/// g(x_i) g(y_j) on `bounds`, which must use the nodes of `g` on both axes.
DensityGrid tensor_square(const Density1D& g, const GridBounds& bounds);

/// (1/2) step^2 sum |a - b|. Both grids must share bounds and step.
double tv_half_distance(const DensityGrid& a, const DensityGrid& b);

// Text format: a header line `xmin,xmax,ymin,ymax,step`, a line with those values,
// then one line per x index holding the ny values of that row.
void write_grid_csv(std::ostream& out, const DensityGrid& grid);
DensityGrid read_grid_csv(std::istream& in);

}  // namespace betamix
