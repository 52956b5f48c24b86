#include "betamix/density_grid.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "betamix/errors.hpp"

namespace betamix {

namespace {

std::size_t node_count(double lo, double hi, double step) {
  return static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
}

std::vector<double> parse_csv_line(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      out.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw DomainError("grid csv: cannot parse value '" + cell + "'");
    }
  }
  return out;
}

}  // namespace

std::size_t GridBounds::nx() const { return node_count(xmin, xmax, step); }
std::size_t GridBounds::ny() const { return node_count(ymin, ymax, step); }

void GridBounds::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("grid step must be > 0");
  if (!(xmax > xmin) || !(ymax > ymin)) throw DomainError("grid bounds must be ordered");
}

DensityGrid DensityGrid::zeros(const GridBounds& bounds) {
  bounds.validate();
  DensityGrid g;
  g.bounds = bounds;
  g.nx = bounds.nx();
  g.ny = bounds.ny();
  g.values.assign(g.nx * g.ny, 0.0);
  return g;
}

double DensityGrid::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * bounds.step * bounds.step;
}

double Density1D::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * step;
}

void check_unit_mass(const DensityGrid& grid, double tol) {
  const double m = grid.mass();
  if (std::abs(m - 1.0) > tol) {
    throw DomainError("grid mass " + std::to_string(m) + " outside 1 +/- " + std::to_string(tol));
  }
}

Density1D marginalize_x(const DensityGrid& grid) {
  Density1D out;
  out.xmin = grid.bounds.xmin;
  out.step = grid.bounds.step;
  out.values.assign(grid.nx, 0.0);
  for (std::size_t i = 0; i < grid.nx; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < grid.ny; ++j) s += grid.at(i, j);
    out.values[i] = s * grid.bounds.step;
  }
  return out;
}

DensityGrid tensor_square(const Density1D& g, const GridBounds& bounds) {
  DensityGrid out = DensityGrid::zeros(bounds);
  if (out.nx != g.values.size() || out.ny != g.values.size() || bounds.step != g.step ||
      bounds.xmin != g.xmin || bounds.ymin != g.xmin) {
    throw DomainError("tensor_square: layout does not match the 1D table");
  }
  for (std::size_t i = 0; i < out.nx; ++i) {
    for (std::size_t j = 0; j < out.ny; ++j) out.at(i, j) = g.values[i] * g.values[j];
  }
  return out;
}

double tv_half_distance(const DensityGrid& a, const DensityGrid& b) {
  if (!(a.bounds == b.bounds) || a.nx != b.nx || a.ny != b.ny) {
    throw DomainError("tv_half_distance: grids have different bounds or spacing");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += std::abs(a.values[i] - b.values[i]);
  return 0.5 * s * a.bounds.step * a.bounds.step;
}

void write_grid_csv(std::ostream& out, const DensityGrid& grid) {
  const auto& b = grid.bounds;
  out << "xmin,xmax,ymin,ymax,step\n";
  out << std::setprecision(17) << b.xmin << ',' << b.xmax << ',' << b.ymin << ',' << b.ymax << ','
      << b.step << '\n';
  for (std::size_t i = 0; i < grid.nx; ++i) {
    for (std::size_t j = 0; j < grid.ny; ++j) {
      if (j) out << ',';
      out << grid.at(i, j);
    }
    out << '\n';
  }
}

DensityGrid read_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("xmin,xmax,ymin,ymax,step", 0) != 0) {
    throw DomainError("grid csv: missing header");
  }
  if (!std::getline(in, line)) throw DomainError("grid csv: missing bounds line");
  const auto hdr = parse_csv_line(line);
  if (hdr.size() != 5) throw DomainError("grid csv: bounds line needs 5 values");
  DensityGrid g = DensityGrid::zeros(GridBounds{hdr[0], hdr[1], hdr[2], hdr[3], hdr[4]});
  for (std::size_t i = 0; i < g.nx; ++i) {
    if (!std::getline(in, line)) throw DomainError("grid csv: too few rows");
    const auto row = parse_csv_line(line);
    if (row.size() != g.ny) throw DomainError("grid csv: row " + std::to_string(i) + " has wrong width");
    for (std::size_t j = 0; j < g.ny; ++j) g.at(i, j) = row[j];
  }
  return g;
}

}  // namespace betamix
