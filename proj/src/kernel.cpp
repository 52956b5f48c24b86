#include "betamix/kernel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "betamix/errors.hpp"

namespace betamix {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

template <class F>
double integrate_line(F f) {
  using boost::math::quadrature::gauss_kronrod;
  const double inf = std::numeric_limits<double>::infinity();
  return gauss_kronrod<double, 61>::integrate(f, -inf, 0.0, 20, 1e-13) +
         gauss_kronrod<double, 61>::integrate(f, 0.0, inf, 20, 1e-13);
}

// Integral of |u|^i |k(u)|.
double abs_moment(const std::function<double(double)>& k, int i) {
  return integrate_line([&](double u) { return std::pow(std::abs(u), i) * std::abs(k(u)); });
}

}  // namespace

double KernelSpec::moment_constant(int ell) const {
  if (ell < 0) throw DomainError("moment order must be >= 0");
  std::vector<double> a(static_cast<std::size_t>(ell) + 1);
  for (int i = 0; i <= ell; ++i) a[static_cast<std::size_t>(i)] = abs_moment(profile, i);
  double c = 0.0;
  for (int i = 0; i <= ell; ++i) {
    c += a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(ell - i)];
  }
  return c;
}

KernelSpec make_product_kernel(std::string name, int order, std::function<double(double)> profile) {
  if (order < 2 || order % 2 != 0) throw DomainError("kernel order must be even and >= 2");
  KernelSpec k;
  k.name = std::move(name);
  k.order = order;
  k.profile = std::move(profile);
  const double a0 = abs_moment(k.profile, 0);
  k.c0 = a0 * a0;
  k.l1_norm = k.c0;
  k.c_ell = k.moment_constant(order);
  const auto& p = k.profile;
  const double sq0 = integrate_line([&](double u) { return p(u) * p(u); });
  const double sq2 = integrate_line([&](double u) { return u * u * p(u) * p(u); });
  k.weighted_sq_integral = sq0 * sq0 + 2.0 * sq2 * sq0;
  return k;
}

KernelSpec gaussian_kernel() {
  return make_product_kernel("gaussian", 2,
                             [](double u) { return kInvSqrt2Pi * std::exp(-0.5 * u * u); });
}

KernelSpec product_order4_kernel() {
  return make_product_kernel("gaussian-order4", 4, [](double u) {
    return 0.5 * (3.0 - u * u) * kInvSqrt2Pi * std::exp(-0.5 * u * u);
  });
}

KernelCheck check_kernel_moments(const KernelSpec& kernel, double half_width, double step) {
  const auto n = static_cast<std::size_t>(std::llround(2.0 * half_width / step)) + 1;
  std::vector<double> nodes(n);
  std::vector<double> prof(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i] = -half_width + static_cast<double>(i) * step;
    prof[i] = kernel.profile(nodes[i]);
  }
  KernelCheck out{0.0, 0.0};
  for (int deg = 0; deg < kernel.order; ++deg) {
    for (int i = 0; i <= deg; ++i) {
      const int j = deg - i;
      // The tensor-grid sum factorizes for a product kernel.
      double sx = 0.0;
      double sy = 0.0;
      for (std::size_t a = 0; a < n; ++a) {
        sx += std::pow(nodes[a], i) * prof[a];
        sy += std::pow(nodes[a], j) * prof[a];
      }
      const double moment = sx * sy * step * step;
      if (deg == 0) {
        out.mass = moment;
      } else {
        out.max_low_moment = std::max(out.max_low_moment, std::abs(moment));
      }
    }
  }
  return out;
}

void validate_kernel(const KernelSpec& kernel, double tol) {
  const KernelCheck c = check_kernel_moments(kernel);
  if (std::abs(c.mass - 1.0) > tol) {
    throw DomainError("kernel " + kernel.name + " does not integrate to 1");
  }
  if (c.max_low_moment > tol) {
    throw DomainError("kernel " + kernel.name + " has a nonvanishing moment below its order");
  }
  if (kernel.c0 < 1.0 - tol) throw DomainError("kernel " + kernel.name + ": c0 < 1");
}

}  // namespace betamix
