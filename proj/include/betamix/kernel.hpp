#pragma once

#include <functional>
#include <string>

namespace betamix {

/// Bivariate product kernel K(z) = k(z1) k(z2) with its integral constants.
///
/// `c0` is the integral of |K|, `c_ell` the absolute moment constant c_l(K) at
/// l = order, and `weighted_sq_integral` the integral of K^2(z)(1 + |z|^2).
/// Constants are computed by adaptive quadrature of the 1D profile when the
/// kernel is built.
struct KernelSpec {
  std::string name;
  int order = 2;
  std::function<double(double)> profile;
  double c0 = 1.0;
  double c_ell = 0.0;
  double l1_norm = 1.0;
  double weighted_sq_integral = 0.0;

  double eval(double z1, double z2) const { return profile(z1) * profile(z2); }

  /// c_l(K) = sum over i+j=l of the integral of |z1|^i |z2|^j |K(z)|.
  double moment_constant(int ell) const;
};

/// Standard bivariate Gaussian, order 2.
KernelSpec gaussian_kernel();

/// Product of the fourth-order 1D kernel (3 - u^2) phi(u) / 2, order 4.
KernelSpec product_order4_kernel();

/// Builds a product kernel from a 1D profile and fills in its constants.
KernelSpec make_product_kernel(std::string name, int order, std::function<double(double)> profile);

struct KernelCheck {
  double mass;
  double max_low_moment;  // largest |mixed moment| of total degree in [1, order)
};

/// Tensor-grid quadrature of the kernel's mass and low-order moments on
/// [-half_width, half_width]^2.
KernelCheck check_kernel_moments(const KernelSpec& kernel, double half_width = 8.0,
                                 double step = 0.01);

/// Throws DomainError unless mass is 1 and low moments vanish to `tol`.
void validate_kernel(const KernelSpec& kernel, double tol = 1e-6);

}  // namespace betamix
