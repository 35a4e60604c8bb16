#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace ncpath {

using cplx = std::complex<double>;

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
QuadratureRule gauss_legendre(std::size_t n);

/// `panels` equal subintervals of [a, b], each with an `order`-point rule.
QuadratureRule composite_gauss_legendre(double a, double b, std::size_t panels, std::size_t order);

/// Integration settings for square domains [c - R, c + R]^2.
struct QuadratureSpec {
  double radius = 0.0;          // R; 0 means "derive from the integrand's tail bound"
  std::size_t panels = 16;      // per axis, coarsest level
  std::size_t order = 16;       // Gauss-Legendre points per panel
  std::size_t max_refinements = 3;  // panel doublings after the coarsest level
  double tolerance = 1e-10;     // relative to max(|value|, scale)
  double sigma = 0.0;           // smearing width for delta-valued targets; 0 = default
};

struct QuadratureResult {
  cplx value;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  std::size_t panels = 0;
  bool converged = false;
};

using Integrand2D = std::function<cplx(double, double)>;

/// Tensor-product rule over [x0, x1] x [y0, y1].
cplx tensor_integrate(const Integrand2D& f, const QuadratureRule& xs, const QuadratureRule& ys);

/// Tensor Gauss-Legendre over [cx - R, cx + R] x [cy - R, cy + R], refined by
/// doubling the panel count until two successive levels agree to
/// spec.tolerance * max(|value|, scale).
QuadratureResult integrate_square(const Integrand2D& f, double cx, double cy, const QuadratureSpec& spec,
                                  double scale = 0.0);

}  // namespace ncpath
