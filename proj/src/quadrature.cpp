#include "ncpath/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "ncpath/errors.hpp"
#include "ncpath/simd/dispatch.hpp"

namespace ncpath {

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) throw InvalidArgument("gauss_legendre: need at least one node");
  if (n == 1) return {{0.0}, {2.0}};
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const auto nd = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const auto kd = static_cast<double>(k);
        const double pk = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = pk;
      }
      dp = nd * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

QuadratureRule composite_gauss_legendre(double a, double b, std::size_t panels, std::size_t order) {
  if (panels == 0) throw InvalidArgument("composite_gauss_legendre: need at least one panel");
  const QuadratureRule base = gauss_legendre(order);
  QuadratureRule r;
  r.nodes.reserve(panels * order);
  r.weights.reserve(panels * order);
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + (static_cast<double>(p) + 0.5) * h;
    for (std::size_t i = 0; i < order; ++i) {
      r.nodes.push_back(mid + 0.5 * h * base.nodes[i]);
      r.weights.push_back(0.5 * h * base.weights[i]);
    }
  }
  return r;
}

cplx tensor_integrate(const Integrand2D& f, const QuadratureRule& xs, const QuadratureRule& ys) {
  std::vector<cplx> row(ys.nodes.size());
  cplx total = 0.0;
  for (std::size_t i = 0; i < xs.nodes.size(); ++i) {
    for (std::size_t j = 0; j < ys.nodes.size(); ++j) row[j] = f(xs.nodes[i], ys.nodes[j]);
    total += xs.weights[i] * simd::wsum(row.size(), ys.weights.data(), row.data());
  }
  return total;
}

QuadratureResult integrate_square(const Integrand2D& f, double cx, double cy, const QuadratureSpec& spec,
                                  double scale) {
  if (!(spec.radius > 0.0)) throw InvalidArgument("integrate_square: radius must be positive");
  auto level = [&](std::size_t panels) {
    const auto xs = composite_gauss_legendre(cx - spec.radius, cx + spec.radius, panels, spec.order);
    const auto ys = composite_gauss_legendre(cy - spec.radius, cy + spec.radius, panels, spec.order);
    return tensor_integrate(f, xs, ys);
  };
  QuadratureResult res;
  std::size_t panels = spec.panels;
  cplx prev = level(panels);
  res.evaluations = panels * panels * spec.order * spec.order;
  for (std::size_t k = 0; k < spec.max_refinements; ++k) {
    panels *= 2;
    const cplx next = level(panels);
    res.evaluations += panels * panels * spec.order * spec.order;
    res.value = next;
    res.panels = panels;
    res.error_estimate = std::abs(next - prev);
    if (res.error_estimate <= spec.tolerance * std::max(std::abs(next), scale)) {
      res.converged = true;
      break;
    }
    prev = next;
  }
  return res;
}

}  // namespace ncpath
