// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria (0 when everything passes).

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "ncpath/errors.hpp"
#include "ncpath/hilbert.hpp"
#include "ncpath/oracles.hpp"
#include "ncpath/propagator.hpp"
#include "ncpath/star.hpp"
#include "support.hpp"

using namespace ncpath;
using testing::cplx;

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Outcome {
  bool pass = true;
  double worst = 0.0;
  double tol = 0.0;
  std::string note;

  void record(double err) {
    worst = std::max(worst, err);
    if (!(err <= tol)) pass = false;
  }
  void fail(const std::string& why) {
    pass = false;
    if (note.empty()) note = why;
  }
};

// m / (m theta + i T) exp(-m dx^2 / (2 (i T + m theta))), evaluated here
// without the library.
cplx kernel_formula(double m, double th, double t, double dx2) {
  const cplx d = m * th + I * t;
  return m / d * std::exp(-m * dx2 / (2.0 * d));
}

Outcome criterion1() {
  Outcome o{true, 0.0, 1e-10, ""};
  testing::Gen g(101);
  for (int k = 0; k < 50; ++k) {
    const double m = g.log_uniform(0.1, 10.0), th = g.log_uniform(0.01, 10.0), t = g.log_uniform(0.01, 10.0);
    const double dx = g.uniform(0.0, 3.0), ang = g.uniform(0.0, kTwoPi);
    const auto params = PhysicalParams::make(m, th);
    const PlanePoint from{g.uniform(-1, 1), g.uniform(-1, 1)};
    const PlanePoint to{from.x() + dx * std::cos(ang), from.y() + dx * std::sin(ang)};
    const cplx target = kernel_formula(m, th, t, dx * dx);
    o.record(testing::rel(closed_form_kernel(params, t, from, to), target));
    for (std::size_t n : {0u, 1u, 2u, 4u, 16u, 1000u})
      o.record(testing::rel(sliced_kernel(params, SliceSchedule::from_total(n, t), from, to), target));
  }
  return o;
}

Outcome criterion2() {
  Outcome o{true, 0.0, 1e-12, ""};
  testing::Gen g(102);
  for (int k = 0; k < 20; ++k) {
    const double m = g.log_uniform(0.1, 10.0), th = g.log_uniform(0.01, 10.0), tau = g.log_uniform(0.01, 10.0);
    const auto params = PhysicalParams::make(m, th);
    const cplx beta = m / (2.0 * (m * th + I * tau));
    const GaussianSlice s = short_time_slice(params, tau);
    const GaussianSlice one = compose(s, s, params);
    o.record(testing::rel(one.prefactor(), kTwoPi * m / (m * th + 2.0 * I * tau)));
    o.record(testing::rel(one.beta, beta / (2.0 * (1.0 - th * beta))));
    const GaussianSlice two = compose(s, one, params);
    o.record(testing::rel(two.prefactor(), kTwoPi * kTwoPi * m / (m * th + 3.0 * I * tau)));
  }
  return o;
}

Outcome criterion3() {
  Outcome o{true, 0.0, 1e-4, ""};
  const auto params = PhysicalParams::make(1.0, 1.0);
  const double floor = 1e-12;
  const cplx pts[] = {0.0, {1.5, 0.0}, {0.0, -1.5}, {-1.06, 1.06}, {0.7, 0.4}, {-0.3, -1.2}};
  for (double t : {0.1, 0.5, 1.0}) {
    // FreeEvolution is built once per (T, D) and reused for every endpoint pair
    std::vector<FreeEvolution> ev;
    for (std::size_t d : {16u, 24u, 32u}) ev.emplace_back(params, t, FockSpace(d, o.tol));
    for (cplx z0 : pts)
      for (cplx zf : pts) {
        const cplx target =
            kernel_formula(1.0, 1.0, t, squared_distance(PlanePoint::from_z(z0, params), PlanePoint::from_z(zf, params)));
        double prev = 1e300;
        for (const auto& e : ev) {
          double err;
          try {
            err = testing::rel(e.kernel(z0, zf), target);
          } catch (const TruncationError& ex) {
            o.fail(ex.what());
            err = 1.0;
          }
          if (err > std::max(prev, floor)) o.fail("error not monotone in D");
          prev = err;
        }
        o.record(prev);
      }
  }
  return o;
}

Outcome criterion4() {
  Outcome o{true, 0.0, 1e-8, ""};
  QuadratureSpec q;
  q.tolerance = 1e-10;
  const auto params = PhysicalParams::make(1.0, 1.0);
  const cplx grid[] = {{0.0, 0.0}, {1.0, 0.0}, {-0.5, 0.5}, {0.2, -0.9}, {0.0, 1.3}};
  for (cplx z : grid)
    for (cplx w : grid) {
      const auto r = check_momentum_completeness(z, w, params, q);
      o.record(testing::rel(r.value, std::exp(-std::norm(w - z)) / params.theta()));
    }
  return o;
}

Outcome criterion5() {
  Outcome o{true, 0.0, 0.0, ""};
  QuadratureSpec q;
  q.tolerance = 1e-8;
  const auto params = PhysicalParams::make(1.0, 1.0);
  const MomentumPoint pairs[][2] = {{{1.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}, {0.0, 1.0}}, {{-0.4, 0.7}, {-0.4, 0.7}}};
  for (const auto& pr : pairs) {
    const auto r = check_position_star_completeness(pr[0], pr[1], params, q);
    // target computed here: unit-mass Gaussian of width sigma at p - p'
    const double s2 = r.sigma * r.sigma;
    const double target = std::exp(-std::norm(pr[0].p() - pr[1].p()) / (2 * s2)) / (kTwoPi * s2);
    o.tol = std::max(o.tol, r.tolerance);
    const double err = std::max(std::abs(r.closed_form - target), std::abs(r.quadrature - target)) / r.peak;
    o.worst = std::max(o.worst, err);
    if (!(err <= r.tolerance)) o.fail("star completeness outside tolerance");
  }
  const auto neg = check_position_star_completeness({1.0, 0.0}, {1.0, 0.0}, params, q, Composition::Pointwise);
  if (!(neg.closed_form_error >= 10.0 * neg.tolerance)) o.fail("pointwise variant did not fail");
  char buf[96];
  std::snprintf(buf, sizeof buf, "pointwise mismatch %.3e", neg.closed_form_error);
  if (o.note.empty()) o.note = buf;
  return o;
}

Outcome criterion6() {
  Outcome o{true, 0.0, 1e-12, ""};
  for (double m : {0.1, 1.0, 7.0})
    for (double th : {0.01, 0.5, 1.0, 4.0}) {
      const auto params = PhysicalParams::make(m, th);
      for (double c : {0.0, 0.3, 1.0, 2.5, 6.0}) {
        const double dx = c * std::sqrt(th);
        const double expect = std::exp(-dx * dx / (2 * th)) / th;
        const double mag = std::abs(closed_form_kernel(params, 0.0, {0.0, 0.0}, {dx, 0.0}));
        if (!std::isfinite(mag)) o.fail("non-finite kernel at T=0");
        o.record(std::abs(mag - expect) / expect);
      }
      if (!std::isfinite(std::abs(closed_form_kernel(params, 0.0, {0.0, 0.0}, {1e3, 0.0}))))
        o.fail("non-finite kernel at large separation");
      for (double t : {0.0, 0.01, 0.5, 3.0, 100.0}) {
        const double expect = m / std::sqrt(m * m * th * th + t * t);
        o.record(std::abs(std::abs(closed_form_kernel(params, t, {0.4, -0.2}, {0.4, -0.2})) - expect) / expect);
      }
    }
  return o;
}

Outcome criterion7() {
  Outcome o{true, 0.0, 0.1, ""};
  const cplx k0 = 1.0 / I * std::exp(I * 0.5);
  std::vector<double> errs;
  for (double th : {1e-2, 1e-4, 1e-6})
    errs.push_back(std::abs(closed_form_kernel(PhysicalParams::make(1.0, th), 1.0, {0, 0}, {1, 0}) - k0));
  for (std::size_t i = 1; i < errs.size(); ++i) o.record(std::abs(errs[i] / errs[i - 1] / 1e-2 - 1.0));
  return o;
}

Outcome criterion8() {
  Outcome o{true, 0.0, 1e-8, ""};
  testing::Gen g(108);
  const auto params = PhysicalParams::make(1.0, 1.0);
  const GaussianSlice a = short_time_slice(params, 0.5), b = short_time_slice(params, 1.0);
  const GaussianSymbol f = slice_symbol(a, params, 3, 0, 1), h = slice_symbol(b, params, 3, 1, 2);
  const GaussianSymbol closed = star(f, h, 1);
  for (int i = 0; i < 25; ++i) {
    const cplx pt[3] = {g.disk(1.5), g.disk(1.5), g.disk(1.5)};
    o.record(testing::rel(star_series_oracle(f, h, pt, 30, 1), closed.evaluate(pt)));
  }
  double cross = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto p = PhysicalParams::make(g.log_uniform(0.1, 10.0), g.log_uniform(0.01, 10.0));
    const GaussianSlice l = short_time_slice(p, g.log_uniform(0.01, 5.0));
    const GaussianSlice r = short_time_slice(p, g.log_uniform(0.01, 5.0));
    const GaussianSlice c = compose(l, r, p), s = compose_via_star(l, r, p);
    cross = std::max({cross, testing::rel(s.prefactor(), c.prefactor()), testing::rel(s.beta, c.beta)});
  }
  if (!(cross <= 1e-10)) o.fail("compose vs star_integral outside 1e-10");
  char buf[96];
  std::snprintf(buf, sizeof buf, "compose vs star_integral %.3e", cross);
  if (o.note.empty()) o.note = buf;
  return o;
}

Outcome criterion9() {
  Outcome o{true, 0.0, 1e-10, ""};
  testing::Gen g(109);
  const std::size_t d = 32, block = d - 2;
  for (double th : {0.3, 1.0, 5.0}) {
    const auto params = PhysicalParams::make(1.0, th);
    auto X = [&](const FockOperator& v) { return apply_position(Axis::X, v, params); };
    auto Y = [&](const FockOperator& v) { return apply_position(Axis::Y, v, params); };
    auto Px = [&](const FockOperator& v) { return apply_momentum(Axis::X, v, params); };
    auto Py = [&](const FockOperator& v) { return apply_momentum(Axis::Y, v, params); };
    for (int trial = 0; trial < 3; ++trial) {
      const FockOperator psi = g.op(d);
      const double n = block_max_abs(psi, block);
      o.record(block_max_abs_diff(X(Px(psi)) - Px(X(psi)), I * psi, block) / n);
      o.record(block_max_abs_diff(Y(Py(psi)) - Py(Y(psi)), I * psi, block) / n);
      o.record(block_max_abs_diff(X(Y(psi)) - Y(X(psi)), (I * th) * psi, block) / (th * n));
      o.record(block_max_abs_diff(Px(Py(psi)), Py(Px(psi)), block) / block_max_abs(Px(Py(psi)), block));
      const FockOperator p2 = Px(Px(psi)) + Py(Py(psi));
      const double s = block_max_abs(p2, block);
      o.record(block_max_abs_diff(p2, apply_p_ddagger(apply_p(psi, params), params), block) / s);
      o.record(block_max_abs_diff(p2, apply_p(apply_p_ddagger(psi, params), params), block) / s);
    }
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion all[] = {
      {"1 sliced kernel equals closed form, n in {0,1,2,4,16,1000}, 50 tuples", criterion1},
      {"2 n=1 and n=2 compositions", criterion2},
      {"3 superoperator oracle at D=32, monotone over D=16/24/32", criterion3},
      {"4 momentum completeness on a 5x5 grid", criterion4},
      {"5 smeared star completeness with pointwise negative control", criterion5},
      {"6 ultraviolet cutoff |K(dx,0)| and |K(0,T)|", criterion6},
      {"7 commutative limit linear in theta (ratio deviation)", criterion7},
      {"8 star closed form vs series K=30; compose vs star_integral", criterion8},
      {"9 interior-block Heisenberg algebra and P^2 at D=32", criterion9},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %s: worst %.3e tol %.1e (%.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", c.name, o.worst, o.tol,
                secs, o.note.empty() ? "" : " ", o.note.c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(all)) - failed, std::size(all));
  return failed;
}
