#include "ncpath/verify_suite.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "ncpath/errors.hpp"
#include "ncpath/fock.hpp"
#include "ncpath/hilbert.hpp"
#include "ncpath/oracles.hpp"
#include "ncpath/propagator.hpp"
#include "ncpath/star.hpp"

namespace ncpath {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kAlgebraTolerance = 1e-10;
constexpr double kExactTolerance = 1e-10;

std::string params_text(const PhysicalParams& p) {
  return "theta=" + format_double(p.theta()) + " m=" + format_double(p.mass());
}

std::string zstr(cplx z) { return format_complex(z); }

FockOperator random_operator(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  FockOperator psi(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) psi(i, j) = {n(rng), n(rng)};
  return psi;
}

CheckRow make_row(std::string check, std::string parameters, cplx value, cplx target, double error, double tol) {
  return {std::move(check), std::move(parameters), format_complex(value), format_complex(target), error, tol,
          error <= tol};
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

void coherent_overlap_checks(std::vector<CheckRow>& rows) {
  const cplx pairs[][2] = {{1.0, 0.0}, {{0.0, 1.0}, {0.0, -1.0}}, {{0.7, -0.4}, {-1.1, 0.9}}, {{1.5, 0.5}, {0.3, 1.2}}};
  for (const auto& pr : pairs) {
    const FockSpace space = FockSpace::for_coherent_radius(std::max(std::abs(pr[0]), std::abs(pr[1])));
    const cplx analytic = coherent_overlap(pr[0], pr[1]);
    const cplx summed = fock_inner(coherent_vector(space, pr[0]), coherent_vector(space, pr[1]));
    const double tol = 10.0 * space.tail_tolerance();
    rows.push_back(make_row("coherent_overlap", "z=" + zstr(pr[0]) + " w=" + zstr(pr[1]) + " D=" + std::to_string(space.dim()),
                            summed, analytic, std::abs(summed - analytic), tol));
  }
}

void heisenberg_checks(std::vector<CheckRow>& rows, const PhysicalParams& params, std::size_t dim) {
  std::mt19937_64 rng(20240611);
  const FockOperator psi = random_operator(dim, rng);
  const std::size_t block = dim >= 3 ? dim - 2 : 0;
  const std::string where = params_text(params) + " D=" + std::to_string(dim) + " block=" + std::to_string(block);

  auto X = [&](const FockOperator& v) { return apply_position(Axis::X, v, params); };
  auto Y = [&](const FockOperator& v) { return apply_position(Axis::Y, v, params); };
  auto Px = [&](const FockOperator& v) { return apply_momentum(Axis::X, v, params); };
  auto Py = [&](const FockOperator& v) { return apply_momentum(Axis::Y, v, params); };
  using Op = std::function<FockOperator(const FockOperator&)>;

  auto commutator_check = [&](const std::string& name, const Op& a, const Op& b, cplx expected) {
    const FockOperator lhs = a(b(psi)) - b(a(psi));
    const FockOperator rhs = expected * psi;
    const double scale = expected == 0.0 ? block_max_abs(a(b(psi)), block) : block_max_abs(rhs, block);
    const double err = block_max_abs_diff(lhs, rhs, block) / scale;
    rows.push_back({name, where, format_double(err), "0", err, kAlgebraTolerance, err <= kAlgebraTolerance});
  };
  commutator_check("heisenberg [X,Px]=i", X, Px, kI);
  commutator_check("heisenberg [Y,Py]=i", Y, Py, kI);
  commutator_check("heisenberg [X,Y]=i*theta", X, Y, kI * params.theta());
  commutator_check("heisenberg [Px,Py]=0", Px, Py, 0.0);

  const FockOperator p2 = Px(Px(psi)) + Py(Py(psi));
  const FockOperator pdp = apply_p_ddagger(apply_p(psi, params), params);
  const FockOperator ppd = apply_p(apply_p_ddagger(psi, params), params);
  const double scale = block_max_abs(p2, block);
  const double e1 = block_max_abs_diff(p2, pdp, block) / scale;
  const double e2 = block_max_abs_diff(p2, ppd, block) / scale;
  rows.push_back({"momentum_square P^2=P'P", where, format_double(e1), "0", e1, kAlgebraTolerance, e1 <= kAlgebraTolerance});
  rows.push_back({"momentum_square P^2=PP'", where, format_double(e2), "0", e2, kAlgebraTolerance, e2 <= kAlgebraTolerance});
}

void momentum_eigen_checks(std::vector<CheckRow>& rows, const PhysicalParams& params) {
  const FockSpace space(48);
  const MomentumPoint p{1.0, 0.5};
  const std::size_t block = momentum_block(space);
  const std::string where = params_text(params) + " p=" + zstr(p.p()) + " D=48 block=" + std::to_string(block);
  try {
    const FockOperator state = momentum_state(p, params, space);
    const double scale = block_max_abs(state, block);
    const double ex = block_max_abs_diff(apply_momentum(Axis::X, state, params), p.px * state, block) / (p.px * scale);
    const double ey = block_max_abs_diff(apply_momentum(Axis::Y, state, params), p.py * state, block) / (p.py * scale);
    rows.push_back({"momentum_eigen Px|p)=px|p)", where, format_double(ex), "0", ex, 1e-8, ex <= 1e-8});
    rows.push_back({"momentum_eigen Py|p)=py|p)", where, format_double(ey), "0", ey, 1e-8, ey <= 1e-8});
    const cplx z{0.5, 0.3};
    const cplx overlap = hs_inner(position_state(z, params, space), state);
    const cplx analytic = position_momentum_overlap(z, p, params);
    rows.push_back(make_row("position_momentum_overlap", where + " z=" + zstr(z), overlap, analytic, rel(overlap, analytic),
                            1e-8));
  } catch (const Error& e) {
    rows.push_back({"momentum_eigen", where + " (" + e.what() + ")", "", "", 1.0, 1e-8, false});
  }
}

void momentum_completeness_checks(std::vector<CheckRow>& rows, const PhysicalParams& params, double tol) {
  QuadratureSpec quad;
  quad.tolerance = tol * 1e-2;
  const cplx grid[] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.5}, {-0.6, 0.4}, {0.3, -0.8}};
  for (const cplx z : grid)
    for (const cplx w : grid) {
      const auto r = check_momentum_completeness(z, w, params, quad);
      rows.push_back(make_row("momentum_completeness", params_text(params) + " z=" + zstr(z) + " w=" + zstr(w), r.value,
                              r.target, r.rel_error, tol));
    }
}

void star_completeness_checks(std::vector<CheckRow>& rows, const PhysicalParams& params, double tol, bool no_star) {
  QuadratureSpec quad;
  quad.tolerance = tol;
  const Composition mode = no_star ? Composition::Pointwise : Composition::Star;
  const std::string label = no_star ? " composition=pointwise" : "";
  const MomentumPoint pairs[][2] = {{{1.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}, {0.0, 1.0}}, {{0.4, -0.3}, {0.4, -0.3}}};
  for (const auto& pr : pairs) {
    const auto r = check_position_star_completeness(pr[0], pr[1], params, quad, mode);
    const double err = std::max(r.closed_form_error, r.quadrature_mismatch);
    rows.push_back(make_row("star_completeness",
                            params_text(params) + " p=" + zstr(pr[0].p()) + " p'=" + zstr(pr[1].p()) +
                                " sigma=" + format_double(r.sigma) + label,
                            r.closed_form, r.target, err, r.tolerance));
  }
  // Negative control: without the star the relation must fail by a wide margin.
  const MomentumPoint p{1.0, 0.0};
  const auto r = check_position_star_completeness(p, p, params, quad, Composition::Pointwise);
  const double margin = 10.0 * r.tolerance;
  rows.push_back({"star_completeness_negative_control",
                  params_text(params) + " p=p'=" + zstr(p.p()) + " requires mismatch >= 10*tol",
                  format_complex(r.closed_form), format_complex(r.target), r.closed_form_error, margin,
                  r.closed_form_error >= margin});
}

void star_series_checks(std::vector<CheckRow>& rows, const PhysicalParams& params) {
  const GaussianSlice a = short_time_slice(params, 1.0), b = short_time_slice(params, 0.5);
  const GaussianSymbol f = slice_symbol(a, params, 3, 0, 1);
  const GaussianSymbol g = slice_symbol(b, params, 3, 1, 2);
  const GaussianSymbol closed = star(f, g, 1);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 25; ++i) {
    const cplx pt[3] = {{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
    const cplx c = closed.evaluate(pt);
    const cplx s = star_series_oracle(f, g, pt, 30, 1);
    worst = std::max(worst, rel(s, c));
  }
  rows.push_back({"star_series_vs_closed_form", params_text(params) + " K=30 points=25", format_double(worst), "0", worst,
                  1e-8, worst <= 1e-8});

  const GaussianSlice viac = compose(a, b, params);
  const GaussianSlice vias = compose_via_star(a, b, params);
  const double eb = rel(vias.beta, viac.beta);
  const double en = rel(vias.mantissa, viac.mantissa);
  rows.push_back(make_row("compose_vs_star_integral", params_text(params) + " tau1=1 tau2=0.5", vias.mantissa * 2.0 * std::numbers::pi,
                          viac.prefactor(), std::max(eb, en), kExactTolerance));
}

void telescoping_checks(std::vector<CheckRow>& rows, const PhysicalParams& params) {
  const double total = 1.3;
  const PlanePoint from{0.2, -0.1}, to{0.9, 0.4};
  const cplx exact = closed_form_kernel(params, total, from, to);
  for (std::size_t n : {0u, 1u, 2u, 4u, 16u, 1000u}) {
    const SliceSchedule sched = SliceSchedule::from_total(n, total);
    const cplx sliced = sliced_kernel(params, sched, from, to);
    rows.push_back(make_row("telescoping", params_text(params) + " T=1.3 n=" + std::to_string(n), sliced, exact,
                            rel(sliced, exact), kExactTolerance));
    const GaussianSlice folded = folded_slice(params, sched);
    const double m = params.mass();
    const cplx expect_n = m / (m * params.theta() + kI * total);
    const double err = std::max(rel(folded.mantissa, expect_n), folded.two_pi_power == static_cast<int>(n) ? 0.0 : 1.0);
    rows.push_back(make_row("telescoping_prefactor", params_text(params) + " n=" + std::to_string(n) + " (2pi)^n explicit",
                            folded.mantissa, expect_n, err, kExactTolerance));
  }
}

void semigroup_checks(std::vector<CheckRow>& rows, const PhysicalParams& params) {
  const double pairs[][2] = {{0.3, 0.7}, {1.0, 2.5}, {0.05, 0.01}};
  for (const auto& t : pairs) {
    const GaussianSlice c = compose(short_time_slice(params, t[0]), short_time_slice(params, t[1]), params);
    const GaussianSlice whole = short_time_slice(params, t[0] + t[1]);
    // measure factor 1/(2 pi) cancels the single explicit 2 pi
    const double err = std::max({rel(c.mantissa, whole.mantissa), rel(c.beta, whole.beta),
                                 c.two_pi_power == 1 ? 0.0 : 1.0});
    rows.push_back(make_row("semigroup", params_text(params) + " T1=" + format_double(t[0]) + " T2=" + format_double(t[1]),
                            c.mantissa, whole.mantissa, err, kExactTolerance));
  }
}

void cutoff_checks(std::vector<CheckRow>& rows, const PhysicalParams& params) {
  double worst_t0 = 0.0, worst_dx0 = 0.0;
  for (double dx : {0.0, 0.5, 1.0, 2.0, 5.0}) {
    const cplx k = closed_form_kernel(params, 0.0, {0.0, 0.0}, {dx, 0.0});
    const double expect = std::exp(-dx * dx / (2.0 * params.theta())) / params.theta();
    worst_t0 = std::max(worst_t0, std::abs(std::abs(k) - expect) / expect);
  }
  for (double t : {0.0, 0.1, 1.0, 10.0, 100.0}) {
    const double mag = std::abs(closed_form_kernel(params, t, {0.0, 0.0}, {0.0, 0.0}));
    const double bound = kernel_magnitude_bound(params, t);
    worst_dx0 = std::max(worst_dx0, std::abs(mag - bound) / bound);
  }
  rows.push_back({"uv_cutoff |K(dx,T=0)|", params_text(params), format_double(worst_t0), "0", worst_t0, 1e-12, worst_t0 <= 1e-12});
  rows.push_back({"uv_cutoff |K(0,T)|", params_text(params), format_double(worst_dx0), "0", worst_dx0, 1e-12, worst_dx0 <= 1e-12});
}

void oracle_checks(std::vector<CheckRow>& rows, const PhysicalParams& params, std::size_t dim, double tol) {
  const auto dims = default_ladder(dim);
  std::string ladder_text;
  for (auto d : dims) ladder_text += (ladder_text.empty() ? "" : "/") + std::to_string(d);
  const cplx points[][2] = {{0.0, 0.0}, {{1.5, 0.0}, 0.0}, {{0.0, 1.5}, {-1.5, 0.0}}, {{0.7, 0.7}, {-0.5, 0.2}}};
  for (double t : {0.1, 0.5, 1.0}) {
    for (const auto& pt : points) {
      const auto ladder = oracle_ladder(params, t, pt[0], pt[1], dims, tol);
      const auto& last = ladder.rungs.back();
      const double err = last.evaluated ? last.rel_error : 1.0;
      CheckRow row = make_row("oracle_vs_closed_form",
                              params_text(params) + " T=" + format_double(t) + " z0=" + zstr(pt[0]) + " zf=" + zstr(pt[1]) +
                                  " D=" + ladder_text,
                              last.value, ladder.target, err, tol);
      row.passed = ladder.converged;
      if (!ladder.converged) row.parameters += "\n" + ladder.table();
      rows.push_back(std::move(row));
    }
  }
}

}  // namespace

std::vector<CheckRow> run_verify_suite(const VerifyConfig& config) {
  const PhysicalParams params = PhysicalParams::make(config.mass, config.theta);
  if (config.fock_dim < 4) throw InvalidArgument("verify: fock dimension must be at least 4");
  std::vector<CheckRow> rows;
  coherent_overlap_checks(rows);
  heisenberg_checks(rows, params, config.fock_dim);
  momentum_eigen_checks(rows, params);
  momentum_completeness_checks(rows, params, config.tolerance);
  star_completeness_checks(rows, params, config.tolerance, config.no_star);
  star_series_checks(rows, params);
  telescoping_checks(rows, params);
  semigroup_checks(rows, params);
  cutoff_checks(rows, params);
  oracle_checks(rows, params, config.fock_dim, config.oracle_tolerance);
  return rows;
}

}  // namespace ncpath
