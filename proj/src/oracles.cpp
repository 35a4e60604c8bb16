#include "ncpath/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "ncpath/errors.hpp"
#include "ncpath/propagator.hpp"
#include "ncpath/star.hpp"

namespace ncpath {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_dim(const SuperOperator& a, const SuperOperator& b, const char* op) {
  if (a.dim() != b.dim()) throw DimensionMismatch(std::string(op) + ": superoperator dimensions differ");
}

}  // namespace

// ---- SuperOperator ---------------------------------------------------------

SuperOperator::SuperOperator(std::size_t dim, CMatrix matrix) : dim_(dim), m_(std::move(matrix)) {
  if (m_.rows() != dim * dim || m_.cols() != dim * dim) {
    throw DimensionMismatch("SuperOperator: matrix must be D^2 x D^2");
  }
}

SuperOperator SuperOperator::left(const FockOperator& a) {
  return {a.dim(), kron(a.matrix(), CMatrix::identity(a.dim()))};
}

SuperOperator SuperOperator::right(const FockOperator& a) {
  return {a.dim(), kron(CMatrix::identity(a.dim()), transpose(a.matrix()))};
}

SuperOperator SuperOperator::adjoint_action(const FockOperator& a) {
  return {a.dim(), left(a).m_ - right(a).m_};
}

FockOperator SuperOperator::apply(const FockOperator& psi) const {
  if (psi.dim() != dim_) throw DimensionMismatch("SuperOperator::apply: Fock dimension differs");
  auto out = matvec(m_, psi.matrix().data());
  return FockOperator(CMatrix(dim_, dim_, std::move(out)));
}

SuperOperator SuperOperator::hs_adjoint() const { return {dim_, adjoint(m_)}; }

SuperOperator operator*(const SuperOperator& a, const SuperOperator& b) {
  require_dim(a, b, "SuperOperator::operator*");
  return {a.dim_, a.m_ * b.m_};
}

SuperOperator operator+(const SuperOperator& a, const SuperOperator& b) {
  require_dim(a, b, "SuperOperator::operator+");
  return {a.dim_, a.m_ + b.m_};
}

SuperOperator operator*(cplx s, const SuperOperator& a) { return {a.dim_, a.m_ * s}; }

SuperOperator build_hamiltonian_superop(const PhysicalParams& params, const FockSpace& space) {
  require_noncommutative(params, "build_hamiltonian_superop");
  const std::size_t d = space.dim();
  if (d < 4) throw InvalidArgument("build_hamiltonian_superop: need D >= 4, got " + std::to_string(d));
  const auto ops = ladder_operators(space);
  const CMatrix& b = ops.lower.matrix();
  const CMatrix& bd = ops.raise.matrix();
  const CMatrix id = CMatrix::identity(d);
  // [b^dag, [b, psi]] = b^dag b psi - b^dag psi b - b psi b^dag + psi b b^dag
  CMatrix h = kron(bd * b, id);
  h -= kron(bd, transpose(b));
  h -= kron(b, transpose(bd));
  h += kron(id, transpose(b * bd));
  h *= 1.0 / (params.mass() * params.theta());
  return {d, std::move(h)};
}

std::vector<std::size_t> sector_indices(std::size_t dim, int offset) {
  std::vector<std::size_t> idx;
  const auto d = static_cast<int>(dim);
  for (int i = std::max(0, offset); i < std::min(d, d + offset); ++i) {
    idx.push_back(static_cast<std::size_t>(i) * dim + static_cast<std::size_t>(i - offset));
  }
  return idx;
}

// ---- evolution -------------------------------------------------------------

FreeEvolution::FreeEvolution(const PhysicalParams& params, double total_time, const FockSpace& space)
    : params_(params), space_(space), dim_(space.dim()), time_(total_time) {
  if (!(total_time >= 0.0) || !std::isfinite(total_time)) throw InvalidArgument("FreeEvolution: T must be >= 0");
  const SuperOperator h = build_hamiltonian_superop(params, space);
  const auto d = static_cast<int>(dim_);
  for (int offset = -(d - 1); offset <= d - 1; ++offset) {
    auto idx = sector_indices(dim_, offset);
    CMatrix block(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t c = 0; c < idx.size(); ++c) block(a, c) = h.matrix()(idx[a], idx[c]);
    blocks_.push_back(expm(block * (-kI * total_time)));
    sectors_.push_back(std::move(idx));
  }
}

FockOperator FreeEvolution::apply(const FockOperator& psi) const {
  if (psi.dim() != dim_) throw DimensionMismatch("FreeEvolution::apply: Fock dimension differs");
  const auto in = psi.matrix().data();
  CMatrix out(dim_, dim_);
  auto od = out.data();
  for (std::size_t s = 0; s < sectors_.size(); ++s) {
    const auto& idx = sectors_[s];
    std::vector<cplx> local(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) local[a] = in[idx[a]];
    const auto evolved = matvec(blocks_[s], local);
    for (std::size_t a = 0; a < idx.size(); ++a) od[idx[a]] = evolved[a];
  }
  return FockOperator(std::move(out));
}

cplx FreeEvolution::kernel(cplx z0, cplx zf) const {
  const FockOperator start = position_state(z0, params_, space_);
  const FockOperator end = position_state(zf, params_, space_);
  return hs_inner(end, apply(start));
}

CMatrix FreeEvolution::dense() const {
  CMatrix u(dim_ * dim_, dim_ * dim_);
  for (std::size_t s = 0; s < sectors_.size(); ++s) {
    const auto& idx = sectors_[s];
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t c = 0; c < idx.size(); ++c) u(idx[a], idx[c]) = blocks_[s](a, c);
  }
  return u;
}

cplx evolve_kernel_oracle(const PhysicalParams& params, double total_time, cplx z0, cplx zf, const FockSpace& space) {
  return FreeEvolution(params, total_time, space).kernel(z0, zf);
}

std::vector<std::size_t> default_ladder(std::size_t dim) {
  std::vector<std::size_t> dims{std::max<std::size_t>(4, dim / 2), std::max<std::size_t>(4, (3 * dim) / 4),
                                std::max<std::size_t>(4, dim)};
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  return dims;
}

std::string OracleLadder::table() const {
  std::ostringstream os;
  os << "D-ladder (target " << std::setprecision(17) << target.real() << (target.imag() < 0 ? "" : "+")
     << target.imag() << "i, tolerance " << std::setprecision(3) << tolerance << ")\n";
  os << "      D   rel_error\n";
  for (const auto& r : rungs) {
    os << std::setw(7) << r.dim << "   ";
    if (r.evaluated) {
      os << std::scientific << std::setprecision(3) << r.rel_error << std::defaultfloat;
    } else {
      os << "n/a (" << r.note << ")";
    }
    os << "\n";
  }
  os << "monotone: " << (monotone ? "yes" : "no") << ", converged: " << (converged ? "yes" : "no") << "\n";
  return os.str();
}

OracleLadder oracle_ladder(const PhysicalParams& params, double total_time, cplx z0, cplx zf,
                           const std::vector<std::size_t>& dims, double tolerance, double roundoff_floor) {
  if (dims.empty()) throw InvalidArgument("oracle_ladder: empty ladder");
  OracleLadder ladder;
  ladder.tolerance = tolerance;
  ladder.roundoff_floor = roundoff_floor;
  ladder.target = closed_form_kernel(params, total_time, PlanePoint::from_z(z0, params), PlanePoint::from_z(zf, params));
  auto sorted = dims;
  std::sort(sorted.begin(), sorted.end());
  for (auto d : sorted) {
    LadderRung rung;
    rung.dim = d;
    try {
      rung.value = evolve_kernel_oracle(params, total_time, z0, zf, FockSpace(d, tolerance));
      rung.rel_error = std::abs(rung.value - ladder.target) / std::abs(ladder.target);
      rung.evaluated = true;
    } catch (const TruncationError& e) {
      rung.note = "coherent tail exceeds tolerance, need D >= " + std::to_string(e.required_dim());
    } catch (const InvalidArgument& e) {
      rung.note = e.what();
    }
    ladder.rungs.push_back(std::move(rung));
  }
  ladder.monotone = std::all_of(ladder.rungs.begin(), ladder.rungs.end(), [](const LadderRung& r) { return r.evaluated; });
  for (std::size_t i = 1; ladder.monotone && i < ladder.rungs.size(); ++i) {
    const double prev = ladder.rungs[i - 1].rel_error, cur = ladder.rungs[i].rel_error;
    if (cur > prev && cur > roundoff_floor) ladder.monotone = false;
  }
  ladder.converged = ladder.monotone && ladder.rungs.back().rel_error <= tolerance;
  return ladder;
}

cplx converged_oracle(const PhysicalParams& params, double total_time, cplx z0, cplx zf,
                      const std::vector<std::size_t>& dims, double tolerance) {
  const auto ladder = oracle_ladder(params, total_time, z0, zf, dims, tolerance);
  if (!ladder.converged) throw ConvergenceError("superoperator oracle did not converge\n" + ladder.table());
  return ladder.rungs.back().value;
}

// ---- completeness relations -----------------------------------------------

double momentum_completeness_radius(cplx z, cplx w, const PhysicalParams& params, double tolerance) {
  require_noncommutative(params, "momentum_completeness_radius");
  // tail outside |p| = R is e^{-theta R^2 / 2} / theta; target is e^{-|w - z|^2} / theta
  return std::sqrt(2.0 / params.theta() * (std::log(10.0 / tolerance) + std::norm(w - z)));
}

CompletenessResult check_momentum_completeness(cplx z, cplx w, const PhysicalParams& params,
                                               const QuadratureSpec& quad) {
  const double needed = momentum_completeness_radius(z, w, params, quad.tolerance);
  QuadratureSpec spec = quad;
  if (spec.radius == 0.0) {
    spec.radius = needed;
  } else if (spec.radius < needed) {
    throw InvalidArgument("check_momentum_completeness: radius " + std::to_string(spec.radius) +
                          " leaves a Gaussian tail above tolerance; need R >= " + std::to_string(needed));
  }
  CompletenessResult res;
  res.radius = spec.radius;
  res.target = position_overlap(w, z, params);

  const auto integrand = [&](double px, double py) {
    const MomentumPoint p{px, py};
    return position_momentum_overlap(w, p, params) * std::conj(position_momentum_overlap(z, p, params));
  };
  const auto q = integrate_square(integrand, 0.0, 0.0, spec, std::abs(res.target));
  res.value = q.value;
  res.quadrature_error = q.error_estimate;
  res.rel_error = std::abs(res.value - res.target) / std::abs(res.target);

  // Same integrand as a Gaussian symbol in p, integrated exactly.
  const double theta = params.theta();
  const double s = std::sqrt(theta / 2.0);
  GaussianSymbol sym = GaussianSymbol::constant(1.0 / (2.0 * std::numbers::pi));
  sym.add_monomial(0, 1, -theta / 2.0);
  // i s (p (wbar - zbar) + pbar (w - z))
  sym.add_linear(0, kI * s * std::conj(w - z));
  sym.add_linear(1, kI * s * (w - z));
  res.closed_form = std::exp(integrate_slot(sym, 0, 1.0).log_prefactor());
  return res;
}

namespace {

// Centre and decay length (in z units) of |h| for a single-slot symbol.
struct Envelope {
  cplx centre;
  double radius;
};

Envelope envelope(const GaussianSymbol& h, double tolerance) {
  // exponent in r = (Re z, Im z): -1/2 r^T K r + j^T r
  const cplx u[2][2] = {{1.0, kI}, {1.0, -kI}};
  double kr[2][2], jr[2];
  for (int i = 0; i < 2; ++i) {
    cplx ji = 0.0;
    for (int a = 0; a < 2; ++a) ji += u[a][i] * h.lin(static_cast<std::size_t>(a));
    jr[i] = ji.real();
    for (int j = 0; j < 2; ++j) {
      cplx acc = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) acc += u[a][i] * h.quad(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) * u[b][j];
      kr[i][j] = -acc.real();
    }
  }
  const double det = kr[0][0] * kr[1][1] - kr[0][1] * kr[1][0];
  if (!(kr[0][0] > 0.0) || !(det > 0.0)) throw NonIntegrable("envelope: symbol does not decay");
  const double cx = (kr[1][1] * jr[0] - kr[0][1] * jr[1]) / det;
  const double cy = (kr[0][0] * jr[1] - kr[1][0] * jr[0]) / det;
  const double half_tr = 0.5 * (kr[0][0] + kr[1][1]);
  const double lambda_min = half_tr - std::sqrt(std::max(0.0, half_tr * half_tr - det));
  // e^{-lambda_min rho^2 / 2} below tolerance * 1e-3
  const double radius = std::sqrt(2.0 * (std::log(1.0 / tolerance) + 3.0 * std::log(10.0)) / lambda_min);
  return {{cx, cy}, radius};
}

}  // namespace

StarCompletenessResult check_position_star_completeness(const MomentumPoint& p, const MomentumPoint& p_prime,
                                                        const PhysicalParams& params, const QuadratureSpec& quad,
                                                        Composition mode) {
  require_noncommutative(params, "check_position_star_completeness");
  const double theta = params.theta();
  const double s = std::sqrt(theta / 2.0);
  StarCompletenessResult res;
  res.sigma = quad.sigma > 0.0 ? quad.sigma : default_smearing_width(params);
  const double sig2 = res.sigma * res.sigma;
  res.peak = 1.0 / (2.0 * std::numbers::pi * sig2);
  res.tolerance = quad.tolerance + kSmearingTolerance;
  res.target = res.peak * std::exp(-(std::pow(p.px - p_prime.px, 2) + std::pow(p.py - p_prime.py, 2)) / (2.0 * sig2));

  // slots: 0 = z, 1 = q (smeared momentum of the left state)
  constexpr std::size_t z = GaussianSymbol::z_index(0), zb = GaussianSymbol::zbar_index(0);
  constexpr std::size_t q = GaussianSymbol::z_index(1), qb = GaussianSymbol::zbar_index(1);
  // (q|z) = e^{-theta q qbar / 4} e^{-i s (qbar z + q zbar)} / sqrt(2 pi)
  GaussianSymbol left = GaussianSymbol::constant(1.0 / std::sqrt(2.0 * std::numbers::pi), 2);
  left.add_monomial(q, qb, -theta / 4.0);
  left.add_monomial(qb, z, -kI * s);
  left.add_monomial(q, zb, -kI * s);
  // phi_sigma(q - c) = e^{-(q - c)(qbar - cbar) / 2 sigma^2} / (2 pi sigma^2)
  const cplx c = p_prime.p();
  GaussianSymbol smear = GaussianSymbol::constant(res.peak, 2);
  smear.add_monomial(q, qb, -1.0 / (2.0 * sig2));
  smear.add_linear(q, std::conj(c) / (2.0 * sig2));
  smear.add_linear(qb, c / (2.0 * sig2));
  smear.add_log_prefactor(-std::norm(c) / (2.0 * sig2));
  GaussianSymbol smeared_left = integrate_slot(left * smear, 1, 1.0);

  // (z|p) = e^{-theta pbar p / 4} e^{i s (p zbar + pbar z)} / sqrt(2 pi)
  const cplx pc = p.p();
  GaussianSymbol right = GaussianSymbol::constant(1.0 / std::sqrt(2.0 * std::numbers::pi), 1);
  right.add_log_prefactor(-theta * std::norm(pc) / 4.0);
  right.add_linear(z, kI * s * std::conj(pc));
  right.add_linear(zb, kI * s * pc);

  const GaussianSymbol integrand = mode == Composition::Star ? star(smeared_left, right) : smeared_left * right;
  res.closed_form = std::exp(integrate_slot(integrand, 0, theta / std::numbers::pi).log_prefactor());

  // Brute force over the plane in x = sqrt(2 theta) z with measure dx dy / 2 pi.
  const Envelope env = envelope(integrand, quad.tolerance);
  const double scale_x = std::sqrt(2.0 * theta);
  QuadratureSpec spec = quad;
  spec.radius = env.radius * scale_x;
  const auto f = [&](double x, double y) {
    const cplx zz = cplx(x, y) / scale_x;
    return integrand.evaluate(std::span<const cplx>(&zz, 1)) / (2.0 * std::numbers::pi);
  };
  const auto qr = integrate_square(f, env.centre.real() * scale_x, env.centre.imag() * scale_x, spec, res.peak);
  res.quadrature = qr.value;
  res.quadrature_error = qr.error_estimate / res.peak;
  res.closed_form_error = std::abs(res.closed_form - res.target) / res.peak;
  res.quadrature_mismatch = std::abs(res.quadrature - res.target) / res.peak;
  return res;
}

}  // namespace ncpath
