#include "ncpath/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ncpath/errors.hpp"
#include "ncpath/simd/dispatch.hpp"

namespace ncpath {

namespace {

constexpr cplx kI{0.0, 1.0};

FockOperator lower_of(std::size_t dim) { return ladder_operators(FockSpace(dim)).lower; }

FockOperator momentum_exponential(const MomentumPoint& p, double theta, std::size_t dim) {
  const auto ops = ladder_operators(FockSpace(dim));
  const cplx pc = p.p();
  const FockOperator gen = (kI * std::sqrt(theta / 2.0)) * (std::conj(pc) * ops.lower + pc * ops.raise);
  return FockOperator(expm(gen.matrix()));
}

}  // namespace

PlanePoint PlanePoint::from_z(cplx z, const PhysicalParams& params) {
  require_noncommutative(params, "PlanePoint::from_z");
  const cplx xy = z * std::sqrt(2.0 * params.theta());
  return {xy.real(), xy.imag()};
}

cplx PlanePoint::z(const PhysicalParams& params) const {
  require_noncommutative(params, "PlanePoint::z");
  return cplx(x_, y_) / std::sqrt(2.0 * params.theta());
}

cplx hs_inner(const FockOperator& phi, const FockOperator& psi) {
  if (phi.dim() != psi.dim()) throw DimensionMismatch("hs_inner: Fock dimensions differ");
  return simd::zdotc(phi.matrix().size(), phi.matrix().data().data(), psi.matrix().data().data());
}

FockOperator position_operator(Axis which, const FockSpace& space, const PhysicalParams& params) {
  require_noncommutative(params, "position_operator");
  const auto ops = ladder_operators(space);
  const double s = std::sqrt(params.theta() / 2.0);
  if (which == Axis::X) return s * (ops.lower + ops.raise);
  return (-kI * s) * (ops.lower - ops.raise);
}

FockOperator apply_position(Axis which, const FockOperator& psi, const PhysicalParams& params) {
  return position_operator(which, FockSpace(psi.dim()), params) * psi;
}

FockOperator apply_momentum(Axis which, const FockOperator& psi, const PhysicalParams& params) {
  const FockSpace space(psi.dim());
  if (which == Axis::X) {
    return commutator(position_operator(Axis::Y, space, params), psi) * (1.0 / params.theta());
  }
  return commutator(position_operator(Axis::X, space, params), psi) * (-1.0 / params.theta());
}

FockOperator apply_b(const FockOperator& psi) { return lower_of(psi.dim()) * psi; }

FockOperator apply_b_ddagger(const FockOperator& psi) { return lower_of(psi.dim()).dagger() * psi; }

FockOperator apply_p(const FockOperator& psi, const PhysicalParams& params) {
  require_noncommutative(params, "apply_p");
  return commutator(lower_of(psi.dim()), psi) * (-kI * std::sqrt(2.0 / params.theta()));
}

FockOperator apply_p_ddagger(const FockOperator& psi, const PhysicalParams& params) {
  require_noncommutative(params, "apply_p_ddagger");
  return commutator(lower_of(psi.dim()).dagger(), psi) * (kI * std::sqrt(2.0 / params.theta()));
}

FockOperator position_state(cplx z, const PhysicalParams& params, const FockSpace& space) {
  require_noncommutative(params, "position_state");
  const FockVector v = coherent_vector(space, z);
  const std::size_t d = space.dim();
  FockOperator out(d);
  const double scale = 1.0 / std::sqrt(params.theta());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(i, j) = scale * v.amplitudes[i] * std::conj(v.amplitudes[j]);
  return out;
}

FockOperator momentum_state(const MomentumPoint& p, const PhysicalParams& params, const FockSpace& space) {
  require_noncommutative(params, "momentum_state");
  const double theta = params.theta();
  const std::size_t d = space.dim();
  const std::size_t block = momentum_block(space);
  const double tol = space.tail_tolerance();

  auto certified = [&](std::size_t dim, const FockOperator& at_dim) {
    const std::size_t larger = dim + std::max<std::size_t>(8, dim / 2);
    const FockOperator ref = momentum_exponential(p, theta, larger);
    double diff = 0.0;
    for (std::size_t i = 0; i < dim / 2; ++i)
      for (std::size_t j = 0; j < dim / 2; ++j) diff = std::max(diff, std::abs(at_dim(i, j) - ref(i, j)));
    return diff;
  };

  FockOperator u = momentum_exponential(p, theta, d);
  const double diff = certified(d, u);
  if (diff > tol) {
    // doubling search; reports a dimension that suffices, not the smallest one
    constexpr std::size_t kSearchLimit = 256;
    std::size_t need = 0;
    for (std::size_t trial = 2 * d; trial <= kSearchLimit; trial *= 2) {
      if (certified(trial, momentum_exponential(p, theta, trial)) <= tol) {
        need = trial;
        break;
      }
    }
    const std::string hint = need ? "D = " + std::to_string(need) + " suffices"
                                  : "no D <= " + std::to_string(kSearchLimit) + " suffices";
    throw TruncationError("momentum_state: leading " + std::to_string(block) + "x" + std::to_string(block) +
                              " block moves by " + std::to_string(diff) + " under a larger truncation at D=" +
                              std::to_string(d) + "; " + hint,
                          need);
  }
  return u * std::sqrt(theta / (2.0 * std::numbers::pi));
}

cplx position_overlap(cplx z, cplx w, const PhysicalParams& params) {
  require_noncommutative(params, "position_overlap");
  return std::exp(-std::norm(z - w)) / params.theta();
}

cplx position_momentum_overlap(cplx z, const MomentumPoint& p, const PhysicalParams& params) {
  require_noncommutative(params, "position_momentum_overlap");
  const double theta = params.theta();
  const cplx pc = p.p();
  const cplx phase = kI * std::sqrt(theta / 2.0) * (pc * std::conj(z) + std::conj(pc) * z);
  return std::exp(-theta * std::norm(pc) / 4.0 + phase) / std::sqrt(2.0 * std::numbers::pi);
}

cplx position_representation(cplx z, const FockOperator& psi, const PhysicalParams& params) {
  require_noncommutative(params, "position_representation");
  const FockVector v = coherent_vector(FockSpace(psi.dim()), z);
  const auto av = matvec(psi.matrix(), v.amplitudes);
  cplx s = 0.0;
  for (std::size_t n = 0; n < v.dim(); ++n) s += std::conj(v.amplitudes[n]) * av[n];
  return s / std::sqrt(params.theta());
}

}  // namespace ncpath
