#pragma once

// Quantum Hilbert space: Hilbert-Schmidt operators psi on the truncated Fock
// space with (phi, psi) = tr(phi^dagger psi). Position acts by left
// multiplication, momentum by commutators.

#include <complex>
#include <cstddef>

#include "ncpath/fock.hpp"
#include "ncpath/fock_operator.hpp"

namespace ncpath {

enum class Axis { X, Y };

/// A point of the plane; z = (x + i y) / sqrt(2 theta).
class PlanePoint {
 public:
  PlanePoint() = default;
  PlanePoint(double x, double y) : x_(x), y_(y) {}

  static PlanePoint from_z(cplx z, const PhysicalParams& params);

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  cplx z(const PhysicalParams& params) const;

  /// |a - b|^2 in length units.
  friend double squared_distance(const PlanePoint& a, const PlanePoint& b) {
    const double dx = a.x_ - b.x_, dy = a.y_ - b.y_;
    return dx * dx + dy * dy;
  }

 private:
  double x_ = 0.0;
  double y_ = 0.0;
};

struct MomentumPoint {
  double px = 0.0;
  double py = 0.0;

  cplx p() const noexcept { return {px, py}; }
  double squared_norm() const noexcept { return px * px + py * py; }
};

/// tr(phi^dagger psi)
cplx hs_inner(const FockOperator& phi, const FockOperator& psi);

/// x = sqrt(theta/2)(b + b^dagger), y = -i sqrt(theta/2)(b - b^dagger).
FockOperator position_operator(Axis which, const FockSpace& space, const PhysicalParams& params);

/// X psi = x psi, Y psi = y psi.
FockOperator apply_position(Axis which, const FockOperator& psi, const PhysicalParams& params);

/// Px psi = [y, psi] / theta, Py psi = -[x, psi] / theta.
FockOperator apply_momentum(Axis which, const FockOperator& psi, const PhysicalParams& params);

/// B psi = b psi and B^ddagger psi = b^dagger psi.
FockOperator apply_b(const FockOperator& psi);
FockOperator apply_b_ddagger(const FockOperator& psi);

/// P psi = -i sqrt(2/theta) [b, psi], P^ddagger psi = i sqrt(2/theta) [b^dagger, psi].
FockOperator apply_p(const FockOperator& psi, const PhysicalParams& params);
FockOperator apply_p_ddagger(const FockOperator& psi, const PhysicalParams& params);

/// |z, zbar) = |z><z| / sqrt(theta). Not unit-normalized: (z|z) = 1/theta.
FockOperator position_state(cplx z, const PhysicalParams& params, const FockSpace& space);

/// |p) = sqrt(theta / 2 pi) exp(i sqrt(theta/2) (pbar b + p b^dagger)) by dense
/// matrix exponential. The leading D/2 block is certified against a larger
/// truncation; a mismatch above the space's tail tolerance throws
/// TruncationError carrying a dimension that passes (found by doubling up to
/// 256; 0 if none does).
FockOperator momentum_state(const MomentumPoint& p, const PhysicalParams& params, const FockSpace& space);

/// Rows/columns of a momentum state that the truncation check certifies.
inline std::size_t momentum_block(const FockSpace& space) { return space.dim() / 2; }

/// (z|w) = e^{-|z - w|^2} / theta.
cplx position_overlap(cplx z, cplx w, const PhysicalParams& params);

/// (z|p) = e^{-theta pbar p / 4} e^{i sqrt(theta/2)(p zbar + pbar z)} / sqrt(2 pi).
cplx position_momentum_overlap(cplx z, const MomentumPoint& p, const PhysicalParams& params);

/// (z|psi) = <z|psi|z> / sqrt(theta).
cplx position_representation(cplx z, const FockOperator& psi, const PhysicalParams& params);

}  // namespace ncpath
