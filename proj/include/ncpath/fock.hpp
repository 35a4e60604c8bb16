#pragma once

// Truncated boson Fock space realizing the noncommutative plane
// [x, y] = i theta, with b = (x + i y) / sqrt(2 theta).

#include <complex>
#include <cstddef>
#include <vector>

#include "ncpath/fock_operator.hpp"

namespace ncpath {

using cplx = std::complex<double>;

/// Mass and noncommutativity in natural units (hbar = c = 1).
class PhysicalParams {
 public:
  /// Requires mass > 0 and theta > 0.
  static PhysicalParams make(double mass, double theta);

  /// theta = 0 exactly. Only the propagator's analytic limits accept this.
  static PhysicalParams commutative(double mass);

  double mass() const noexcept { return mass_; }
  double theta() const noexcept { return theta_; }
  bool is_commutative() const noexcept { return theta_ == 0.0; }

 private:
  PhysicalParams(double mass, double theta) : mass_(mass), theta_(theta) {}
  double mass_;
  double theta_;
};

/// Throws InvalidArgument if params is the commutative (theta = 0) value.
void require_noncommutative(const PhysicalParams& params, const char* op);

inline constexpr double kDefaultTailTolerance = 1e-12;

/// Span of |0>..|D-1>.
class FockSpace {
 public:
  explicit FockSpace(std::size_t dim, double tail_tolerance = kDefaultTailTolerance);

  /// Dimension from |z|^2 + 10 sqrt(|z|^2 + 1) + 20 for the largest |z| used.
  static FockSpace for_coherent_radius(double max_abs_z, double tail_tolerance = kDefaultTailTolerance);

  std::size_t dim() const noexcept { return dim_; }
  double tail_tolerance() const noexcept { return tail_tolerance_; }

 private:
  std::size_t dim_;
  double tail_tolerance_;
};

struct FockVector {
  std::vector<cplx> amplitudes;

  std::size_t dim() const noexcept { return amplitudes.size(); }
  double norm_squared() const;
};

/// Poisson tail 1 - e^{-|z|^2} sum_{n<D} |z|^{2n}/n!, summed from the tail side.
double coherent_tail(cplx z, std::size_t dim);

/// Smallest D whose coherent tail is within tolerance.
std::size_t required_dim(cplx z, double tail_tolerance);

struct LadderOperators {
  FockOperator lower;
  FockOperator raise;
};

/// b has sqrt(n) on the (n-1, n) entries; b^dagger is its adjoint.
/// [b, b^dagger] is the identity except the (D-1, D-1) entry, which is 1 - D.
LadderOperators ladder_operators(const FockSpace& space);

/// e^{-|z|^2/2} z^n / sqrt(n!). Throws TruncationError if the tail exceeds
/// the space's tolerance.
FockVector coherent_vector(const FockSpace& space, cplx z);

/// <z|w> in closed form, no truncation.
cplx coherent_overlap(cplx z, cplx w);

/// sum conj(a_n) b_n
cplx fock_inner(const FockVector& a, const FockVector& b);

}  // namespace ncpath
