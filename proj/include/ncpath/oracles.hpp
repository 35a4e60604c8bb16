#pragma once

// Independent cross-checks: truncated superoperator evolution, quadrature of
// the completeness relations, and smeared delta comparisons.

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "ncpath/fock.hpp"
#include "ncpath/fock_operator.hpp"
#include "ncpath/hilbert.hpp"
#include "ncpath/linalg.hpp"
#include "ncpath/quadrature.hpp"

namespace ncpath {

/// Linear map on D x D operators, stored as a D^2 x D^2 matrix acting on the
/// row-major vectorization vec(psi)[i D + j] = psi(i, j).
class SuperOperator {
 public:
  SuperOperator(std::size_t dim, CMatrix matrix);

  /// psi -> A psi
  static SuperOperator left(const FockOperator& a);
  /// psi -> psi A
  static SuperOperator right(const FockOperator& a);
  /// psi -> [A, psi]
  static SuperOperator adjoint_action(const FockOperator& a);

  std::size_t dim() const noexcept { return dim_; }
  const CMatrix& matrix() const noexcept { return m_; }

  FockOperator apply(const FockOperator& psi) const;

  /// Adjoint under hs_inner (the double-dagger of the quantum Hilbert space).
  SuperOperator hs_adjoint() const;

  friend SuperOperator operator*(const SuperOperator& a, const SuperOperator& b);
  friend SuperOperator operator+(const SuperOperator& a, const SuperOperator& b);
  friend SuperOperator operator*(cplx s, const SuperOperator& a);

 private:
  std::size_t dim_;
  CMatrix m_;
};

/// psi -> (1/2m) P^ddagger P psi = (1/(m theta)) [b^dagger, [b, psi]]. Needs D >= 4.
SuperOperator build_hamiltonian_superop(const PhysicalParams& params, const FockSpace& space);

/// Vectorized indices (i D + j) with i - j == offset.
std::vector<std::size_t> sector_indices(std::size_t dim, int offset);

/// exp(-i T H) for one Hamiltonian, built sector by sector (H preserves i - j)
/// and reused across endpoint pairs.
class FreeEvolution {
 public:
  FreeEvolution(const PhysicalParams& params, double total_time, const FockSpace& space);

  std::size_t dim() const noexcept { return dim_; }
  double total_time() const noexcept { return time_; }

  FockOperator apply(const FockOperator& psi) const;

  /// (zf | exp(-i T H) | z0) between position states.
  cplx kernel(cplx z0, cplx zf) const;

  /// The full D^2 x D^2 propagator assembled from the sector blocks.
  CMatrix dense() const;

 private:
  PhysicalParams params_;
  FockSpace space_;
  std::size_t dim_;
  double time_;
  std::vector<std::vector<std::size_t>> sectors_;
  std::vector<CMatrix> blocks_;
};

/// (zf | exp(-i T H) | z0) at truncation D.
cplx evolve_kernel_oracle(const PhysicalParams& params, double total_time, cplx z0, cplx zf, const FockSpace& space);

struct LadderRung {
  std::size_t dim = 0;
  cplx value{};
  double rel_error = 0.0;
  bool evaluated = false;
  std::string note;
};

struct OracleLadder {
  std::vector<LadderRung> rungs;
  cplx target{};
  double tolerance = 0.0;
  double roundoff_floor = 0.0;
  bool monotone = false;
  bool converged = false;  // monotone and final error within tolerance

  std::string table() const;
};

inline constexpr double kLadderRoundoffFloor = 1e-12;

/// Evaluates the oracle on each dimension (ascending) and compares against the
/// closed-form kernel. A rung whose coherent tail exceeds `tolerance` is
/// recorded as not evaluated.
OracleLadder oracle_ladder(const PhysicalParams& params, double total_time, cplx z0, cplx zf,
                           const std::vector<std::size_t>& dims, double tolerance,
                           double roundoff_floor = kLadderRoundoffFloor);

/// Same as oracle_ladder but throws ConvergenceError with the error-vs-D table
/// when the ladder does not converge; returns the value at the largest D.
cplx converged_oracle(const PhysicalParams& params, double total_time, cplx z0, cplx zf,
                      const std::vector<std::size_t>& dims, double tolerance);

/// {max(4, D/2), max(4, 3D/4), D} without duplicates.
std::vector<std::size_t> default_ladder(std::size_t dim);

struct CompletenessResult {
  cplx value{};           // quadrature
  cplx closed_form{};     // exact Gaussian integral of the same integrand
  cplx target{};          // analytic right-hand side
  double quadrature_error = 0.0;
  double radius = 0.0;
  double rel_error = 0.0;  // |value - target| / |target|
};

/// Radius of the p-box for which the dropped tail is below tol/10 relative to
/// the target (1/theta) e^{-|w - z|^2}.
double momentum_completeness_radius(cplx z, cplx w, const PhysicalParams& params, double tolerance);

/// integral d^2p (w|p)(p|z) against (1/theta) e^{-|w - z|^2}. A radius in
/// `quad` below momentum_completeness_radius throws InvalidArgument.
CompletenessResult check_momentum_completeness(cplx z, cplx w, const PhysicalParams& params,
                                               const QuadratureSpec& quad);

enum class Composition { Star, Pointwise };

inline double default_smearing_width(const PhysicalParams& params) { return 0.05 / std::sqrt(params.theta()); }
inline constexpr double kSmearingTolerance = 1e-6;

struct StarCompletenessResult {
  cplx closed_form{};     // smeared left side through star_integral
  cplx quadrature{};      // same symbol integrated by tensor Gauss-Legendre over the plane
  cplx target{};          // smeared (p'|p)
  double peak = 0.0;      // smeared delta at coincidence, 1/(2 pi sigma^2)
  double sigma = 0.0;
  double quadrature_error = 0.0;
  double tolerance = 0.0;  // combined quadrature + smearing tolerance, relative to peak
  double closed_form_error = 0.0;  // |closed_form - target| / peak
  double quadrature_mismatch = 0.0;  // |quadrature - target| / peak
};

/// Smeared check of integral (theta dz dzbar / 2 pi) (p'|z) * (z|p) = (p'|p).
/// The left state is smeared as integral d^2q phi_sigma(q - p') (q|z) with a
/// unit-mass Gaussian phi_sigma, so the right-hand side becomes phi_sigma(p - p').
/// Composition::Pointwise drops the star and serves as a negative control.
StarCompletenessResult check_position_star_completeness(const MomentumPoint& p, const MomentumPoint& p_prime,
                                                        const PhysicalParams& params, const QuadratureSpec& quad,
                                                        Composition mode = Composition::Star);

}  // namespace ncpath
