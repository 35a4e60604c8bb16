#pragma once

// Time-sliced coherent-state path integral for the free particle
// H = P^2 / 2m. Every factor is Gaussian, so the slicing is exact at any n.

#include <complex>
#include <cstddef>

#include "ncpath/fock.hpp"
#include "ncpath/hilbert.hpp"
#include "ncpath/star.hpp"

namespace ncpath {

/// N exp(-beta |x_to - x_from|^2) with N = mantissa * (2 pi)^two_pi_power.
///
/// Each composition contributes an explicit factor of 2 pi to N; it is kept
/// as an integer power so long folds do not overflow and the (1/2pi)^n
/// measure cancels it exactly.
struct GaussianSlice {
  cplx mantissa{1.0};
  int two_pi_power = 0;
  cplx beta{};

  cplx prefactor() const;
  /// N exp(-beta dx2) including the (2 pi) power.
  cplx evaluate(double squared_distance) const;
};

/// n intermediate points, step tau, T = (n + 1) tau.
class SliceSchedule {
 public:
  SliceSchedule(std::size_t intermediate, double tau);
  static SliceSchedule from_total(std::size_t intermediate, double total_time);

  std::size_t intermediate() const noexcept { return n_; }
  double tau() const noexcept { return tau_; }
  double total_time() const noexcept { return static_cast<double>(n_ + 1) * tau_; }

 private:
  std::size_t n_;
  double tau_;
};

struct CompositionIntermediates {
  cplx gamma;   // beta_2 / beta_1
  cplx lambda;  // 1 + gamma - 2 theta beta_2
};

CompositionIntermediates composition_intermediates(const GaussianSlice& left, const GaussianSlice& right,
                                                   const PhysicalParams& params);

/// N = m / (m theta + i tau), beta = m / (2 (m theta + i tau)).
/// theta = 0 with tau = 0 is a genuine divergence and throws.
GaussianSlice short_time_slice(const PhysicalParams& params, double tau);

/// dx dy integral of left(x_{i+1}, x_i) * right(x_i, x_0) over x_i:
/// N' = N1 N2 pi / (beta_1 Lambda), beta' = beta_1 gamma / Lambda.
/// Throws DegenerateComposition when Lambda vanishes or Re beta' < 0.
GaussianSlice compose(const GaussianSlice& left, const GaussianSlice& right, const PhysicalParams& params);

/// Folds compose over n + 1 equal slices of the schedule, leaving the (2 pi)^n
/// growth explicit in the result.
GaussianSlice folded_slice(const PhysicalParams& params, const SliceSchedule& schedule);

/// (z_to, t_f | z_from, t_0) from the n-slice recursion with the (1/2pi)^n
/// measure applied at the end.
cplx sliced_kernel(const PhysicalParams& params, const SliceSchedule& schedule, const PlanePoint& from,
                   const PlanePoint& to);

/// m / (m theta + i T) exp(-m dx^2 / (2 (i T + m theta))).
cplx closed_form_kernel(const PhysicalParams& params, double total_time, const PlanePoint& from,
                        const PlanePoint& to);

/// m / sqrt(m^2 theta^2 + T^2); |closed_form_kernel| attains it at dx = 0.
double kernel_magnitude_bound(const PhysicalParams& params, double total_time);

/// The slice as a two-slot star symbol N exp(-2 theta beta (z_a - z_b)(zbar_a - zbar_b))
/// placed on `slots` variables.
GaussianSymbol slice_symbol(const GaussianSlice& slice, const PhysicalParams& params, std::size_t slots,
                            std::size_t to_slot, std::size_t from_slot);

/// The same composition carried out with the star product followed by the
/// dx dy integral; returns the resulting slice (including the 2 pi that
/// compose reports, so the two are directly comparable).
GaussianSlice compose_via_star(const GaussianSlice& left, const GaussianSlice& right, const PhysicalParams& params);

}  // namespace ncpath
