#include "ncpath/propagator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ncpath/errors.hpp"

namespace ncpath {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDegenerateLambda = 1e-14;

}  // namespace

cplx GaussianSlice::prefactor() const { return mantissa * std::pow(kTwoPi, two_pi_power); }

cplx GaussianSlice::evaluate(double squared_distance) const {
  return prefactor() * std::exp(-beta * squared_distance);
}

SliceSchedule::SliceSchedule(std::size_t intermediate, double tau) : n_(intermediate), tau_(tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("SliceSchedule: tau must be positive");
}

SliceSchedule SliceSchedule::from_total(std::size_t intermediate, double total_time) {
  return SliceSchedule(intermediate, total_time / static_cast<double>(intermediate + 1));
}

CompositionIntermediates composition_intermediates(const GaussianSlice& left, const GaussianSlice& right,
                                                   const PhysicalParams& params) {
  const cplx gamma = right.beta / left.beta;
  return {gamma, 1.0 + gamma - 2.0 * params.theta() * right.beta};
}

GaussianSlice short_time_slice(const PhysicalParams& params, double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidArgument("short_time_slice: tau must be >= 0");
  if (params.is_commutative() && tau == 0.0) {
    throw InvalidArgument("short_time_slice: theta = 0 and tau = 0 is a delta function");
  }
  const double m = params.mass();
  const cplx denom = m * params.theta() + kI * tau;
  return {m / denom, 0, m / (2.0 * denom)};
}

GaussianSlice compose(const GaussianSlice& left, const GaussianSlice& right, const PhysicalParams& params) {
  const auto [gamma, lambda] = composition_intermediates(left, right, params);
  if (std::abs(lambda) < kDegenerateLambda) {
    throw DegenerateComposition("compose: Lambda = 1 + gamma - 2 theta beta_2 vanishes");
  }
  GaussianSlice out;
  // N1 N2 pi / (beta_1 Lambda) = 2 pi * [N1 N2 / (2 beta_1 Lambda)]
  out.mantissa = left.mantissa * right.mantissa / (2.0 * left.beta * lambda);
  out.two_pi_power = left.two_pi_power + right.two_pi_power + 1;
  out.beta = left.beta * gamma / lambda;
  // Re beta' = 0 is the theta = 0 oscillatory limit, still a valid Fresnel integral
  if (!(out.beta.real() >= 0.0)) {
    throw DegenerateComposition("compose: composed width has negative real part");
  }
  return out;
}

GaussianSlice folded_slice(const PhysicalParams& params, const SliceSchedule& schedule) {
  const GaussianSlice step = short_time_slice(params, schedule.tau());
  GaussianSlice acc = step;
  for (std::size_t i = 0; i < schedule.intermediate(); ++i) acc = compose(step, acc, params);
  return acc;
}

cplx sliced_kernel(const PhysicalParams& params, const SliceSchedule& schedule, const PlanePoint& from,
                   const PlanePoint& to) {
  const GaussianSlice acc = folded_slice(params, schedule);
  const int net = acc.two_pi_power - static_cast<int>(schedule.intermediate());
  return acc.mantissa * std::pow(kTwoPi, net) * std::exp(-acc.beta * squared_distance(from, to));
}

cplx closed_form_kernel(const PhysicalParams& params, double total_time, const PlanePoint& from,
                        const PlanePoint& to) {
  if (!(total_time >= 0.0) || !std::isfinite(total_time)) {
    throw InvalidArgument("closed_form_kernel: T must be >= 0");
  }
  if (params.is_commutative() && total_time == 0.0) {
    throw InvalidArgument("closed_form_kernel: theta = 0 and T = 0 is a delta function");
  }
  const double m = params.mass();
  const cplx denom = m * params.theta() + kI * total_time;
  return m / denom * std::exp(-m * squared_distance(from, to) / (2.0 * denom));
}

double kernel_magnitude_bound(const PhysicalParams& params, double total_time) {
  const double m = params.mass();
  return m / std::hypot(m * params.theta(), total_time);
}

GaussianSymbol slice_symbol(const GaussianSlice& slice, const PhysicalParams& params, std::size_t slots,
                            std::size_t to_slot, std::size_t from_slot) {
  require_noncommutative(params, "slice_symbol");
  GaussianSymbol s = GaussianSymbol::difference_gaussian(slice.mantissa, 2.0 * params.theta() * slice.beta, slots,
                                                         to_slot, from_slot);
  s.add_log_prefactor(static_cast<double>(slice.two_pi_power) * std::log(kTwoPi));
  return s;
}

GaussianSlice compose_via_star(const GaussianSlice& left, const GaussianSlice& right, const PhysicalParams& params) {
  // slots: 0 = z_{i+1}, 1 = z_i (shared), 2 = z_0
  const GaussianSymbol f = slice_symbol(left, params, 3, 0, 1);
  const GaussianSymbol g = slice_symbol(right, params, 3, 1, 2);
  const GaussianSymbol h = star_integral(f, g, params, 1);

  // h = C exp(-2 theta beta' (z0 - z2)(zbar0 - zbar2)) on slots (z_{i+1}, z_0)
  const cplx kappa = -h.quad(GaussianSymbol::z_index(0), GaussianSymbol::zbar_index(0));
  GaussianSlice out;
  out.beta = kappa / (2.0 * params.theta());
  out.two_pi_power = left.two_pi_power + right.two_pi_power + 1;
  // undo the 1/(2 pi) measure and strip the explicit powers of 2 pi
  out.mantissa = std::exp(h.log_prefactor() -
                          static_cast<double>(left.two_pi_power + right.two_pi_power) * std::log(kTwoPi));
  return out;
}

}  // namespace ncpath
