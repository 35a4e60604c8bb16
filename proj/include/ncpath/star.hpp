#pragma once

// Voros star product f * g = f exp(<-d_zbar ->d_z) g on exponential-of-
// quadratic symbols, a truncated-series oracle for it, and the star followed
// by the Gaussian integral over the shared variable.
//
// A GaussianSymbol lives on `slots` complex variables z_0..z_{k-1}. Each slot
// contributes two coordinates, z_k and zbar_k, which the algebra treats as
// independent; evaluation sets zbar_k = conj(z_k). The symbol is
//
//   exp(log_prefactor + 1/2 x^T Q x + L^T x),  x = (z_0, zbar_0, z_1, ...).

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "ncpath/fock.hpp"

namespace ncpath {

/// Single-slot view C exp(a z^2 + b zbar^2 + c z zbar + d z + e zbar).
struct SlotCoefficients {
  cplx log_prefactor{};
  cplx a{}, b{}, c{}, d{}, e{};
};

class GaussianSymbol {
 public:
  /// The constant symbol 1 on `slots` variables.
  explicit GaussianSymbol(std::size_t slots = 1);

  static GaussianSymbol constant(cplx value, std::size_t slots = 1);
  static GaussianSymbol single(const SlotCoefficients& c);

  /// prefactor * exp(-kappa (z_i - z_j)(zbar_i - zbar_j))
  static GaussianSymbol difference_gaussian(cplx prefactor, cplx kappa, std::size_t slots, std::size_t i,
                                            std::size_t j);

  static constexpr std::size_t z_index(std::size_t slot) { return 2 * slot; }
  static constexpr std::size_t zbar_index(std::size_t slot) { return 2 * slot + 1; }

  std::size_t slots() const noexcept { return slots_; }
  std::size_t coords() const noexcept { return 2 * slots_; }

  cplx log_prefactor() const noexcept { return log_prefactor_; }
  /// Q(i, j); the exponent holds 1/2 x^T Q x.
  cplx quad(std::size_t i, std::size_t j) const { return q_[i * coords() + j]; }
  cplx lin(std::size_t i) const { return l_[i]; }

  /// Adds coeff * x_i * x_j to the exponent.
  GaussianSymbol& add_monomial(std::size_t i, std::size_t j, cplx coeff);
  GaussianSymbol& add_linear(std::size_t i, cplx coeff);
  GaussianSymbol& add_log_prefactor(cplx v);
  GaussianSymbol& scale(cplx factor);

  /// Pointwise product; slot counts must match.
  GaussianSymbol& operator*=(const GaussianSymbol& o);
  friend GaussianSymbol operator*(GaussianSymbol a, const GaussianSymbol& b) { return a *= b; }

  /// Value at z_k = point[k], zbar_k = conj(point[k]).
  cplx evaluate(std::span<const cplx> point) const;
  /// Log of the value (no branch normalization).
  cplx log_evaluate(std::span<const cplx> point) const;

  /// Coefficients in `slot` with every other slot fixed at point[k].
  SlotCoefficients slot_view(std::size_t slot, std::span<const cplx> point) const;

  /// Same symbol on a larger variable set: slot k moves to mapping[k].
  GaussianSymbol embed(std::size_t new_slots, std::span<const std::size_t> mapping) const;

  /// Drops a slot the symbol does not depend on.
  GaussianSymbol drop_slot(std::size_t slot) const;

  bool depends_on(std::size_t slot) const;

 private:
  std::size_t slots_;
  cplx log_prefactor_{};
  std::vector<cplx> q_;
  std::vector<cplx> l_;

  friend GaussianSymbol star(const GaussianSymbol&, const GaussianSymbol&, std::size_t);
  friend GaussianSymbol integrate_slot(const GaussianSymbol&, std::size_t, double);
};

/// Closed-form star product acting on `slot`; the other slots are spectators.
/// The derivative series resums to det^{-1/2} exp(...) with
/// det = 1 - Q_f(zbar, zbar) Q_g(z, z); the principal square root is the
/// continuation from det = 1. Throws DegenerateComposition when det vanishes.
GaussianSymbol star(const GaussianSymbol& f, const GaussianSymbol& g, std::size_t slot = 0);

/// Integral of a symbol over the complex variable in `slot`, with measure
/// measure_scale * d(Re z) d(Im z). The result has one slot fewer; later
/// slots shift down by one. Throws NonIntegrable unless the real part
/// of the quadratic form in that slot is negative definite.
GaussianSymbol integrate_slot(const GaussianSymbol& h, std::size_t slot, double measure_scale);

/// star then integral over `slot` with theta dz dzbar / 2 pi = dx dy / 2 pi.
GaussianSymbol star_integral(const GaussianSymbol& f, const GaussianSymbol& g, const PhysicalParams& params,
                             std::size_t slot = 0);

// ---- series oracle ---------------------------------------------------------

/// Polynomial sum c_ij z^i zbar^j.
class Polynomial2 {
 public:
  Polynomial2() = default;
  static Polynomial2 one();
  static Polynomial2 monomial(int z_power, int zbar_power, cplx coeff = 1.0);

  Polynomial2& add(int z_power, int zbar_power, cplx coeff);
  Polynomial2 d_zbar(int times = 1) const;
  Polynomial2 d_z(int times = 1) const;
  cplx evaluate(cplx z) const;
  bool empty() const noexcept { return terms_.empty(); }

 private:
  std::map<std::pair<int, int>, cplx> terms_;
};

/// polynomial * Gaussian in one slot; the input class of the series oracle.
struct SeriesSymbol {
  Polynomial2 poly = Polynomial2::one();
  SlotCoefficients gauss{};
};

/// Terms (1/k!) d_zbar^k f * d_z^k g at z, k = 0..order. Derivatives come from
/// the exact Hermite-type recursion for polynomial-times-Gaussian.
std::vector<cplx> star_series_terms(const SeriesSymbol& f, const SeriesSymbol& g, cplx z, int order);

/// Partial sum of star_series_terms.
cplx star_series_oracle(const SeriesSymbol& f, const SeriesSymbol& g, cplx z, int order);

/// Multi-slot convenience: views both symbols in `slot` at `point`.
cplx star_series_oracle(const GaussianSymbol& f, const GaussianSymbol& g, std::span<const cplx> point,
                        int order, std::size_t slot = 0);

}  // namespace ncpath
