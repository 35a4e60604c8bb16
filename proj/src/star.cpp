#include "ncpath/star.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ncpath/errors.hpp"

namespace ncpath {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kDegenerateDet = 1e-14;

std::vector<cplx> coordinates(std::span<const cplx> point) {
  std::vector<cplx> x(2 * point.size());
  for (std::size_t k = 0; k < point.size(); ++k) {
    x[2 * k] = point[k];
    x[2 * k + 1] = std::conj(point[k]);
  }
  return x;
}

void require_slots(const GaussianSymbol& f, const GaussianSymbol& g, std::size_t slot, const char* op) {
  if (f.slots() != g.slots()) {
    throw DimensionMismatch(std::string(op) + ": symbols live on " + std::to_string(f.slots()) + " and " +
                            std::to_string(g.slots()) + " slots");
  }
  if (slot >= f.slots()) throw InvalidArgument(std::string(op) + ": slot out of range");
}

}  // namespace

GaussianSymbol::GaussianSymbol(std::size_t slots)
    : slots_(slots), q_(4 * slots * slots), l_(2 * slots) {}

GaussianSymbol GaussianSymbol::constant(cplx value, std::size_t slots) {
  if (value == 0.0) throw InvalidArgument("GaussianSymbol::constant: zero has no logarithm");
  GaussianSymbol s(slots);
  s.log_prefactor_ = std::log(value);
  return s;
}

GaussianSymbol GaussianSymbol::single(const SlotCoefficients& c) {
  GaussianSymbol s(1);
  s.log_prefactor_ = c.log_prefactor;
  s.add_monomial(0, 0, c.a).add_monomial(1, 1, c.b).add_monomial(0, 1, c.c);
  s.add_linear(0, c.d).add_linear(1, c.e);
  return s;
}

GaussianSymbol GaussianSymbol::difference_gaussian(cplx prefactor, cplx kappa, std::size_t slots, std::size_t i,
                                                   std::size_t j) {
  if (i >= slots || j >= slots || i == j) throw InvalidArgument("difference_gaussian: bad slots");
  GaussianSymbol s = constant(prefactor, slots);
  // -kappa (z_i - z_j)(zbar_i - zbar_j)
  s.add_monomial(z_index(i), zbar_index(i), -kappa);
  s.add_monomial(z_index(j), zbar_index(j), -kappa);
  s.add_monomial(z_index(i), zbar_index(j), kappa);
  s.add_monomial(z_index(j), zbar_index(i), kappa);
  return s;
}

GaussianSymbol& GaussianSymbol::add_monomial(std::size_t i, std::size_t j, cplx coeff) {
  const std::size_t n = coords();
  if (i >= n || j >= n) throw InvalidArgument("add_monomial: coordinate out of range");
  if (i == j) {
    q_[i * n + i] += 2.0 * coeff;
  } else {
    q_[i * n + j] += coeff;
    q_[j * n + i] += coeff;
  }
  return *this;
}

GaussianSymbol& GaussianSymbol::add_linear(std::size_t i, cplx coeff) {
  if (i >= coords()) throw InvalidArgument("add_linear: coordinate out of range");
  l_[i] += coeff;
  return *this;
}

GaussianSymbol& GaussianSymbol::add_log_prefactor(cplx v) {
  log_prefactor_ += v;
  return *this;
}

GaussianSymbol& GaussianSymbol::scale(cplx factor) {
  if (factor == 0.0) throw InvalidArgument("GaussianSymbol::scale: zero factor");
  log_prefactor_ += std::log(factor);
  return *this;
}

GaussianSymbol& GaussianSymbol::operator*=(const GaussianSymbol& o) {
  if (o.slots_ != slots_) throw DimensionMismatch("GaussianSymbol product: slot counts differ");
  log_prefactor_ += o.log_prefactor_;
  for (std::size_t i = 0; i < q_.size(); ++i) q_[i] += o.q_[i];
  for (std::size_t i = 0; i < l_.size(); ++i) l_[i] += o.l_[i];
  return *this;
}

cplx GaussianSymbol::log_evaluate(std::span<const cplx> point) const {
  if (point.size() != slots_) throw DimensionMismatch("GaussianSymbol::evaluate: wrong number of slot values");
  const auto x = coordinates(point);
  const std::size_t n = coords();
  cplx acc = log_prefactor_;
  for (std::size_t i = 0; i < n; ++i) {
    cplx row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += q_[i * n + j] * x[j];
    acc += x[i] * (0.5 * row + l_[i]);
  }
  return acc;
}

cplx GaussianSymbol::evaluate(std::span<const cplx> point) const { return std::exp(log_evaluate(point)); }

SlotCoefficients GaussianSymbol::slot_view(std::size_t slot, std::span<const cplx> point) const {
  if (slot >= slots_) throw InvalidArgument("slot_view: slot out of range");
  if (point.size() != slots_) throw DimensionMismatch("slot_view: wrong number of slot values");
  const auto x = coordinates(point);
  const std::size_t n = coords();
  const std::size_t zi = z_index(slot), bi = zbar_index(slot);
  SlotCoefficients c;
  c.a = 0.5 * quad(zi, zi);
  c.b = 0.5 * quad(bi, bi);
  c.c = quad(zi, bi);
  c.d = l_[zi];
  c.e = l_[bi];
  c.log_prefactor = log_prefactor_;
  for (std::size_t o = 0; o < n; ++o) {
    if (o == zi || o == bi) continue;
    c.d += quad(zi, o) * x[o];
    c.e += quad(bi, o) * x[o];
    c.log_prefactor += l_[o] * x[o];
    for (std::size_t p = 0; p < n; ++p) {
      if (p == zi || p == bi) continue;
      c.log_prefactor += 0.5 * x[o] * quad(o, p) * x[p];
    }
  }
  return c;
}

GaussianSymbol GaussianSymbol::embed(std::size_t new_slots, std::span<const std::size_t> mapping) const {
  if (mapping.size() != slots_) throw DimensionMismatch("embed: mapping size must equal slot count");
  for (auto m : mapping)
    if (m >= new_slots) throw InvalidArgument("embed: target slot out of range");
  GaussianSymbol out(new_slots);
  out.log_prefactor_ = log_prefactor_;
  const std::size_t n = coords(), nn = out.coords();
  auto target = [&](std::size_t coord) { return 2 * mapping[coord / 2] + coord % 2; };
  for (std::size_t i = 0; i < n; ++i) {
    out.l_[target(i)] += l_[i];
    for (std::size_t j = 0; j < n; ++j) out.q_[target(i) * nn + target(j)] += q_[i * n + j];
  }
  return out;
}

bool GaussianSymbol::depends_on(std::size_t slot) const {
  if (slot >= slots_) throw InvalidArgument("depends_on: slot out of range");
  const std::size_t n = coords();
  for (std::size_t c : {z_index(slot), zbar_index(slot)}) {
    if (l_[c] != 0.0) return true;
    for (std::size_t j = 0; j < n; ++j)
      if (q_[c * n + j] != 0.0) return true;
  }
  return false;
}

GaussianSymbol GaussianSymbol::drop_slot(std::size_t slot) const {
  if (slot >= slots_ || slots_ < 2) throw InvalidArgument("drop_slot: slot out of range");
  if (depends_on(slot)) throw InvalidArgument("drop_slot: symbol depends on the slot");
  GaussianSymbol out(slots_ - 1);
  out.log_prefactor_ = log_prefactor_;
  const std::size_t n = coords(), nn = out.coords();
  auto keep = [&](std::size_t c) { return c / 2 != slot; };
  auto index = [&](std::size_t c) { return c / 2 < slot ? c : c - 2; };
  for (std::size_t i = 0; i < n; ++i) {
    if (!keep(i)) continue;
    out.l_[index(i)] = l_[i];
    for (std::size_t j = 0; j < n; ++j)
      if (keep(j)) out.q_[index(i) * nn + index(j)] = q_[i * n + j];
  }
  return out;
}

GaussianSymbol star(const GaussianSymbol& f, const GaussianSymbol& g, std::size_t slot) {
  require_slots(f, g, slot, "star");
  const std::size_t n = f.coords();
  const std::size_t s = GaussianSymbol::zbar_index(slot);  // left derivative variable
  const std::size_t t = GaussianSymbol::z_index(slot);     // right derivative variable

  // exp(d_s d_t) acting on exp(1/2 x^T A x + b^T x) with A = diag(Q_f, Q_g).
  // Only the (s, t) block of A enters the resummation.
  const cplx alpha = f.quad(s, s);
  const cplx gamma = g.quad(t, t);
  const cplx det = 1.0 - alpha * gamma;
  if (std::abs(det) < kDegenerateDet) {
    throw DegenerateComposition("star: resummation denominator 1 - Qf(zbar,zbar) Qg(z,z) vanishes (Qf=" +
                                std::to_string(alpha.real()) + "+" + std::to_string(alpha.imag()) +
                                "i, Qg=" + std::to_string(gamma.real()) + "+" + std::to_string(gamma.imag()) +
                                "i)");
  }
  const cplx inv = 1.0 / det;

  GaussianSymbol out = f;
  out *= g;

  // u1 = r1.x + c1 (d_zbar of f's exponent), u2 = r2.x + c2 (d_z of g's)
  const cplx c1 = f.lin(s), c2 = g.lin(t);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx r1i = f.quad(s, i), r2i = g.quad(t, i);
    out.l_[i] += inv * (gamma * c1 * r1i + c2 * r1i + c1 * r2i + alpha * c2 * r2i);
    for (std::size_t j = 0; j < n; ++j) {
      const cplx r1j = f.quad(s, j), r2j = g.quad(t, j);
      out.q_[i * n + j] += inv * (gamma * r1i * r1j + r1i * r2j + r2i * r1j + alpha * r2i * r2j);
    }
  }
  out.log_prefactor_ += inv * (0.5 * gamma * c1 * c1 + c1 * c2 + 0.5 * alpha * c2 * c2) - 0.5 * std::log(det);
  return out;
}

GaussianSymbol integrate_slot(const GaussianSymbol& h, std::size_t slot, double measure_scale) {
  if (slot >= h.slots()) throw InvalidArgument("integrate_slot: slot out of range");
  const std::size_t n = h.coords();
  const std::size_t w = GaussianSymbol::z_index(slot), wb = GaussianSymbol::zbar_index(slot);

  // z = a + i b, zbar = a - i b  ->  x_omega = U r
  const cplx u[2][2] = {{1.0, kI}, {1.0, -kI}};
  const cplx qww[2][2] = {{h.quad(w, w), h.quad(w, wb)}, {h.quad(wb, w), h.quad(wb, wb)}};
  cplx k[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      cplx acc = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) acc += u[a][i] * qww[a][b] * u[b][j];
      k[i][j] = -acc;
    }

  const double re11 = k[0][0].real(), re22 = k[1][1].real(), re12 = 0.5 * (k[0][1].real() + k[1][0].real());
  if (!(re11 > 0.0) || !(re11 * re22 - re12 * re12 > 0.0)) {
    throw NonIntegrable("integrate_slot: real part of the quadratic form in slot " + std::to_string(slot) +
                        " is not negative definite");
  }

  const cplx detk = k[0][0] * k[1][1] - k[0][1] * k[1][0];
  // sqrt(det K) as the product of principal roots of the eigenvalues, which
  // all lie in the right half-plane when Re K > 0.
  const cplx half_tr = 0.5 * (k[0][0] + k[1][1]);
  const cplx disc = std::sqrt(half_tr * half_tr - detk);
  const cplx sqrt_det = std::sqrt(half_tr + disc) * std::sqrt(half_tr - disc);
  const cplx kinv[2][2] = {{k[1][1] / detk, -k[0][1] / detk}, {-k[1][0] / detk, k[0][0] / detk}};

  // j = G rho + j0 with G = U^T Q_{omega,rho}, j0 = U^T L_omega.
  const std::size_t omega[2] = {w, wb};
  std::vector<std::size_t> rest;
  for (std::size_t c = 0; c < n; ++c)
    if (c != w && c != wb) rest.push_back(c);
  const std::size_t m = rest.size();
  std::vector<cplx> gmat(2 * m);
  cplx j0[2];
  for (int i = 0; i < 2; ++i) {
    j0[i] = u[0][i] * h.lin(omega[0]) + u[1][i] * h.lin(omega[1]);
    for (std::size_t r = 0; r < m; ++r)
      gmat[static_cast<std::size_t>(i) * m + r] =
          u[0][i] * h.quad(omega[0], rest[r]) + u[1][i] * h.quad(omega[1], rest[r]);
  }
  auto kinv_apply = [&](const cplx v[2], cplx out[2]) {
    out[0] = kinv[0][0] * v[0] + kinv[0][1] * v[1];
    out[1] = kinv[1][0] * v[0] + kinv[1][1] * v[1];
  };

  GaussianSymbol out(h.slots() - 1);
  const std::size_t nn = out.coords();
  out.log_prefactor_ = h.log_prefactor();
  cplx kj0[2];
  kinv_apply(j0, kj0);
  out.log_prefactor_ += 0.5 * (j0[0] * kj0[0] + j0[1] * kj0[1]);
  out.log_prefactor_ += std::log(measure_scale * 2.0 * std::numbers::pi) - std::log(sqrt_det);
  for (std::size_t r = 0; r < m; ++r) {
    const cplx gr[2] = {gmat[r], gmat[m + r]};
    cplx kgr[2];
    kinv_apply(gr, kgr);
    out.l_[r] = h.lin(rest[r]) + gr[0] * kj0[0] + gr[1] * kj0[1];
    for (std::size_t c = 0; c < m; ++c) {
      out.q_[r * nn + c] = h.quad(rest[r], rest[c]) + gmat[c] * kgr[0] + gmat[m + c] * kgr[1];
    }
  }
  return out;
}

GaussianSymbol star_integral(const GaussianSymbol& f, const GaussianSymbol& g, const PhysicalParams& params,
                             std::size_t slot) {
  require_noncommutative(params, "star_integral");
  require_slots(f, g, slot, "star_integral");
  return integrate_slot(star(f, g, slot), slot, params.theta() / std::numbers::pi);
}

// ---- series oracle ---------------------------------------------------------

Polynomial2 Polynomial2::one() { return monomial(0, 0, 1.0); }

Polynomial2 Polynomial2::monomial(int z_power, int zbar_power, cplx coeff) {
  Polynomial2 p;
  p.add(z_power, zbar_power, coeff);
  return p;
}

Polynomial2& Polynomial2::add(int z_power, int zbar_power, cplx coeff) {
  if (z_power < 0 || zbar_power < 0) throw InvalidArgument("Polynomial2: negative power");
  auto& slot = terms_[{z_power, zbar_power}];
  slot += coeff;
  if (slot == 0.0) terms_.erase({z_power, zbar_power});
  return *this;
}

Polynomial2 Polynomial2::d_zbar(int times) const {
  Polynomial2 out;
  for (const auto& [pw, c] : terms_) {
    if (pw.second < times) continue;
    double f = 1.0;
    for (int k = 0; k < times; ++k) f *= pw.second - k;
    out.add(pw.first, pw.second - times, c * f);
  }
  return out;
}

Polynomial2 Polynomial2::d_z(int times) const {
  Polynomial2 out;
  for (const auto& [pw, c] : terms_) {
    if (pw.first < times) continue;
    double f = 1.0;
    for (int k = 0; k < times; ++k) f *= pw.first - k;
    out.add(pw.first - times, pw.second, c * f);
  }
  return out;
}

cplx Polynomial2::evaluate(cplx z) const {
  cplx s = 0.0;
  const cplx zb = std::conj(z);
  for (const auto& [pw, c] : terms_) s += c * std::pow(z, pw.first) * std::pow(zb, pw.second);
  return s;
}

namespace {

// H_k with d^k/dv^k exp(alpha v^2 + beta v) = H_k exp(...), at v.
std::vector<cplx> hermite_factors(cplx alpha, cplx beta, cplx v, int order) {
  std::vector<cplx> h(static_cast<std::size_t>(order) + 1);
  h[0] = 1.0;
  const cplx lin = 2.0 * alpha * v + beta;
  if (order >= 1) h[1] = lin;
  for (int k = 1; k < order; ++k) {
    h[static_cast<std::size_t>(k) + 1] =
        lin * h[static_cast<std::size_t>(k)] + 2.0 * alpha * static_cast<double>(k) * h[static_cast<std::size_t>(k) - 1];
  }
  return h;
}

cplx gauss_value(const SlotCoefficients& c, cplx z) {
  const cplx zb = std::conj(z);
  return std::exp(c.log_prefactor + c.a * z * z + c.b * zb * zb + c.c * z * zb + c.d * z + c.e * zb);
}

}  // namespace

std::vector<cplx> star_series_terms(const SeriesSymbol& f, const SeriesSymbol& g, cplx z, int order) {
  if (order < 0) throw InvalidArgument("star_series_terms: order must be non-negative");
  const cplx zb = std::conj(z);
  // f as a function of zbar, g as a function of z.
  const auto hf = hermite_factors(f.gauss.b, f.gauss.c * z + f.gauss.e, zb, order);
  const auto hg = hermite_factors(g.gauss.a, g.gauss.c * zb + g.gauss.d, z, order);
  const cplx base = gauss_value(f.gauss, z) * gauss_value(g.gauss, z);

  std::vector<cplx> fpoly(static_cast<std::size_t>(order) + 1), gpoly(static_cast<std::size_t>(order) + 1);
  {
    Polynomial2 pf = f.poly, pg = g.poly;
    for (int k = 0; k <= order; ++k) {
      fpoly[static_cast<std::size_t>(k)] = pf.evaluate(z);
      gpoly[static_cast<std::size_t>(k)] = pg.evaluate(z);
      pf = pf.d_zbar();
      pg = pg.d_z();
    }
  }

  std::vector<cplx> terms(static_cast<std::size_t>(order) + 1);
  std::vector<double> binom(static_cast<std::size_t>(order) + 1);
  double factorial = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) factorial *= k;
    binom[0] = 1.0;
    for (int j = 1; j <= k; ++j) binom[static_cast<std::size_t>(j)] = binom[static_cast<std::size_t>(j) - 1] * (k - j + 1) / j;
    cplx df = 0.0, dg = 0.0;
    for (int j = 0; j <= k; ++j) {
      const auto uj = static_cast<std::size_t>(j), ukj = static_cast<std::size_t>(k - j);
      df += binom[uj] * fpoly[uj] * hf[ukj];
      dg += binom[uj] * gpoly[uj] * hg[ukj];
    }
    terms[static_cast<std::size_t>(k)] = base * df * dg / factorial;
  }
  return terms;
}

cplx star_series_oracle(const SeriesSymbol& f, const SeriesSymbol& g, cplx z, int order) {
  cplx s = 0.0;
  for (const auto& t : star_series_terms(f, g, z, order)) s += t;
  return s;
}

cplx star_series_oracle(const GaussianSymbol& f, const GaussianSymbol& g, std::span<const cplx> point, int order,
                        std::size_t slot) {
  require_slots(f, g, slot, "star_series_oracle");
  SeriesSymbol sf, sg;
  sf.gauss = f.slot_view(slot, point);
  sg.gauss = g.slot_view(slot, point);
  return star_series_oracle(sf, sg, point[slot], order);
}

}  // namespace ncpath
