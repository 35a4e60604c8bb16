#include "ncpath/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ncpath/errors.hpp"

namespace ncpath {

// ---- FockOperator ----------------------------------------------------------

namespace {

void require_same_dim(const FockOperator& a, const FockOperator& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(op) + ": Fock dimensions " + std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
  }
}

}  // namespace

FockOperator::FockOperator(CMatrix m) : m_(std::move(m)) {
  if (!m_.square()) throw DimensionMismatch("FockOperator: matrix must be square");
}

FockOperator& FockOperator::operator+=(const FockOperator& o) {
  require_same_dim(*this, o, "FockOperator::operator+");
  m_ += o.m_;
  return *this;
}

FockOperator& FockOperator::operator-=(const FockOperator& o) {
  require_same_dim(*this, o, "FockOperator::operator-");
  m_ -= o.m_;
  return *this;
}

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
  require_same_dim(a, b, "FockOperator::operator*");
  return FockOperator(a.m_ * b.m_);
}

FockOperator commutator(const FockOperator& a, const FockOperator& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

double block_max_abs_diff(const FockOperator& a, const FockOperator& b, std::size_t block) {
  require_same_dim(a, b, "block_max_abs_diff");
  block = std::min(block, a.dim());
  double best = 0.0;
  for (std::size_t i = 0; i < block; ++i)
    for (std::size_t j = 0; j < block; ++j) best = std::max(best, std::abs(a(i, j) - b(i, j)));
  return best;
}

double block_max_abs(const FockOperator& a, std::size_t block) {
  block = std::min(block, a.dim());
  double best = 0.0;
  for (std::size_t i = 0; i < block; ++i)
    for (std::size_t j = 0; j < block; ++j) best = std::max(best, std::abs(a(i, j)));
  return best;
}

// ---- parameters and spaces -------------------------------------------------

PhysicalParams PhysicalParams::make(double mass, double theta) {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidArgument("mass must be positive and finite");
  if (!(theta > 0.0) || !std::isfinite(theta)) throw InvalidArgument("theta must be positive and finite");
  return PhysicalParams(mass, theta);
}

PhysicalParams PhysicalParams::commutative(double mass) {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidArgument("mass must be positive and finite");
  return PhysicalParams(mass, 0.0);
}

void require_noncommutative(const PhysicalParams& params, const char* op) {
  if (params.is_commutative()) throw InvalidArgument(std::string(op) + ": requires theta > 0");
}

FockSpace::FockSpace(std::size_t dim, double tail_tolerance) : dim_(dim), tail_tolerance_(tail_tolerance) {
  if (dim < 2) throw InvalidArgument("FockSpace: dimension must be at least 2, got " + std::to_string(dim));
  if (!(tail_tolerance > 0.0)) throw InvalidArgument("FockSpace: tail tolerance must be positive");
}

FockSpace FockSpace::for_coherent_radius(double max_abs_z, double tail_tolerance) {
  const double r2 = max_abs_z * max_abs_z;
  const auto dim = static_cast<std::size_t>(std::ceil(r2 + 10.0 * std::sqrt(r2 + 1.0) + 20.0));
  return FockSpace(dim, tail_tolerance);
}

double FockVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return s;
}

double coherent_tail(cplx z, std::size_t dim) {
  const double x = std::norm(z);
  if (x == 0.0) return 0.0;
  // Poisson(x) mass at n = dim, then walk upward until terms stop mattering.
  const auto d = static_cast<double>(dim);
  double log_term = -x + d * std::log(x) - std::lgamma(d + 1.0);
  double sum = 0.0;
  for (std::size_t n = dim; n < dim + 100000; ++n) {
    const double term = std::exp(log_term);
    sum += term;
    const double next_ratio = x / static_cast<double>(n + 1);
    if (next_ratio < 1.0 && term < 1e-18 * sum) break;
    if (term == 0.0 && next_ratio < 1.0) break;
    log_term += std::log(next_ratio);
  }
  return std::min(1.0, sum);
}

std::size_t required_dim(cplx z, double tail_tolerance) {
  std::size_t d = 2;
  while (coherent_tail(z, d) > tail_tolerance) ++d;
  return d;
}

LadderOperators ladder_operators(const FockSpace& space) {
  const std::size_t d = space.dim();
  FockOperator lower(d);
  for (std::size_t n = 1; n < d; ++n) lower(n - 1, n) = std::sqrt(static_cast<double>(n));
  return {lower, lower.dagger()};
}

FockVector coherent_vector(const FockSpace& space, cplx z) {
  const double tail = coherent_tail(z, space.dim());
  if (tail > space.tail_tolerance()) {
    const std::size_t need = required_dim(z, space.tail_tolerance());
    throw TruncationError("coherent_vector: tail " + std::to_string(tail) + " exceeds tolerance at D=" +
                              std::to_string(space.dim()) + "; need D >= " + std::to_string(need),
                          need);
  }
  FockVector v;
  v.amplitudes.resize(space.dim());
  cplx a = std::exp(-0.5 * std::norm(z));
  v.amplitudes[0] = a;
  for (std::size_t n = 1; n < space.dim(); ++n) {
    a *= z / std::sqrt(static_cast<double>(n));
    v.amplitudes[n] = a;
  }
  return v;
}

cplx coherent_overlap(cplx z, cplx w) { return std::exp(-0.5 * (std::norm(z) + std::norm(w)) + std::conj(z) * w); }

cplx fock_inner(const FockVector& a, const FockVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("fock_inner: vector dimensions differ");
  cplx s = 0.0;
  for (std::size_t n = 0; n < a.dim(); ++n) s += std::conj(a.amplitudes[n]) * b.amplitudes[n];
  return s;
}

}  // namespace ncpath
