#pragma once

#include <complex>
#include <cstddef>

#include "ncpath/linalg.hpp"

namespace ncpath {

/// Hilbert-Schmidt operator on a D-dimensional truncated Fock space.
class FockOperator {
 public:
  FockOperator() = default;
  explicit FockOperator(std::size_t dim) : m_(dim, dim) {}
  explicit FockOperator(CMatrix m);

  static FockOperator identity(std::size_t dim) { return FockOperator(CMatrix::identity(dim)); }

  std::size_t dim() const noexcept { return m_.rows(); }
  const CMatrix& matrix() const noexcept { return m_; }
  CMatrix& matrix() noexcept { return m_; }

  cplx& operator()(std::size_t i, std::size_t j) { return m_(i, j); }
  const cplx& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  /// Hermitian conjugate on configuration space.
  FockOperator dagger() const { return FockOperator(adjoint(m_)); }

  FockOperator& operator+=(const FockOperator& o);
  FockOperator& operator-=(const FockOperator& o);
  FockOperator& operator*=(cplx s) {
    m_ *= s;
    return *this;
  }

  friend FockOperator operator+(FockOperator a, const FockOperator& b) { return a += b; }
  friend FockOperator operator-(FockOperator a, const FockOperator& b) { return a -= b; }
  friend FockOperator operator*(FockOperator a, cplx s) { return a *= s; }
  friend FockOperator operator*(cplx s, FockOperator a) { return a *= s; }
  friend FockOperator operator*(const FockOperator& a, const FockOperator& b);

 private:
  CMatrix m_;
};

/// A B - B A, dimension-checked.
FockOperator commutator(const FockOperator& a, const FockOperator& b);

/// Largest |A_ij - B_ij| over i, j < block.
double block_max_abs_diff(const FockOperator& a, const FockOperator& b, std::size_t block);
double block_max_abs(const FockOperator& a, std::size_t block);

}  // namespace ncpath
