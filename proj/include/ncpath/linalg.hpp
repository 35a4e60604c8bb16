#pragma once

// Dense row-major complex matrices. Products and reductions go through the
// dispatched SIMD kernels.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ncpath {

using cplx = std::complex<double>;

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);

  static CMatrix identity(std::size_t n);
  static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix adjoint(const CMatrix& a);
CMatrix transpose(const CMatrix& a);
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// A B - B A
CMatrix commutator(const CMatrix& a, const CMatrix& b);

std::vector<cplx> matvec(const CMatrix& a, std::span<const cplx> x);

double frobenius_norm(const CMatrix& a);
/// Maximum absolute column sum.
double norm_1(const CMatrix& a);
double max_abs(const CMatrix& a);
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// Solves A X = B by LU with partial pivoting. Throws on a singular pivot.
CMatrix solve(const CMatrix& a, const CMatrix& b);

/// Matrix exponential, scaling and squaring with the degree-13 Padé
/// approximant (Higham 2005 thresholds).
CMatrix expm(const CMatrix& a);

}  // namespace ncpath
