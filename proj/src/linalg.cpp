#include "ncpath/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ncpath/errors.hpp"
#include "ncpath/simd/dispatch.hpp"

namespace ncpath {

namespace {

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(op) + ": shape " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw DimensionMismatch("CMatrix: data size does not match shape");
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  require_same_shape(*this, o, "operator+");
  simd::zaxpy(data_.size(), 1.0, o.data_.data(), data_.data());
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  require_same_shape(*this, o, "operator-");
  simd::zaxpy(data_.size(), -1.0, o.data_.data(), data_.data());
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("operator*: inner dimensions " + std::to_string(a.cols()) + " vs " +
                            std::to_string(b.rows()));
  }
  CMatrix c(a.rows(), b.cols());
  simd::zgemm(a.rows(), b.cols(), a.cols(), a.data().data(), b.data().data(), c.data().data());
  return c;
}

CMatrix adjoint(const CMatrix& a) {
  CMatrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
  return r;
}

CMatrix transpose(const CMatrix& a) {
  CMatrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

std::vector<cplx> matvec(const CMatrix& a, std::span<const cplx> x) {
  if (x.size() != a.cols()) throw DimensionMismatch("matvec: vector length does not match columns");
  std::vector<cplx> y(a.rows());
  simd::zgemv(a.rows(), a.cols(), a.data().data(), x.data(), y.data());
  return y;
}

double frobenius_norm(const CMatrix& a) {
  return std::sqrt(std::real(simd::zdotc(a.size(), a.data().data(), a.data().data())));
}

double norm_1(const CMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

double max_abs(const CMatrix& a) {
  double best = 0.0;
  for (const auto& v : a.data()) best = std::max(best, std::abs(v));
  return best;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a.data()[i] - b.data()[i]));
  return best;
}

CMatrix solve(const CMatrix& a, const CMatrix& b) {
  if (!a.square() || a.rows() != b.rows()) throw DimensionMismatch("solve: incompatible shapes");
  const std::size_t n = a.rows();
  CMatrix lu = a;
  CMatrix x = b;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        piv = i;
      }
    }
    if (best == 0.0) throw Error("solve: singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(piv, j));
    }
    const cplx inv = 1.0 / lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = lu(i, k) * inv;
      if (f == 0.0) continue;
      lu(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    const cplx inv = 1.0 / lu(kk, kk);
    for (std::size_t j = 0; j < x.cols(); ++j) {
      cplx s = x(kk, j);
      for (std::size_t l = kk + 1; l < n; ++l) s -= lu(kk, l) * x(l, j);
      x(kk, j) = s * inv;
    }
  }
  return x;
}

namespace {

constexpr std::array<double, 5> kPadeTheta{1.495585217958292e-2, 2.539398330063230e-1, 9.504178996162932e-1,
                                           2.097847961257068e0, 5.371920351148152e0};

// U, V for the low-degree approximants (m = 3, 5, 7, 9).
void pade_low(const CMatrix& a, int m, CMatrix& u, CMatrix& v) {
  static const double b3[] = {120., 60., 12., 1.};
  static const double b5[] = {30240., 15120., 3360., 420., 30., 1.};
  static const double b7[] = {17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.};
  static const double b9[] = {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                              2162160.,     110880.,     3960.,       90.,         1.};
  const double* b = m == 3 ? b3 : m == 5 ? b5 : m == 7 ? b7 : b9;
  const std::size_t n = a.rows();
  const CMatrix a2 = a * a;
  CMatrix power = CMatrix::identity(n);
  CMatrix uo = CMatrix::identity(n) * b[1];
  v = CMatrix::identity(n) * b[0];
  for (int j = 1; 2 * j <= m; ++j) {
    power = power * a2;
    v += power * b[2 * j];
    uo += power * b[2 * j + 1];
  }
  u = a * uo;
}

void pade13(const CMatrix& a, CMatrix& u, CMatrix& v) {
  static const double b[] = {64764752532480000., 32382376266240000., 7771770303897600., 1187353796428800.,
                             129060195264000.,   10559470521600.,    670442572800.,    33522128640.,
                             1323241920.,        40840800.,          960960.,          16380.,
                             182.,               1.};
  const std::size_t n = a.rows();
  const CMatrix id = CMatrix::identity(n);
  const CMatrix a2 = a * a;
  const CMatrix a4 = a2 * a2;
  const CMatrix a6 = a4 * a2;
  const CMatrix inner_u = a6 * b[13] + a4 * b[11] + a2 * b[9];
  u = a * (a6 * inner_u + a6 * b[7] + a4 * b[5] + a2 * b[3] + id * b[1]);
  const CMatrix inner_v = a6 * b[12] + a4 * b[10] + a2 * b[8];
  v = a6 * inner_v + a6 * b[6] + a4 * b[4] + a2 * b[2] + id * b[0];
}

}  // namespace

CMatrix expm(const CMatrix& a) {
  if (!a.square()) throw DimensionMismatch("expm: matrix must be square");
  const std::size_t n = a.rows();
  if (n == 0) return a;
  const double norm = norm_1(a);
  if (!std::isfinite(norm)) throw InvalidArgument("expm: non-finite entries");

  CMatrix u, v;
  static constexpr int kDegrees[] = {3, 5, 7, 9};
  for (int i = 0; i < 4; ++i) {
    if (norm <= kPadeTheta[static_cast<std::size_t>(i)]) {
      pade_low(a, kDegrees[i], u, v);
      return solve(v - u, v + u);
    }
  }
  int s = 0;
  if (norm > kPadeTheta[4]) s = static_cast<int>(std::ceil(std::log2(norm / kPadeTheta[4])));
  const CMatrix scaled = a * std::ldexp(1.0, -s);
  pade13(scaled, u, v);
  CMatrix r = solve(v - u, v + u);
  for (int k = 0; k < s; ++k) r = r * r;
  return r;
}

}  // namespace ncpath
