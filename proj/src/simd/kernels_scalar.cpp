#include "kernels.hpp"

namespace ncpath::simd::scalar {

namespace {
// Plain product; std::complex operator* routes through the Annex G
// inf/nan recovery path, which the kernels never need.
inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}
}  // namespace

void zgemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const cplx ail = a[i * k + l];
      if (ail == 0.0) continue;
      const cplx* brow = b + l * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += mul(ail, brow[j]);
    }
  }
}

void zgemv(std::size_t rows, std::size_t cols, const cplx* a, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    cplx acc = 0.0;
    const cplx* arow = a + i * cols;
    for (std::size_t j = 0; j < cols; ++j) acc += mul(arow[j], x[j]);
    y[i] = acc;
  }
}

cplx zdotc(std::size_t n, const cplx* x, const cplx* y) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += mul(std::conj(x[i]), y[i]);
  return acc;
}

void zaxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += mul(alpha, x[i]);
}

cplx wsum(std::size_t n, const double* w, const cplx* f) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * f[i];
  return acc;
}

}  // namespace ncpath::simd::scalar
