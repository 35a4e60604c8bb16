#include "kernels.hpp"

#include <immintrin.h>

// Two interleaved complex doubles per __m256d: [re0, im0, re1, im1].

namespace ncpath::simd::avx2 {

namespace {

// (a_re + i a_im) * v for each complex lane of v
inline __m256d cmul_bcast(__m256d are, __m256d aim, __m256d v) {
  const __m256d vswap = _mm256_permute_pd(v, 0b0101);
  return _mm256_fmaddsub_pd(are, v, _mm256_mul_pd(aim, vswap));
}

// lane-wise complex product x * y
inline __m256d cmul(__m256d x, __m256d y) {
  const __m256d xre = _mm256_movedup_pd(x);
  const __m256d xim = _mm256_permute_pd(x, 0b1111);
  return cmul_bcast(xre, xim, y);
}

// lane-wise conj(x) * y
inline __m256d cmulc(__m256d x, __m256d y) {
  const __m256d xre = _mm256_movedup_pd(x);
  const __m256d xim = _mm256_permute_pd(x, 0b1111);
  const __m256d yswap = _mm256_permute_pd(y, 0b0101);
  // re: xre*yre + xim*yim, im: xre*yim - xim*yre
  return _mm256_fmsubadd_pd(xre, y, _mm256_mul_pd(xim, yswap));
}

inline cplx hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  alignas(16) double out[2];
  _mm_store_pd(out, s);
  return {out[0], out[1]};
}

inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

}  // namespace

void zgemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c) {
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = 0.0;
    for (std::size_t l = 0; l < k; ++l) {
      const cplx ail = a[i * k + l];
      if (ail.real() == 0.0 && ail.imag() == 0.0) continue;
      const __m256d are = _mm256_set1_pd(ail.real());
      const __m256d aim = _mm256_set1_pd(ail.imag());
      const cplx* brow = b + l * n;
      std::size_t j = 0;
      for (; j < n2; j += 2) {
        const __m256d bv = _mm256_loadu_pd(dp(brow + j));
        const __m256d cv = _mm256_loadu_pd(dp(crow + j));
        _mm256_storeu_pd(dp(crow + j), _mm256_add_pd(cv, cmul_bcast(are, aim, bv)));
      }
      for (; j < n; ++j) {
        const cplx bj = brow[j];
        crow[j] += cplx(ail.real() * bj.real() - ail.imag() * bj.imag(),
                        ail.real() * bj.imag() + ail.imag() * bj.real());
      }
    }
  }
}

void zgemv(std::size_t rows, std::size_t cols, const cplx* a, const cplx* x, cplx* y) {
  const std::size_t c2 = cols & ~std::size_t{1};
  for (std::size_t i = 0; i < rows; ++i) {
    const cplx* arow = a + i * cols;
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j < c2; j += 2) {
      acc = _mm256_add_pd(acc, cmul(_mm256_loadu_pd(dp(arow + j)), _mm256_loadu_pd(dp(x + j))));
    }
    cplx s = hsum(acc);
    for (; j < cols; ++j) {
      const cplx p = arow[j], q = x[j];
      s += cplx(p.real() * q.real() - p.imag() * q.imag(), p.real() * q.imag() + p.imag() * q.real());
    }
    y[i] = s;
  }
}

cplx zdotc(std::size_t n, const cplx* x, const cplx* y) {
  const std::size_t n2 = n & ~std::size_t{1};
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i < n2; i += 2) {
    acc = _mm256_add_pd(acc, cmulc(_mm256_loadu_pd(dp(x + i)), _mm256_loadu_pd(dp(y + i))));
  }
  cplx s = hsum(acc);
  for (; i < n; ++i) {
    const cplx p = x[i], q = y[i];
    s += cplx(p.real() * q.real() + p.imag() * q.imag(), p.real() * q.imag() - p.imag() * q.real());
  }
  return s;
}

void zaxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const std::size_t n2 = n & ~std::size_t{1};
  const __m256d are = _mm256_set1_pd(alpha.real());
  const __m256d aim = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i < n2; i += 2) {
    const __m256d yv = _mm256_loadu_pd(dp(y + i));
    _mm256_storeu_pd(dp(y + i), _mm256_add_pd(yv, cmul_bcast(are, aim, _mm256_loadu_pd(dp(x + i)))));
  }
  for (; i < n; ++i) {
    const cplx q = x[i];
    y[i] += cplx(alpha.real() * q.real() - alpha.imag() * q.imag(),
                 alpha.real() * q.imag() + alpha.imag() * q.real());
  }
}

cplx wsum(std::size_t n, const double* w, const cplx* f) {
  const std::size_t n2 = n & ~std::size_t{1};
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i < n2; i += 2) {
    // [w0, w0, w1, w1]
    const __m128d w01 = _mm_loadu_pd(w + i);
    const __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(w01), 0b01010000);
    acc = _mm256_fmadd_pd(ww, _mm256_loadu_pd(dp(f + i)), acc);
  }
  cplx s = hsum(acc);
  for (; i < n; ++i) s += w[i] * f[i];
  return s;
}

}  // namespace ncpath::simd::avx2
