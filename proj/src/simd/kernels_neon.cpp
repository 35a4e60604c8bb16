#include "kernels.hpp"

#include <arm_neon.h>

// One complex double per float64x2_t: [re, im].

namespace ncpath::simd::neon {

namespace {

inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

// x * y
inline float64x2_t cmul(float64x2_t x, float64x2_t y) {
  const float64x2_t xre = vdupq_laneq_f64(x, 0);
  const float64x2_t xim = vdupq_laneq_f64(x, 1);
  const float64x2_t yswap = vextq_f64(y, y, 1);
  const float64x2_t sign = {-1.0, 1.0};
  return vfmaq_f64(vmulq_f64(xre, y), vmulq_f64(xim, sign), yswap);
}

// conj(x) * y
inline float64x2_t cmulc(float64x2_t x, float64x2_t y) {
  const float64x2_t xre = vdupq_laneq_f64(x, 0);
  const float64x2_t xim = vdupq_laneq_f64(x, 1);
  const float64x2_t yswap = vextq_f64(y, y, 1);
  const float64x2_t sign = {1.0, -1.0};
  return vfmaq_f64(vmulq_f64(xre, y), vmulq_f64(xim, sign), yswap);
}

inline cplx to_cplx(float64x2_t v) { return {vgetq_lane_f64(v, 0), vgetq_lane_f64(v, 1)}; }

}  // namespace

void zgemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c) {
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = 0.0;
    for (std::size_t l = 0; l < k; ++l) {
      const float64x2_t av = vld1q_f64(dp(a + i * k + l));
      const cplx* brow = b + l * n;
      for (std::size_t j = 0; j < n; ++j) {
        const float64x2_t cv = vld1q_f64(dp(crow + j));
        vst1q_f64(dp(crow + j), vaddq_f64(cv, cmul(av, vld1q_f64(dp(brow + j)))));
      }
    }
  }
}

void zgemv(std::size_t rows, std::size_t cols, const cplx* a, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t j = 0; j < cols; ++j) {
      acc = vaddq_f64(acc, cmul(vld1q_f64(dp(a + i * cols + j)), vld1q_f64(dp(x + j))));
    }
    y[i] = to_cplx(acc);
  }
}

cplx zdotc(std::size_t n, const cplx* x, const cplx* y) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) acc = vaddq_f64(acc, cmulc(vld1q_f64(dp(x + i)), vld1q_f64(dp(y + i))));
  return to_cplx(acc);
}

void zaxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const float64x2_t av = vld1q_f64(dp(&alpha));
  for (std::size_t i = 0; i < n; ++i) {
    vst1q_f64(dp(y + i), vaddq_f64(vld1q_f64(dp(y + i)), cmul(av, vld1q_f64(dp(x + i)))));
  }
}

cplx wsum(std::size_t n, const double* w, const cplx* f) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) acc = vfmaq_n_f64(acc, vld1q_f64(dp(f + i)), w[i]);
  return to_cplx(acc);
}

}  // namespace ncpath::simd::neon
