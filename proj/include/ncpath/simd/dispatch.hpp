#pragma once

// Runtime-dispatched complex kernels used by the dense linear algebra.
//
// Every kernel has a portable scalar reference implementation. Vector
// variants (AVX2+FMA on x86-64, NEON on aarch64) are compiled in their own
// translation units and selected once at startup from CPU feature bits.
// All matrices are row-major and all complex data is interleaved (re, im).

#include <complex>
#include <cstddef>
#include <string_view>

namespace ncpath::simd {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b);

/// True if the backend was compiled in and the CPU supports it.
bool backend_supported(Backend b);

/// Backend used by the free functions below.
Backend active_backend();

/// Overrides the detected backend. Throws std::invalid_argument when the
/// backend is unsupported. Intended for tests and benchmarks; not thread-safe
/// with respect to concurrent kernel calls.
void force_backend(Backend b);

/// Restores the backend picked by CPU detection.
void reset_backend();

struct KernelTable {
  // C (m x n) = A (m x k) * B (k x n)
  void (*zgemm)(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c);
  // y (rows) = A (rows x cols) * x
  void (*zgemv)(std::size_t rows, std::size_t cols, const cplx* a, const cplx* x, cplx* y);
  // sum conj(x_i) * y_i
  cplx (*zdotc)(std::size_t n, const cplx* x, const cplx* y);
  // y += alpha * x
  void (*zaxpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
  // sum w_i * f_i with real weights
  cplx (*wsum)(std::size_t n, const double* w, const cplx* f);
};

const KernelTable& kernels(Backend b);

inline void zgemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c) {
  kernels(active_backend()).zgemm(m, n, k, a, b, c);
}
inline void zgemv(std::size_t rows, std::size_t cols, const cplx* a, const cplx* x, cplx* y) {
  kernels(active_backend()).zgemv(rows, cols, a, x, y);
}
inline cplx zdotc(std::size_t n, const cplx* x, const cplx* y) {
  return kernels(active_backend()).zdotc(n, x, y);
}
inline void zaxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  kernels(active_backend()).zaxpy(n, alpha, x, y);
}
inline cplx wsum(std::size_t n, const double* w, const cplx* f) {
  return kernels(active_backend()).wsum(n, w, f);
}

}  // namespace ncpath::simd
