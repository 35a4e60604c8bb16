#pragma once

#include "ncpath/simd/dispatch.hpp"

namespace ncpath::simd {

#define NCPATH_DECLARE_KERNELS(ns)                                                                   \
  namespace ns {                                                                                     \
  void zgemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c);    \
  void zgemv(std::size_t rows, std::size_t cols, const cplx* a, const cplx* x, cplx* y);             \
  cplx zdotc(std::size_t n, const cplx* x, const cplx* y);                                           \
  void zaxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);                                     \
  cplx wsum(std::size_t n, const double* w, const cplx* f);                                          \
  }

NCPATH_DECLARE_KERNELS(scalar)
#if defined(NCPATH_BUILD_AVX2)
NCPATH_DECLARE_KERNELS(avx2)
#endif
#if defined(NCPATH_BUILD_NEON)
NCPATH_DECLARE_KERNELS(neon)
#endif

#undef NCPATH_DECLARE_KERNELS

}  // namespace ncpath::simd
