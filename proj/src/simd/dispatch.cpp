#include "ncpath/simd/dispatch.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

#include "kernels.hpp"

namespace ncpath::simd {

namespace {

constexpr KernelTable kScalar{scalar::zgemm, scalar::zgemv, scalar::zdotc, scalar::zaxpy, scalar::wsum};
#if defined(NCPATH_BUILD_AVX2)
constexpr KernelTable kAvx2{avx2::zgemm, avx2::zgemv, avx2::zdotc, avx2::zaxpy, avx2::wsum};
#endif
#if defined(NCPATH_BUILD_NEON)
constexpr KernelTable kNeon{neon::zgemm, neon::zgemv, neon::zdotc, neon::zaxpy, neon::wsum};
#endif

Backend detect() {
#if defined(NCPATH_BUILD_AVX2)
  if (backend_supported(Backend::Avx2)) return Backend::Avx2;
#endif
#if defined(NCPATH_BUILD_NEON)
  return Backend::Neon;
#endif
  return Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

bool backend_supported(Backend b) {
  switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if defined(NCPATH_BUILD_AVX2)
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(NCPATH_BUILD_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void force_backend(Backend b) {
  if (!backend_supported(b)) {
    throw std::invalid_argument("SIMD backend not available: " + std::string(backend_name(b)));
  }
  current().store(b, std::memory_order_relaxed);
}

void reset_backend() { current().store(detect(), std::memory_order_relaxed); }

const KernelTable& kernels(Backend b) {
  switch (b) {
#if defined(NCPATH_BUILD_AVX2)
    case Backend::Avx2: return kAvx2;
#endif
#if defined(NCPATH_BUILD_NEON)
    case Backend::Neon: return kNeon;
#endif
    default: return kScalar;
  }
}

}  // namespace ncpath::simd
