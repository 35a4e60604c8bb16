#include <doctest.h>

#include "ncpath/simd/dispatch.hpp"
#include "support.hpp"

using namespace ncpath;
using testing::cplx;

namespace {

const simd::Backend kVector[] = {simd::Backend::Avx2, simd::Backend::Neon};

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("scalar zgemm matches a triple loop") {
    testing::Gen g(1);
    const auto& k = simd::kernels(simd::Backend::Scalar);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t m = g.index(1, 9), n = g.index(1, 9), kk = g.index(1, 9);
      const CMatrix a = g.matrix(m, kk), b = g.matrix(kk, n);
      CMatrix c(m, n);
      k.zgemm(m, n, kk, a.data().data(), b.data().data(), c.data().data());
      CHECK(max_abs_diff(c, testing::naive_product(a, b)) < 1e-13);
    }
  }

  TEST_CASE("vector backends agree with scalar on odd sizes") {
    const auto& ref = simd::kernels(simd::Backend::Scalar);
    for (auto backend : kVector) {
      if (!simd::backend_supported(backend)) continue;
      CAPTURE(simd::backend_name(backend));
      const auto& vk = simd::kernels(backend);
      testing::Gen g(2);
      for (std::size_t n = 1; n <= 19; ++n) {
        const std::size_t m = g.index(1, 11), k = g.index(1, 11);
        const CMatrix a = g.matrix(m, k), b = g.matrix(k, n);
        std::vector<cplx> c1(m * n), c2(m * n);
        ref.zgemm(m, n, k, a.data().data(), b.data().data(), c1.data());
        vk.zgemm(m, n, k, a.data().data(), b.data().data(), c2.data());
        CHECK(max_diff(c1, c2) < 1e-12);

        const auto x = g.vec(k);
        std::vector<cplx> y1(m), y2(m);
        ref.zgemv(m, k, a.data().data(), x.data(), y1.data());
        vk.zgemv(m, k, a.data().data(), x.data(), y2.data());
        CHECK(max_diff(y1, y2) < 1e-12);

        const auto u = g.vec(n), v = g.vec(n);
        CHECK(std::abs(ref.zdotc(n, u.data(), v.data()) - vk.zdotc(n, u.data(), v.data())) < 1e-12);

        std::vector<cplx> w1 = v, w2 = v;
        const cplx alpha = g.normal_c();
        ref.zaxpy(n, alpha, u.data(), w1.data());
        vk.zaxpy(n, alpha, u.data(), w2.data());
        CHECK(max_diff(w1, w2) < 1e-13);

        std::vector<double> wt(n);
        for (auto& w : wt) w = g.uniform(0.0, 1.0);
        CHECK(std::abs(ref.wsum(n, wt.data(), u.data()) - vk.wsum(n, wt.data(), u.data())) < 1e-12);
      }
    }
  }

  TEST_CASE("zdotc conjugates the first argument") {
    const std::vector<cplx> x{{0.0, 1.0}}, y{{0.0, 1.0}};
    for (auto backend : {simd::Backend::Scalar, simd::Backend::Avx2, simd::Backend::Neon}) {
      if (!simd::backend_supported(backend)) continue;
      CHECK(simd::kernels(backend).zdotc(1, x.data(), y.data()) == cplx(1.0, 0.0));
    }
  }

  TEST_CASE("force and reset backend") {
    simd::force_backend(simd::Backend::Scalar);
    CHECK(simd::active_backend() == simd::Backend::Scalar);
    testing::Gen g(3);
    const CMatrix a = g.matrix(7, 7), b = g.matrix(7, 7);
    const CMatrix scalar_product = a * b;
    simd::reset_backend();
    CHECK(max_abs_diff(scalar_product, a * b) < 1e-12);
    for (auto backend : {simd::Backend::Avx2, simd::Backend::Neon})
      if (!simd::backend_supported(backend)) CHECK_THROWS_AS(simd::force_backend(backend), std::invalid_argument);
    CHECK(simd::backend_supported(simd::Backend::Scalar));
  }
}
