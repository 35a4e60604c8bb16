#include <doctest.h>

#include "ncpath/errors.hpp"
#include "ncpath/linalg.hpp"
#include "support.hpp"

using namespace ncpath;
using testing::cplx;

namespace {

// Truncated Taylor series, only for small norms.
CMatrix taylor_exp(const CMatrix& a, int terms) {
  CMatrix sum = CMatrix::identity(a.rows()), term = CMatrix::identity(a.rows());
  for (int k = 1; k < terms; ++k) {
    term = testing::naive_product(term, a) * cplx(1.0 / k);
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("product, adjoint, transpose") {
    testing::Gen g(10);
    const CMatrix a = g.matrix(4, 6), b = g.matrix(6, 3);
    CHECK(max_abs_diff(a * b, testing::naive_product(a, b)) < 1e-13);
    CHECK(max_abs_diff(adjoint(a * b), adjoint(b) * adjoint(a)) < 1e-13);
    CHECK(transpose(a)(5, 2) == a(2, 5));
    CHECK(adjoint(a)(5, 2) == std::conj(a(2, 5)));
    CHECK_THROWS_AS(a * a, DimensionMismatch);
  }

  TEST_CASE("kron mixed product") {
    testing::Gen g(11);
    const CMatrix a = g.matrix(2, 3), b = g.matrix(3, 2), c = g.matrix(3, 2), d = g.matrix(2, 3);
    CHECK(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-12);
  }

  TEST_CASE("solve") {
    testing::Gen g(12);
    const CMatrix a = g.matrix(9, 9), x = g.matrix(9, 2);
    CHECK(max_abs_diff(solve(a, a * x), x) < 1e-10);
    CHECK_THROWS(solve(CMatrix(3, 3), CMatrix::identity(3)));
  }

  TEST_CASE("expm closed forms") {
    CMatrix n(2, 2);
    n(0, 1) = 1.0;
    const CMatrix en = expm(n);
    CHECK(std::abs(en(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(en(0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(en(1, 0)) < 1e-15);

    // rotation generator times a large angle exercises scaling and squaring
    const double t = 37.3;
    CMatrix r(2, 2);
    r(0, 1) = -t;
    r(1, 0) = t;
    const CMatrix er = expm(r);
    CHECK(std::abs(er(0, 0) - std::cos(t)) < 1e-12);
    CHECK(std::abs(er(1, 0) - std::sin(t)) < 1e-12);

    CMatrix diag(3, 3);
    diag(0, 0) = cplx(0.5, 2.0);
    diag(1, 1) = -3.0;
    diag(2, 2) = cplx(0.0, -7.0);
    const CMatrix ed = expm(diag);
    for (int i = 0; i < 3; ++i) CHECK(testing::rel(ed(i, i), std::exp(diag(i, i))) < 1e-14);
  }

  TEST_CASE("expm matches Taylor at small norm for every Pade degree") {
    testing::Gen g(13);
    for (double s : {1e-3, 0.05, 0.3, 1.0, 2.0}) {
      CMatrix a = g.matrix(6, 6);
      a *= cplx(s / norm_1(a));
      CHECK(max_abs_diff(expm(a), taylor_exp(a, 40)) < 1e-13);
    }
  }

  TEST_CASE("expm of anti-Hermitian matrices is unitary and inverts") {
    testing::Gen g(14);
    for (int trial = 0; trial < 5; ++trial) {
      const CMatrix m = g.matrix(12, 12);
      CMatrix h = m + adjoint(m);
      h *= cplx(0.0, g.uniform(0.1, 20.0));
      const CMatrix u = expm(h);
      CHECK(max_abs_diff(adjoint(u) * u, CMatrix::identity(12)) < 1e-11);
      CHECK(max_abs_diff(u * expm(h * cplx(-1.0)), CMatrix::identity(12)) < 1e-11);
    }
  }
}
