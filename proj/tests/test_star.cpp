#include <doctest.h>

#include <numbers>

#include "ncpath/errors.hpp"
#include "ncpath/propagator.hpp"
#include "ncpath/quadrature.hpp"
#include "ncpath/star.hpp"
#include "support.hpp"

using namespace ncpath;
using testing::cplx;

namespace {

SlotCoefficients random_gauss(testing::Gen& g, double size) {
  SlotCoefficients c;
  c.log_prefactor = g.normal_c() * 0.2;
  c.a = g.normal_c() * size;
  c.b = g.normal_c() * size;
  c.c = g.normal_c() * size;
  c.d = g.normal_c() * size;
  c.e = g.normal_c() * size;
  return c;
}

cplx eval1(const GaussianSymbol& s, cplx z) { return s.evaluate(std::span<const cplx>(&z, 1)); }

}  // namespace

TEST_SUITE("star") {
  TEST_CASE("symbol evaluation") {
    SlotCoefficients c{std::log(cplx(2.0)), 0.1, cplx(0, 0.2), -0.3, 0.4, cplx(0.1, 0.1)};
    const GaussianSymbol s = GaussianSymbol::single(c);
    const cplx z{0.3, -0.6}, zb = std::conj(z);
    const cplx expect = 2.0 * std::exp(c.a * z * z + c.b * zb * zb + c.c * z * zb + c.d * z + c.e * zb);
    CHECK(testing::rel(eval1(s, z), expect) < 1e-14);
    const cplx pts[2] = {{0.1, 0.2}, {-0.5, 0.3}};
    const GaussianSymbol d = GaussianSymbol::difference_gaussian(3.0, 0.7, 2, 0, 1);
    CHECK(testing::rel(d.evaluate(pts), 3.0 * std::exp(-0.7 * std::norm(pts[0] - pts[1]))) < 1e-14);
    CHECK(d.depends_on(0));
    CHECK(!GaussianSymbol::constant(2.0, 2).depends_on(1));
  }

  TEST_CASE("constants and linear symbols") {
    const GaussianSymbol one = GaussianSymbol::constant(1.0);
    CHECK(std::abs(eval1(star(one, one), {0.3, 0.2}) - 1.0) < 1e-15);

    // exp(eps zbar) * exp(eta z) = exp(eps zbar + eta z + eps eta); the mixed
    // eps-eta coefficient is zbar z + 1.
    testing::Gen g(40);
    for (int t = 0; t < 10; ++t) {
      const cplx eps = g.normal_c(), eta = g.normal_c(), z = g.disk(2.0);
      SlotCoefficients f, h;
      f.e = eps;
      h.d = eta;
      const cplx v = eval1(star(GaussianSymbol::single(f), GaussianSymbol::single(h)), z);
      CHECK(testing::rel(v, std::exp(eps * std::conj(z) + eta * z + eps * eta)) < 1e-13);
    }
    SeriesSymbol zbar, zz;
    zbar.poly = Polynomial2::monomial(0, 1);
    zz.poly = Polynomial2::monomial(1, 0);
    CHECK(std::abs(star_series_oracle(zbar, zz, 2.0, 1) - 5.0) < 1e-15);
    CHECK(std::abs(star_series_oracle(zbar, zz, 2.0, 10) - 5.0) < 1e-15);
    CHECK(std::abs(star_series_oracle(zbar, zz, cplx(1, 1), 0) - 2.0) < 1e-15);
  }

  TEST_CASE("star reduces to the pointwise product without derivative pairs") {
    testing::Gen g(41);
    for (int t = 0; t < 10; ++t) {
      SlotCoefficients f = random_gauss(g, 0.3), h = random_gauss(g, 0.3);
      f.b = f.c = f.e = 0.0;  // f independent of zbar
      const cplx z = g.disk(1.0);
      const GaussianSymbol sf = GaussianSymbol::single(f), sh = GaussianSymbol::single(h);
      CHECK(testing::rel(eval1(star(sf, sh), z), eval1(sf, z) * eval1(sh, z)) < 1e-14);
      SlotCoefficients k = random_gauss(g, 0.3);
      k.a = k.c = k.d = 0.0;  // right factor independent of z
      const GaussianSymbol sk = GaussianSymbol::single(k);
      const GaussianSymbol sg = GaussianSymbol::single(random_gauss(g, 0.3));
      CHECK(testing::rel(eval1(star(sg, sk), z), eval1(sg, z) * eval1(sk, z)) < 1e-14);
    }
  }

  TEST_CASE("closed form against the derivative series, property test") {
    // the series converges geometrically in |Q_f(zbar,zbar) Q_g(z,z)| = |4 b_f a_g|
    testing::Gen g(42);
    int tested = 0;
    while (tested < 40) {
      const SlotCoefficients f = random_gauss(g, 0.25), h = random_gauss(g, 0.25);
      if (std::abs(4.0 * f.b * h.a) > 0.3) continue;
      ++tested;
      const cplx z = g.disk(1.0);
      const cplx closed = eval1(star(GaussianSymbol::single(f), GaussianSymbol::single(h)), z);
      SeriesSymbol sf, sh;
      sf.gauss = f;
      sh.gauss = h;
      CHECK(testing::rel(star_series_oracle(sf, sh, z, 160), closed) < 1e-12);
    }
  }

  TEST_CASE("series diverges outside the region where the closed form still holds") {
    SlotCoefficients f, h;
    f.b = 0.8;
    h.a = 0.8;  // |4 b a| = 2.56
    SeriesSymbol sf, sh;
    sf.gauss = f;
    sh.gauss = h;
    const cplx z{0.3, 0.1};
    const cplx closed = eval1(star(GaussianSymbol::single(f), GaussianSymbol::single(h)), z);
    CHECK(std::isfinite(std::abs(closed)));
    CHECK(testing::rel(star_series_oracle(sf, sh, z, 40), closed) > 1.0);
  }

  TEST_CASE("series terms decay and the zeroth term is pointwise") {
    const GaussianSlice s = short_time_slice(PhysicalParams::make(1.0, 1.0), 1.0);
    const auto params = PhysicalParams::make(1.0, 1.0);
    const GaussianSymbol f = slice_symbol(s, params, 3, 0, 1), h = slice_symbol(s, params, 3, 1, 2);
    const cplx pt[3] = {{0.2, 0.1}, {-0.3, 0.4}, {0.5, -0.5}};
    CHECK(testing::rel(star_series_oracle(f, h, pt, 0, 1), f.evaluate(pt) * h.evaluate(pt)) < 1e-14);
    SeriesSymbol sf, sh;
    sf.gauss = f.slot_view(1, pt);
    sh.gauss = h.slot_view(1, pt);
    const auto terms = star_series_terms(sf, sh, pt[1], 30);
    CHECK(terms.size() == 31);
    CHECK(std::abs(terms[30]) < 1e-12 * std::abs(terms[0]));
  }

  TEST_CASE("series agreement on the slice class, grid of 25 points") {
    testing::Gen g(43);
    for (int t = 0; t < 6; ++t) {
      const auto params = PhysicalParams::make(g.log_uniform(0.3, 3.0), g.log_uniform(0.3, 3.0));
      const GaussianSlice a = short_time_slice(params, g.uniform(0.1, 2.0));
      const GaussianSlice b = short_time_slice(params, g.uniform(0.1, 2.0));
      const GaussianSymbol f = slice_symbol(a, params, 3, 0, 1), h = slice_symbol(b, params, 3, 1, 2);
      const GaussianSymbol closed = star(f, h, 1);
      for (int i = 0; i < 25; ++i) {
        const cplx pt[3] = {g.disk(1.0), g.disk(1.0), g.disk(1.0)};
        CHECK(testing::rel(star_series_oracle(f, h, pt, 30, 1), closed.evaluate(pt)) < 1e-8);
      }
    }
  }

  TEST_CASE("associativity") {
    testing::Gen g(44);
    for (int t = 0; t < 20; ++t) {
      const GaussianSymbol f = GaussianSymbol::single(random_gauss(g, 0.2));
      const GaussianSymbol h = GaussianSymbol::single(random_gauss(g, 0.2));
      const GaussianSymbol k = GaussianSymbol::single(random_gauss(g, 0.2));
      const cplx z = g.disk(1.0);
      CHECK(testing::rel(eval1(star(f, star(h, k)), z), eval1(star(star(f, h), k), z)) < 1e-8);
    }
  }

  TEST_CASE("degenerate star throws") {
    SlotCoefficients f, h;
    f.b = 0.5;  // Q_f(zbar, zbar) = 1
    h.a = 0.5;  // Q_g(z, z) = 1
    CHECK_THROWS_AS(star(GaussianSymbol::single(f), GaussianSymbol::single(h)), DegenerateComposition);
  }

  TEST_CASE("slot integration against brute-force quadrature") {
    testing::Gen g(45);
    for (int t = 0; t < 6; ++t) {
      SlotCoefficients c = random_gauss(g, 0.2);
      c.c = cplx(-1.0 - g.uniform(0.0, 1.0), g.uniform(-1.0, 1.0));  // dominant decay
      const GaussianSymbol s = GaussianSymbol::single(c);
      const GaussianSymbol i = integrate_slot(s, 0, 1.0);
      CHECK(i.slots() == 0);
      QuadratureSpec q;
      q.radius = 12.0;
      q.tolerance = 1e-12;
      const auto r = integrate_square([&](double x, double y) { return eval1(s, {x, y}); }, 0.0, 0.0, q);
      CHECK(testing::rel(i.evaluate({}), r.value) < 1e-9);
    }
    SlotCoefficients grow;
    grow.c = 1.0;
    CHECK_THROWS_AS(integrate_slot(GaussianSymbol::single(grow), 0, 1.0), NonIntegrable);
  }

  TEST_CASE("slice pair at m=1 theta=1 tau=1 gives beta' = 0.1 - 0.2i") {
    const auto params = PhysicalParams::make(1.0, 1.0);
    const GaussianSlice s = short_time_slice(params, 1.0);
    const GaussianSlice c = compose_via_star(s, s, params);
    CHECK(std::abs(c.beta - cplx(0.1, -0.2)) < 1e-15);
    CHECK(testing::rel(c.prefactor(), 2 * std::numbers::pi / cplx(1.0, 2.0)) < 1e-14);

    // brute force: integrate the two real-space slices over the middle point
    const double dx = 0.8;
    QuadratureSpec q;
    q.radius = 9.0;
    q.tolerance = 1e-12;
    const GaussianSymbol f = slice_symbol(s, params, 3, 0, 1), h = slice_symbol(s, params, 3, 1, 2);
    const GaussianSymbol st = star(f, h, 1);
    const auto r = integrate_square(
        [&](double x, double y) {
          const cplx pt[3] = {cplx(dx, 0.0) / std::sqrt(2.0), cplx(x, y) / std::sqrt(2.0), 0.0};
          return st.evaluate(pt) / (2 * std::numbers::pi);
        },
        0.0, 0.0, q);
    const cplx expect = c.prefactor() / (2 * std::numbers::pi) * std::exp(-cplx(0.1, -0.2) * dx * dx);
    CHECK(testing::rel(r.value, expect) < 1e-9);
  }

  TEST_CASE("embed and drop slots") {
    const GaussianSymbol d = GaussianSymbol::difference_gaussian(1.0, 0.5, 2, 0, 1);
    const std::size_t map[2] = {2, 0};
    const GaussianSymbol e = d.embed(3, map);
    const cplx p2[2] = {{0.1, 0.2}, {0.3, -0.1}};
    const cplx p3[3] = {p2[1], {9.0, 9.0}, p2[0]};
    CHECK(testing::rel(e.evaluate(p3), d.evaluate(p2)) < 1e-14);
    CHECK(!e.depends_on(1));
    const GaussianSymbol back = e.drop_slot(1);
    const cplx pb[2] = {p2[1], p2[0]};
    CHECK(testing::rel(back.evaluate(pb), d.evaluate(p2)) < 1e-14);
    CHECK_THROWS(e.drop_slot(0));
  }
}
