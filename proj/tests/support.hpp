#pragma once

// Seeded generators and small reference helpers shared by the tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "ncpath/fock_operator.hpp"
#include "ncpath/linalg.hpp"

namespace testing {

using cplx = std::complex<double>;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  cplx normal_c() {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng_);
    return {re, n(rng_)};
  }
  cplx disk(double radius) {
    const double r = radius * std::sqrt(uniform(0.0, 1.0));
    const double a = uniform(0.0, 2.0 * std::acos(-1.0));
    return std::polar(r, a);
  }
  std::vector<cplx> vec(std::size_t n) {
    std::vector<cplx> v(n);
    for (auto& x : v) x = normal_c();
    return v;
  }
  ncpath::CMatrix matrix(std::size_t r, std::size_t c) {
    ncpath::CMatrix m(r, c);
    for (auto& x : m.data()) x = normal_c();
    return m;
  }
  ncpath::FockOperator op(std::size_t d) { return ncpath::FockOperator(matrix(d, d)); }

 private:
  std::mt19937_64 rng_;
};

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// Plain triple loop, no dispatch.
inline ncpath::CMatrix naive_product(const ncpath::CMatrix& a, const ncpath::CMatrix& b) {
  ncpath::CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace testing
