#include <random>

#include "doctest.h"
#include "vwp/kernel.hpp"

using namespace vwp;

namespace {

constexpr Precision kBits = 256;

Complex c(double re, double im = 0.0) { return Complex(re, im, kBits); }
double rel(const Complex& a, const Complex& b) { return (abs(a - b) / abs(b)).to_double(); }
double dist(const Complex& a, const Complex& b) { return abs(a - b).to_double(); }

}  // namespace

TEST_CASE("qpoch_finite branches") {
  auto ctx = PrecisionContext::with_bits(kBits);
  Complex a = c(0.3, 0.2), q = c(0.6);
  CHECK(qpoch_finite(a, q, 0) == Complex(1L, kBits));
  CHECK(dist(qpoch_finite(c(0.5), c(0.5), 2), c(0.375)) < 1e-70);
  CHECK(rel(qpoch_finite(a, q, -1), reciprocal(1L - a / q)) < 1e-70);
  CHECK_THROWS_AS(qpoch_finite(c(0.25), c(0.5), -2), Error);
  (void)ctx;
}

TEST_CASE("qpoch_infinite values") {
  auto ctx = PrecisionContext::with_bits(kBits);
  CHECK(qpoch_infinite(c(1.0), c(0.5), ctx).value.is_zero());
  CHECK(qpoch_infinite(c(0.0), c(0.5), ctx).value == Complex(1L, kBits));
  Complex direct(1L, 512);
  Complex half(Real(1L, 512) / 2L);
  Complex pw = half;
  for (int k = 0; k <= 60; ++k) {
    direct *= (1L - pw);
    pw *= half;
  }
  auto r = qpoch_infinite(c(0.5), c(0.5), ctx);
  CHECK(dist(r.value, direct) < 1e-18);
  CHECK(r.error.to_double() < 1e-70);
}

TEST_CASE("splitting and shift identities") {
  auto ctx = PrecisionContext::with_bits(kBits);
  Complex a = c(0.41, -0.3), q = c(0.7);
  auto inf = qpoch_infinite(a, q, ctx).value;
  for (long m = -6; m <= 6; ++m) {
    Complex rhs = inf / qpoch_infinite(a * pow(q, m), q, ctx).value;
    CHECK(rel(qpoch_finite(a, q, m), rhs) < 1e-70);
  }
  CHECK(rel(qpoch_infinite(q * a, q, ctx).value, inf / (1L - a)) < 1e-70);
  Complex z = c(2.3, 0.7);
  CHECK(rel(gamma(z + 1L, ctx), z * gamma(z, ctx)) < 1e-70);
}

TEST_CASE("reflection properties") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (int trial = 0; trial < 5; ++trial) {
    Complex a = c(u(rng), u(rng)), q = c(0.3 + 0.3 * (u(rng) + 1.0));
    Complex b = c(u(rng) * 3.0, u(rng));
    for (long l = -20; l <= 20; ++l) {
      Complex lhs = qpoch_finite(a, q, l) * qpoch_finite(reciprocal(a) * q, q, -l);
      Complex sign(l % 2 == 0 ? 1L : -1L, kBits);
      Complex rhs = pow(-a, l) * pow(q, l * (l - 1) / 2);
      CHECK(rel(lhs, rhs) < 1e-60);
      CHECK(rel(pochhammer(b, l) * pochhammer(1L - b, -l), sign) < 1e-60);
    }
  }
}

TEST_CASE("pochhammer branches") {
  CHECK(pochhammer(c(0.7), 0) == Complex(1L, kBits));
  CHECK(pochhammer(c(1.0), 5) == Complex(120L, kBits));
  Complex a(Real::parse("0.3", kBits)), expected(Real::parse("1.19", kBits));
  CHECK(rel(pochhammer(a, -2), reciprocal(expected)) < 1e-70);
  CHECK_THROWS_AS(pochhammer(c(2.0), -3), Error);
}

TEST_CASE("log_gamma values") {
  auto ctx = PrecisionContext::with_bits(kBits);
  CHECK(abs(log_gamma(c(1.0), ctx).log_magnitude).to_double() < 1e-70);
  CHECK((abs(log_gamma(c(5.0), ctx).log_magnitude - log(Real(24L, kBits)))).to_double() < 1e-70);
  Real half_log_pi = log(Real::pi(kBits)) / 2L;
  CHECK((abs(log_gamma(c(0.5), ctx).log_magnitude - half_log_pi)).to_double() < 1e-70);
  CHECK_THROWS_AS(log_gamma(c(-3.0), ctx), Error);
  CHECK(rgamma(c(-2.0), ctx).is_zero());
  // agreement with MPFR on the real axis, both sides of 1/2
  for (double x : {0.1, 0.3, 0.77, 1.5, 7.25, 33.3, -2.5, -0.4}) {
    Real ref(kBits);
    mpfr_gamma(ref.get(), Real(x, kBits).get(), MPFR_RNDN);
    CHECK(rel(gamma(c(x), ctx), Complex(ref)) < 1e-70);
  }
}

TEST_CASE("sin_reflection") {
  auto ctx = PrecisionContext::with_bits(kBits);
  CHECK(sin_reflection(c(3.0)).is_zero());
  CHECK(dist(sin_reflection(c(0.5)), c(1.0)) < 1e-70);
  Complex z = c(0.3);
  Complex rhs = Complex(Real::pi(kBits)) / (gamma(z, ctx) * gamma(1L - z, ctx));
  CHECK(rel(sin_reflection(z), rhs) < 1e-30);
}

TEST_CASE("theta function") {
  auto ctx = PrecisionContext::with_bits(kBits);
  Complex q = c(0.4);
  CHECK(abs(theta_series(c(1.0), q, ctx).value).to_double() < 1e-70);
  CHECK(theta_product(c(1.0), c(0.5), ctx).value.is_zero());
  CHECK(theta_product(pow(q, 3), q, ctx).value.is_zero());
  Complex zeta = c(0.3, 0.1);
  auto s = theta_series(zeta, q, ctx), p = theta_product(zeta, q, ctx);
  CHECK(dist(s.value, p.value) < 1e-30);
  auto shifted = theta_series(q * zeta, q, ctx);
  CHECK(dist(shifted.value, -(s.value / zeta)) < 1e-60);
  CHECK_THROWS_AS(theta_series(c(0.0), q, ctx), Error);
  CHECK_THROWS_AS(theta_series(zeta, c(1.0), ctx), Error);
}

TEST_CASE("triple product on random samples") {
  auto ctx = PrecisionContext::with_bits(kBits);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    double r = 0.05 + 0.85 * u(rng), t = 6.283185307179586 * u(rng);
    Complex q(r * std::cos(t), r * std::sin(t), kBits);
    double m = std::exp(2.0 * (u(rng) - 0.5)), ph = 6.283185307179586 * u(rng);
    Complex zeta(m * std::cos(ph), m * std::sin(ph), kBits);
    auto s = theta_series(zeta, q, ctx), p = theta_product(zeta, q, ctx);
    CHECK(abs(s.value - p.value) <= s.error + p.error);
  }
}
