#include <algorithm>
#include <set>

#include "doctest.h"
#include "vwp/summation.hpp"

using namespace vwp;

namespace {

constexpr Precision kBits = 256;
const PrecisionContext kCtx = PrecisionContext::with_bits(kBits);

Complex c(const char* v) { return Complex(Real::parse(v, kBits)); }
double rel(const Complex& a, const Complex& b) { return (abs(a - b) / abs(b)).to_double(); }
long max_abs(const LatticePoint& l) {
  long m = 0;
  for (long v : l) m = std::max(m, std::labs(v));
  return m;
}

SumOptions options(double tol, long max_radius, int threads = 1) {
  SumOptions o;
  o.tolerance = Real(tol, 64);
  o.max_radius = max_radius;
  o.threads = threads;
  return o;
}

}  // namespace

TEST_CASE("shell enumeration") {
  CHECK(enumerate_shell(1, 0) == std::vector<LatticePoint>{{0}});
  CHECK(enumerate_shell(2, 1).size() == 8);
  CHECK(enumerate_shell(3, 2).size() == 98);
  for (int n = 1; n <= 3; ++n)
    for (long r = 0; r <= 5; ++r) {
      auto shell = enumerate_shell(n, r);
      CHECK(static_cast<long>(shell.size()) == shell_size(n, r));
      CHECK(std::is_sorted(shell.begin(), shell.end()));
      CHECK(std::set<LatticePoint>(shell.begin(), shell.end()).size() == shell.size());
      for (const auto& l : shell) CHECK(max_abs(l) == r);
    }
}

TEST_CASE("cone and alcove enumeration") {
  CHECK(enumerate_alcove(2, 1) == std::vector<LatticePoint>{{0, 0}, {1, 0}, {1, 1}});
  CHECK(enumerate_alcove(3, 2).size() == 10);
  CHECK(enumerate_alcove(1, 5) == std::vector<LatticePoint>{{0}, {1}, {2}, {3}, {4}, {5}});
  auto binom = [](long a, long b) {
    long out = 1;
    for (long i = 1; i <= b; ++i) out = out * (a - b + i) / i;
    return out;
  };
  for (int n = 1; n <= 4; ++n)
    for (long N = 0; N <= 5; ++N) {
      auto alcove = enumerate_alcove(n, N);
      CHECK(static_cast<long>(alcove.size()) == binom(N + n, n));
      for (const auto& l : alcove) {
        CHECK(std::is_sorted(l.rbegin(), l.rend()));
        CHECK(l.back() >= 0);
        CHECK(l.front() <= N);
      }
    }
  CHECK_THROWS_AS(Region({RegionKind::Alcove, 2, -1}).validate(), Error);
}

TEST_CASE("compensated summation") {
  const Precision bits = 64;
  CompensatedSum acc(bits);
  Real naive(1L, bits);
  acc.add(Complex(1L, bits));
  Complex small(ldexp(Real(1L, bits), -70), Real(0L, bits));
  for (int i = 0; i < 1024; ++i) {
    acc.add(small);
    naive += small.re;
  }
  CHECK(naive == Real(1L, bits));
  CHECK(acc.value().re == Real(1L, bits) + ldexp(Real(1L, bits), -60));
}

TEST_CASE("indicator term") {
  FunctionTerm delta(2, [](std::span<const long> l) {
    return (l[0] == 0 && l[1] == 0) ? Complex(1L, kBits) : Complex(kBits);
  });
  auto model = DecayModel::geometric(Real(0.5, 64));
  SumResult s = sum_bilateral(delta, model, options(1e-30, 10), kCtx);
  CHECK(s.converged);
  CHECK(s.value == Complex(1L, kBits));
  CHECK(s.radius_used <= 1);
  CHECK(s.tail_bound.is_zero());

  SumResult cone = sum_cone(delta, model, options(1e-30, 10), kCtx);
  CHECK(cone.value == Complex(1L, kBits));
}

TEST_CASE("n=1 bilateral sum at the classical test point") {
  ParameterSet p = make_parameters(1, "0.5", "0", {"0.1", "0.2", "0.3", "0.4"}, kBits);
  auto term = make_macdonald_term({c("0.37")}, p, kCtx);
  SumResult s = sum_bilateral(*term, decay_model(IdentityKind::Macdonald, p), options(1e-28, 120), kCtx);
  CHECK(s.converged);
  CHECK(s.radius_used <= 120);
  CHECK(rel(s.value, c("0.00368642531748912266373809929869099451211634982")) < 1e-25);

  // box order gives the same value
  std::vector<LatticePoint> box;
  for (long l = -s.radius_used; l <= s.radius_used; ++l) box.push_back({l});
  Complex box_sum = sum_points(*term, box, 1, kCtx);
  CHECK(abs(box_sum - s.value).to_double() <= 1e-60);
}

TEST_CASE("sums are independent of the thread count") {
  ParameterSet p = make_parameters(2, "0.5", "0.35", {"0.1", "0.2", "0.3", "0.4"}, kBits);
  std::vector<Complex> z{c("0.37"), c("0.11")};
  auto model = decay_model(IdentityKind::Macdonald, p);
  auto a = sum_bilateral(*make_macdonald_term(z, p, kCtx), model, options(1e-20, 40, 1), kCtx);
  auto b = sum_bilateral(*make_macdonald_term(z, p, kCtx), model, options(1e-20, 40, 4), kCtx);
  CHECK(a.value == b.value);
  CHECK(a.tail_bound == b.tail_bound);
  CHECK(a.terms_evaluated == b.terms_evaluated);
}

TEST_CASE("cone sums") {
  FunctionTerm origin(2, [](std::span<const long> l) {
    return (l[0] == 0 && l[1] == 0) ? Complex(1L, kBits) : Complex(kBits);
  });
  CHECK(sum_cone(origin, DecayModel::geometric(Real(0.5, 64)), options(1e-30, 5), kCtx).value == Complex(1L, kBits));

  ParameterSet p = make_parameters(2, "0.5", "-0.15", {"-0.1", "-0.2", "-0.3", "-0.4"}, kBits);
  auto term = make_rogers_term(p, kCtx);
  SumResult s = sum_cone(*term, decay_model(IdentityKind::RogersNonterminating, p), options(1e-32, 200), kCtx);
  CHECK(s.converged);
  CHECK(rel(s.value, c("0.6740095755639012560565774646781037004525")) < 1e-30);

  ParameterSet p1 = make_parameters(1, "0.5", "0", {"-0.1", "-0.2", "-0.3", "-0.4"}, kBits);
  SumResult s1 = sum_cone(*make_rogers_term(p1, kCtx), decay_model(IdentityKind::RogersNonterminating, p1),
                          options(1e-32, 200), kCtx);
  CHECK(rel(s1.value, c("0.9380604515961106906915099378493987229878")) < 1e-30);
}

TEST_CASE("alcove sums") {
  ParameterSet p = make_parameters(1, "0.5", "0", {"0.4", "-1.4", "0.3", "0.2"}, kBits);
  REQUIRE(check_truncation(p, 1));
  auto term = make_rogers_term(p, kCtx);
  SumResult s = sum_alcove(*term, 1, options(0, 0), kCtx);
  std::vector<long> one{1};
  CHECK(s.tail_bound.is_zero());
  CHECK(s.terms_evaluated == 2);
  CHECK(rel(s.value, Complex(1L, kBits) + rogers_term(one, p, kCtx).to_complex()) < 1e-70);

  // the cone sum picks up nothing beyond the alcove
  ParameterSet p2 = make_parameters(2, "0.5", "0.23", {"0.17", "-2.4", "0.31", "-0.12"}, kBits);
  REQUIRE(check_truncation(p2, 2));
  auto t2 = make_rogers_term(p2, kCtx);
  Complex alcove = sum_alcove(*t2, 2, options(0, 0), kCtx).value;
  Complex cone = sum_points(*t2, enumerate_cone(2, 7), 1, kCtx);
  CHECK(alcove == cone);
}

TEST_CASE("decay models") {
  ParameterSet bad = make_parameters(2, "0.5", "-0.6", {"0", "0", "0", "0"}, kBits);
  CHECK_THROWS_AS(decay_model(IdentityKind::Macdonald, bad), Error);

  ParameterSet p = make_parameters(1, "0.5", "0", {"0.2", "0.2", "0.3", "0.3"}, kBits);  // margin 2
  auto model = decay_model(IdentityKind::Macdonald, p);
  CHECK(model.parameter().to_double() == doctest::Approx(0.25));
  Real last = Real::infinity(64);
  for (long r = 0; r < 30; ++r) {
    Real t = model.tail(1, r, RegionKind::Bilateral);
    CHECK(t <= last);
    if (r > 0) CHECK((t / last).to_double() == doctest::Approx(0.25));
    last = t;
  }

  ParameterSet d = make_parameters(1, "1", "0", {"2.0", "1.5", "1.8", "1.7"}, kBits);
  auto power = decay_model(IdentityKind::Macdonald, d);
  CHECK(power.shape() == DecayModel::Shape::PowerLaw);
  CHECK(power.parameter().to_double() == doctest::Approx(17.0));
  for (long r = 1; r < 40; ++r)
    CHECK(power.tail(2, r, RegionKind::Bilateral) <= power.tail(2, r - 1, RegionKind::Bilateral));
  CHECK(power_law_exponent(IdentityKind::RogersNonterminating, d).to_double() == doctest::Approx(-11.0));
}

TEST_CASE("radius exhaustion carries the partial sum") {
  ParameterSet p = make_parameters(1, "0.5", "0", {"0.1", "0.2", "0.3", "0.4"}, kBits);
  auto term = make_macdonald_term({c("0.37")}, p, kCtx);
  try {
    sum_bilateral(*term, decay_model(IdentityKind::Macdonald, p), options(1e-40, 3), kCtx);
    FAIL("expected RadiusExhausted");
  } catch (const RadiusExhausted& e) {
    CHECK(e.partial().radius_used == 3);
    CHECK(e.partial().terms_evaluated == 7);
    CHECK_FALSE(e.partial().converged);
  }
}

TEST_CASE("tail bound dominates the omitted mass") {
  ParameterSet p = make_parameters(2, "0.5", "0.35", {"0.1", "0.2", "0.3", "0.4"}, kBits);
  std::vector<Complex> z{c("0.37"), c("0.11")};
  auto term = make_macdonald_term(z, p, kCtx);
  auto model = decay_model(IdentityKind::Macdonald, p);
  for (long r : {2L, 4L, 6L}) {
    Real bound = tail_bound(*term, model, r, RegionKind::Bilateral, kCtx);
    CompensatedSum omitted(kBits);
    for (long s = r + 1; s <= 2 * r; ++s)
      for (const auto& l : enumerate_shell(2, s)) omitted.add((*term)(l));
    CHECK(abs(omitted.value()) <= bound);
  }
}
