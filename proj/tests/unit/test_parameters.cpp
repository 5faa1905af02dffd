#include <random>

#include "doctest.h"
#include "vwp/parameters.hpp"

using namespace vwp;

namespace {

constexpr Precision kBits = 256;

ParameterSet standard(int n) { return make_parameters(n, "0.5", "0.35", {"0.1", "0.2", "0.3", "0.4"}, kBits); }
double dist(const Complex& a, const Complex& b) { return abs(a - b).to_double(); }
Complex c(const char* v) { return Complex(Real::parse(v, kBits)); }

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(standard(2));
  CHECK_THROWS_AS(make_parameters(0, "0.5", "0", {"0", "0", "0", "0"}, kBits), Error);
  CHECK_THROWS_AS(make_parameters(1, "1.5", "0", {"0", "0", "0", "0"}, kBits), Error);
  CHECK(make_parameters(1, "1", "0", {"0", "0", "0", "0"}, kBits).degenerate);
  ParameterSet p = standard(1);
  p.perm = {0, 1, 1, 3};
  CHECK_THROWS_AS(p.validate(), Error);
  CHECK(all_permutations().size() == 24);
}

TEST_CASE("hat transform") {
  ParameterSet ones = make_parameters(1, "0.5", "0", {"1", "1", "1", "1"}, kBits);
  HatParameters h = hat_transform(ones);
  CHECK(dist(h.a(), c("2")) == 0.0);
  CHECK(h.b().is_zero());
  CHECK(h.c().is_zero());
  CHECK(h.d().is_zero());

  HatParameters s = hat_transform(standard(1));
  CHECK(dist(s.a(), c("0.5")) < 1e-70);
  CHECK(dist(s.b(), c("-0.2")) < 1e-70);
  CHECK(dist(s.c(), c("-0.1")) < 1e-70);
  CHECK(s.d().is_zero());

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    std::array<Complex, 4> v{Complex(u(rng), u(rng), kBits), Complex(u(rng), u(rng), kBits),
                             Complex(u(rng), u(rng), kBits), Complex(u(rng), u(rng), kBits)};
    auto back = hat_transform(hat_transform(v));
    for (std::size_t r = 0; r < 4; ++r) CHECK(dist(back[r], v[r]) < 1e-70);
    auto h2 = hat_transform(v);
    CHECK(dist(h2[0] + h2[1] + h2[2] + h2[3], v[0] * 2L) < 1e-70);
    CHECK(dist(h2[0] - h2[1], v[2] + v[3]) < 1e-70);
  }
}

TEST_CASE("hat transform respects perm") {
  ParameterSet p = standard(1);
  p.perm = {2, 0, 3, 1};  // a=g3, b=g1, c=g4, d=g2
  HatParameters h = hat_transform(p);
  CHECK(dist(h.b(), c("-0.1")) < 1e-70);  // (0.3+0.1-0.4-0.2)/2
  for (int role = 0; role < 4; ++role)
    CHECK(dist(Lin::hat(p.perm, role).evaluate(p), h.hat[static_cast<std::size_t>(role)]) < 1e-70);
}

TEST_CASE("rho vectors") {
  RhoVectors one = rho_vectors(standard(1));
  CHECK(dist(one.rho[0], c("0.1")) < 1e-70);
  CHECK(dist(one.rho_hat[0], c("0.5")) < 1e-70);

  ParameterSet p3 = make_parameters(3, "0.5", "1", {"0", "0.2", "0.3", "0.4"}, kBits);
  RhoVectors r3 = rho_vectors(p3);
  CHECK(dist(r3.rho[0], c("2")) == 0.0);
  CHECK(dist(r3.rho[1], c("1")) == 0.0);
  CHECK(dist(r3.rho[2], c("0")) == 0.0);

  RhoVectors r2 = rho_vectors(standard(2));
  CHECK(dist(r2.rho_hat[0], c("0.85")) < 1e-70);
  CHECK(dist(r2.rho_hat[1], c("0.5")) < 1e-70);
  Complex shift = hat_transform(standard(2)).a() - standard(2).ga();
  for (std::size_t j = 0; j < 2; ++j) CHECK(dist(r2.rho_hat[j] - r2.rho[j], shift) < 1e-70);
  for (int j = 1; j <= 2; ++j) {
    CHECK(dist(rho_lin(2, j, {0, 1, 2, 3}).evaluate(standard(2)), r2.rho[static_cast<std::size_t>(j - 1)]) < 1e-70);
    CHECK(dist(rho_hat_lin(2, j, {0, 1, 2, 3}).evaluate(standard(2)), r2.rho_hat[static_cast<std::size_t>(j - 1)]) < 1e-70);
  }
}

TEST_CASE("linear exponents") {
  Lin two_rho_hat = 2L * rho_hat_lin(3, 1, {0, 1, 2, 3});
  CHECK(two_rho_hat.integral());
  CHECK_FALSE(rho_hat_lin(3, 1, {0, 1, 2, 3}).integral());
  for (int role = 1; role < 4; ++role) CHECK((Lin::hat({0, 1, 2, 3}, role) - Lin::hat({0, 1, 2, 3}, 0)).integral());
  CHECK((Lin::constant(3) - 3L).is_constant());
  CHECK(Lin::g().str() == "g");
  CHECK((Lin::constant(1) - Lin::coupling(2)).str() == "1-g3");
}

TEST_CASE("convergence checks") {
  auto zero = make_parameters(1, "0.5", "0", {"0", "0", "0", "0"}, kBits);
  auto r0 = check_convergence_bilateral(zero);
  CHECK(r0.ok);
  CHECK(r0.margin.to_double() == doctest::Approx(1.0));

  auto bad = make_parameters(2, "0.5", "-0.6", {"0", "0", "0", "0"}, kBits);
  auto rb = check_convergence_bilateral(bad);
  CHECK_FALSE(rb.ok);
  CHECK(rb.margin.to_double() == doctest::Approx(-0.2));
  CHECK(rb.worst_j == 1);

  auto rs = check_convergence_bilateral(standard(2));
  CHECK(rs.ok);
  CHECK(rs.margin.to_double() == doctest::Approx(2.0));
  CHECK(rs.worst_j == 2);

  CHECK(check_convergence_unilateral(zero).ok);
  auto ru = check_convergence_unilateral(make_parameters(2, "0.5", "0.6", {"0", "0", "0", "0"}, kBits));
  CHECK_FALSE(ru.ok);
  CHECK(ru.margin.to_double() == doctest::Approx(-0.2));
  auto refl = make_parameters(2, "0.5", "-0.35", {"-0.1", "-0.2", "-0.3", "-0.4"}, kBits);
  CHECK(check_convergence_unilateral(refl).margin.to_double() == doctest::Approx(2.0));

  // monotone in Re g for Re g >= 0
  double last = -1e9;
  for (const char* gv : {"0", "0.1", "0.5", "1.2"}) {
    auto m = check_convergence_bilateral(make_parameters(3, "0.5", gv, {"0.1", "0.2", "0.3", "0.4"}, kBits)).margin.to_double();
    CHECK(m >= last);
    last = m;
  }
}

TEST_CASE("genericity") {
  ParameterSet p = standard(1);
  CHECK(check_genericity({c("0.37")}, p, IdentityKind::Macdonald).empty());
  ParameterSet p2 = standard(2);
  auto v = check_genericity({c("0.5"), c("0.5")}, p2, IdentityKind::Macdonald);
  REQUIRE_FALSE(v.empty());
  bool found = false;
  for (const auto& x : v) found = found || x.what == "z_1-z_2";
  CHECK(found);

  auto pole = check_genericity({p.gr[0]}, p, IdentityKind::AomotoIto);
  REQUIRE(pole.size() == 1);
  CHECK(pole[0].what == "-g_1+z_1");
  CHECK(check_genericity({p.gr[0]}, p, IdentityKind::Macdonald).empty());

  // imaginary period for q < 1
  PeriodLattice lattice(p.q, false);
  Complex w(Real(3L, kBits), lattice.period() * 2L);
  CHECK(lattice.distance(w).to_double() < 1e-60);
  PeriodLattice flat(Real(1L, kBits), true);
  CHECK(flat.distance(w).to_double() > 1.0);

  auto bd = check_genericity({c("-1.1")}, p, IdentityKind::BaileyDougall);
  bool neg = false;
  for (const auto& x : bd) neg = neg || x.what == "g_1+z_1";
  CHECK(neg);
}

TEST_CASE("truncation") {
  auto p = make_parameters(1, "0.5", "0", {"0.4", "-2.4", "0.3", "0.2"}, kBits);
  CHECK(check_truncation(p, 2));
  auto off = make_parameters(1, "0.5", "0", {"0.4", "-2.39", "0.3", "0.2"}, kBits);
  CHECK_FALSE(check_truncation(off, 2));
  auto p3 = make_parameters(3, "0.5", "1/2", {"1/4", "-9/4", "0.3", "0.2"}, kBits);
  CHECK(check_truncation(p3, 1));
}
