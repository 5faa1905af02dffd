#include "doctest.h"
#include "vwp/identities.hpp"

using namespace vwp;

namespace {

constexpr Precision kBits = 256;
const PrecisionContext kCtx = PrecisionContext::with_bits(kBits);

ParameterSet standard(int n) { return make_parameters(n, "0.5", "0.35", {"0.1", "0.2", "0.3", "0.4"}, kBits); }
ParameterSet dougall_q1(int n, const char* g) { return make_parameters(n, "1", g, {"2", "1.5", "1.8", "1.7"}, kBits); }
Complex c(const char* v) { return Complex(Real::parse(v, kBits)); }
double rel(const Complex& a, const Complex& b) { return (abs(a - b) / abs(b)).to_double(); }

VerifyOptions quick(double tol = 1e-25) {
  VerifyOptions o;
  o.tolerance = Real(tol, 64);
  return o;
}

}  // namespace

TEST_CASE("Macdonald constant") {
  CHECK(rel(macdonald_rhs(standard(2), kCtx), c("3.94797404818033343294018511940141818159908665e-5")) < 1e-40);
  CHECK(rel(macdonald_rhs(standard(3), kCtx), c("1.00751067010835241375747883402874174719184973e-6")) < 1e-40);
  for (int n = 1; n <= 3; ++n) {
    ParameterSet p = standard(n);
    CHECK(rel(macdonald_rhs_hat_form(p, kCtx), macdonald_rhs(p, kCtx)) < 1e-60);
    p.perm = {2, 0, 3, 1};
    CHECK(rel(macdonald_rhs_hat_form(p, kCtx), macdonald_rhs(p, kCtx)) < 1e-60);
  }
}

TEST_CASE("Macdonald constant at q=1") {
  CHECK(rel(macdonald_rhs(dougall_q1(1, "0"), kCtx), c("0.00197020656546336420171265979205579191443592115")) < 1e-40);
  CHECK(rel(macdonald_rhs(dougall_q1(2, "1"), kCtx), c("1.3549839247320927822642638592027180648902714e-7")) < 1e-40);
  CHECK(rel(recurrence_factor(dougall_q1(2, "1"), kCtx), c("0.00788082626185345680685063916822316765774368462")) <
        1e-40);
  ParameterSet p = dougall_q1(2, "1");
  CHECK(rel(macdonald_rhs_hat_form(p, kCtx), macdonald_rhs(p, kCtx)) < 1e-60);
}

TEST_CASE("g = 0 factorization of the Macdonald constant") {
  ParameterSet p2 = make_parameters(2, "0.5", "0", {"0.1", "0.2", "0.3", "0.4"}, kBits);
  ParameterSet p1 = make_parameters(1, "0.5", "0", {"0.1", "0.2", "0.3", "0.4"}, kBits);
  Complex one = macdonald_rhs(p1, kCtx);
  CHECK(rel(macdonald_rhs(p2, kCtx), one * one) < 1e-60);
}

TEST_CASE("unilateral norm forms") {
  ParameterSet p = make_parameters(2, "0.5", "-0.15", {"-0.1", "-0.2", "-0.3", "-0.4"}, kBits);
  CHECK(rel(rogers_rhs(p, kCtx), c("0.6740095755639012560565774646781037004525")) < 1e-38);
  CHECK(rel(rogers_rhs_simplified(p, kCtx), rogers_rhs(p, kCtx)) < 1e-60);
  ParameterSet p1 = make_parameters(1, "0.5", "0", {"-0.1", "-0.2", "-0.3", "-0.4"}, kBits);
  CHECK(rel(rogers_rhs(p1, kCtx), c("0.9380604515961106906915099378493987229878")) < 1e-38);
  p.perm = {3, 1, 0, 2};
  CHECK(rel(rogers_rhs_simplified(p, kCtx), rogers_rhs(p, kCtx)) < 1e-60);
}

TEST_CASE("Gustafson constant") {
  ParameterSet p = standard(2);
  p.couplings = {c("0.1"), c("0.2"), c("0.3"), c("0.4"), c("0.15"), c("0.25")};
  CHECK(rel(gustafson_rhs(p, kCtx), c("4.19173066443637417393224056435359095113896456e-7")) < 1e-40);
  ParameterSet shuffled = p;
  std::swap(shuffled.couplings[0], shuffled.couplings[5]);
  CHECK(rel(gustafson_rhs(shuffled, kCtx), gustafson_rhs(p, kCtx)) < 1e-60);
  // n=1 with four couplings reduces to the Macdonald constant at g=0.
  ParameterSet p1 = make_parameters(1, "0.5", "0", {"0.1", "0.2", "0.3", "0.4"}, kBits);
  p1.couplings = std::vector<Complex>(p1.gr.begin(), p1.gr.end());
  CHECK(rel(gustafson_rhs(p1, kCtx), macdonald_rhs(p1, kCtx)) < 1e-60);
  p1.couplings.pop_back();
  CHECK_THROWS_AS(gustafson_rhs(p1, kCtx), Error);
}

TEST_CASE("terminating norm at n=1") {
  // g_a + g_b + N = 0.
  ParameterSet p = make_parameters(1, "0.5", "0", {"0.4", "-0.4", "0.3", "0.2"}, kBits);
  CHECK(rel(terminating_rhs(p, 0, kCtx), Complex(1L, kBits)) < 1e-70);
  ParameterSet p1 = make_parameters(1, "0.5", "0", {"0.4", "-1.4", "0.3", "0.2"}, kBits);
  Complex two = classical_unilateral_summand(FloatRing(p1, kCtx), p1.perm, 0) +
                classical_unilateral_summand(FloatRing(p1, kCtx), p1.perm, 1);
  auto forms = terminating_rhs_forms(p1, 1, kCtx);
  CHECK(rel(forms.line1, two) < 1e-60);
  CHECK(rel(forms.simple1, two) < 1e-60);
  CHECK(rel(forms.simple2, two) < 1e-60);
  CHECK_THROWS_AS(terminating_rhs(p1, 2, kCtx), Error);
}

TEST_CASE("terminating forms agree at random rational points") {
  std::mt19937_64 rng(20240611);
  int compared = 0;
  for (int i = 0; i < 100; ++i) {
    int n = 1 + i % 3;
    long N = i % 4;
    Permutation perm = i % 2 ? Permutation{0, 1, 2, 3} : Permutation{2, 3, 0, 1};
    RationalPoint point = random_rational_point(n, N, perm, rng);
    REQUIRE(point.truncation_holds());
    try {
      auto forms = terminating_forms(point.ring(), n, perm, N);
      CHECK(forms.line2 == forms.line1);
      CHECK(forms.simple1 == forms.line1);
      CHECK(forms.simple2 == forms.line1);
      CHECK(forms.squared == forms.line1 * forms.line1);
      ++compared;
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DivisionByVanishingFactor);
    }
  }
  CHECK(compared > 80);
}

TEST_CASE("rational verification") {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 3; ++n) {
    auto report = verify_random_rational(n, 2, {0, 1, 2, 3}, rng);
    CHECK_FALSE(report.error);
    CHECK(report.pass);
    CHECK(report.lhs_exact == report.rhs_exact);
    CHECK(report.terms_evaluated == static_cast<long>(enumerate_alcove(n, 2).size()));
  }
  RationalPoint bad = random_rational_point(2, 2, {0, 1, 2, 3}, rng);
  bad.x[1] *= 2;
  auto report = verify_rational(bad);
  CHECK_FALSE(report.pass);
  REQUIRE(report.error);
  CHECK(*report.error == ErrorKind::TruncationViolated);
}

TEST_CASE("classical sums at n=1") {
  ParameterSet p = make_parameters(1, "0.5", "0", {"0.1", "0.2", "0.3", "0.4"}, kBits);
  auto bilateral = classical_n1(IdentityKind::BaileyDougall, p, c("0.37"), std::nullopt, kCtx, quick());
  CHECK_FALSE(bilateral.error);
  CHECK(bilateral.pass);
  CHECK(bilateral.rel_err.to_double() < 1e-25);

  ParameterSet u = make_parameters(1, "0.5", "0", {"-0.1", "-0.2", "-0.3", "-0.4"}, kBits);
  auto unilateral = classical_n1(IdentityKind::RogersNonterminating, u, Complex(kBits), std::nullopt, kCtx, quick());
  CHECK(unilateral.pass);
  CHECK(rel(unilateral.rhs, c("0.9380604515961106906915099378493987229878")) < 1e-38);

  ParameterSet t = make_parameters(1, "0.5", "0", {"0.4", "-3.4", "0.3", "0.2"}, kBits);
  auto terminating = classical_n1(IdentityKind::Terminating, t, Complex(kBits), 3, kCtx, quick());
  CHECK(terminating.pass);
  CHECK(terminating.rel_err.to_double() < 1e-60);

  std::mt19937_64 rng(11);
  for (long N = 0; N <= 4; ++N) {
    VerificationReport r;
    for (int attempt = 0; attempt < 20; ++attempt) {
      r = classical_n1_rational(random_rational_point(1, N, {0, 1, 2, 3}, rng));
      if (!r.error) break;
    }
    CHECK(r.pass);
  }
}

TEST_CASE("verify Macdonald sum") {
  auto report = verify(IdentityKind::Macdonald, make_parameters(1, "0.5", "0", {"0.1", "0.2", "0.3", "0.4"}, kBits),
                       {c("0.37")}, std::nullopt, kCtx, quick());
  CHECK_FALSE(report.error);
  CHECK(report.pass);
  CHECK(report.rel_err.to_double() < 1e-25);
  CHECK(report.checks.size() == 1);
  CHECK(report.radius_used > 0);
}

TEST_CASE("verify the other float identities") {
  auto aomoto = verify(IdentityKind::AomotoIto, standard(1), {c("0.37")}, std::nullopt, kCtx, quick(1e-20));
  CHECK(aomoto.pass);
  auto bailey = verify(IdentityKind::BaileyDougall, standard(2), {c("0.37"), c("0.11")}, std::nullopt, kCtx,
                       quick(1e-20));
  CHECK(bailey.pass);
  auto rogers = verify(IdentityKind::RogersNonterminating,
                       make_parameters(2, "0.5", "-0.15", {"-0.1", "-0.2", "-0.3", "-0.4"}, kBits), {}, std::nullopt,
                       kCtx, quick(1e-20));
  CHECK(rogers.pass);
  auto terminating = verify(IdentityKind::Terminating,
                            make_parameters(2, "0.5", "0.35", {"0.1", "-2.45", "0.3", "0.4"}, kBits), {}, 2, kCtx,
                            quick(1e-60));
  CHECK(terminating.pass);
  CHECK(terminating.terms_evaluated == 6);
  ParameterSet gp = standard(2);
  gp.couplings = {c("0.1"), c("0.2"), c("0.3"), c("0.4"), c("0.15"), c("0.25")};
  auto gustafson = verify(IdentityKind::Gustafson, gp, {c("0.37"), c("0.11")}, std::nullopt, kCtx, quick(1e-20));
  CHECK(gustafson.pass);
}

TEST_CASE("preconditions are recorded in the report") {
  auto divergent = verify(IdentityKind::Macdonald,
                          make_parameters(2, "0.5", "-0.6", {"0", "0", "0", "0"}, kBits), {}, std::nullopt, kCtx);
  CHECK_FALSE(divergent.pass);
  REQUIRE(divergent.error);
  CHECK(*divergent.error == ErrorKind::ConvergenceViolated);
  CHECK(is_precondition_error(*divergent.error));
  CHECK(divergent.to_json(false).find("ConvergenceViolated") != std::string::npos);

  auto truncation = verify(IdentityKind::Terminating, standard(2), {}, 2, kCtx);
  REQUIRE(truncation.error);
  CHECK(*truncation.error == ErrorKind::TruncationViolated);

  auto pole = verify(IdentityKind::Macdonald, standard(1), {c("0.5")}, std::nullopt, kCtx);
  REQUIRE(pole.error);
  CHECK(*pole.error == ErrorKind::GenericityViolated);

  VerifyOptions tight = quick();
  tight.max_radius = 2;
  auto exhausted = verify(IdentityKind::Macdonald, standard(1), {c("0.37")}, std::nullopt, kCtx, tight);
  REQUIRE(exhausted.error);
  CHECK(*exhausted.error == ErrorKind::RadiusExhausted);
  CHECK_FALSE(is_precondition_error(*exhausted.error));
  CHECK(exhausted.terms_evaluated > 0);
}

TEST_CASE("z independence and the recurrence") {
  auto indep = z_independence_check(standard(2), {c("0.37"), c("0.11")}, {c("0.21"), c("-0.43")}, kCtx, quick(1e-20));
  CHECK(indep.pass);
  for (int n = 1; n <= 2; ++n) {
    auto rec = recurrence_check(standard(n), {}, kCtx, quick(1e-20));
    CHECK_FALSE(rec.error);
    CHECK(rec.pass);
  }
}

TEST_CASE("report json is deterministic") {
  ParameterSet p = make_parameters(1, "0.5", "0", {"0.1", "0.2", "0.3", "0.4"}, kBits);
  auto a = verify(IdentityKind::Macdonald, p, {c("0.37")}, std::nullopt, kCtx, quick());
  VerifyOptions threaded = quick();
  threaded.threads = 4;
  auto b = verify(IdentityKind::Macdonald, p, {c("0.37")}, std::nullopt, kCtx, threaded);
  CHECK(a.to_json(false) == b.to_json(false));
  CHECK(a.to_json(true).find("wall_time_ms") != std::string::npos);
  CHECK(a.to_json(false).find("wall_time_ms") == std::string::npos);
}
