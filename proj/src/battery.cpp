#include "vwp/battery.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace vwp {

namespace {

using Vec = std::vector<Complex>;
using Clock = std::chrono::steady_clock;

const double kTwoPi = 6.283185307179586;

double since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string sci(const Real& x) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << x.to_double();
  return out.str();
}

Complex num(const char* text, Precision bits) { return Complex(Real::parse(text, bits)); }

Vec nums(std::initializer_list<const char*> texts, Precision bits) {
  Vec out;
  for (const char* t : texts) out.push_back(num(t, bits));
  return out;
}

Real rel(const Complex& a, const Complex& b) {
  Real scale = abs(b);
  return scale.is_zero() ? abs(a - b) : abs(a - b) / scale;
}

VerifyOptions verify_options(double tol, long max_radius, const BatteryOptions& options) {
  VerifyOptions v;
  v.tolerance = Real(tol, 64);
  v.max_radius = max_radius;
  v.threads = options.threads;
  return v;
}

CaseResult from_report(const std::string& suite, const std::string& name, VerificationReport report) {
  CaseResult c;
  c.suite = suite;
  c.name = name;
  c.pass = report.pass;
  c.detail = report.error ? std::string(to_string(*report.error)) + ": " + report.error_detail
                          : "rel_err " + sci(report.rel_err) + ", radius " + std::to_string(report.radius_used);
  c.wall_time_ms = report.wall_time_ms;
  c.report = std::move(report);
  return c;
}

// Runs a property check; exceptions count as failures.
CaseResult property(const std::string& name, const std::function<std::string(bool&)>& body) {
  CaseResult c;
  c.suite = "properties";
  c.name = name;
  auto start = Clock::now();
  try {
    bool ok = true;
    c.detail = body(ok);
    c.pass = ok;
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = e.what();
  }
  c.wall_time_ms = since(start);
  return c;
}

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

// Decimal text with three places, so sampled parameters are reproducible text.
std::string decimal(double x) {
  std::ostringstream out;
  out.precision(3);
  out << std::fixed << x;
  return out.str();
}

ParameterSet standard(int n, Precision bits) {
  return make_parameters(n, "0.5", "0.35", {"0.1", "0.2", "0.3", "0.4"}, bits);
}
ParameterSet dougall_q1(int n, const char* g, Precision bits) {
  return make_parameters(n, "1", g, {"2.0", "1.5", "1.8", "1.7"}, bits);
}
Vec generic_z(int n, Precision bits) {
  Vec z = nums({"0.37", "0.11", "-0.23"}, bits);
  z.resize(static_cast<std::size_t>(n));
  return z;
}

}  // namespace

std::string CaseResult::to_json(bool include_timing) const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["suite"] = suite;
  j["case"] = name;
  j["verdict"] = pass ? "pass" : "fail";
  j["detail"] = detail;
  j["report"] = report ? ordered_json::parse(report->to_json(include_timing)) : ordered_json(nullptr);
  if (include_timing) j["wall_time_ms"] = wall_time_ms;
  return j.dump(2);
}

std::string summary_json(const std::string& suite, const std::vector<CaseResult>& cases, bool include_timing) {
  using nlohmann::ordered_json;
  ordered_json j;
  long passed = 0;
  ordered_json list = ordered_json::array();
  for (const auto& c : cases) {
    passed += c.pass ? 1 : 0;
    ordered_json row{{"case", c.name}, {"verdict", c.pass ? "pass" : "fail"}, {"detail", c.detail}};
    if (include_timing) row["wall_time_ms"] = c.wall_time_ms;
    list.push_back(row);
  }
  j["suite"] = suite;
  j["cases"] = static_cast<long>(cases.size());
  j["passed"] = passed;
  j["failed"] = static_cast<long>(cases.size()) - passed;
  j["results"] = list;
  return j.dump(2);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"classical-n1", "theorems", "properties", "rational-terminating",
                                              "recurrence"};
  return names;
}

std::vector<CaseResult> run_suite(const std::string& name, const BatteryOptions& options) {
  if (name == "classical-n1") return suite_classical_n1(options);
  if (name == "theorems") return suite_theorems(options);
  if (name == "properties") return suite_properties(options);
  if (name == "rational-terminating") return suite_rational_terminating(options);
  if (name == "recurrence") return suite_recurrence(options);
  throw Error(ErrorKind::InvalidParameters, "unknown suite '" + name + "'");
}

// ---------------------------------------------------------------------------

std::vector<CaseResult> suite_classical_n1(const BatteryOptions& options) {
  const Precision bits = options.bits;
  const auto ctx = PrecisionContext::with_bits(bits);
  const std::string s = "classical-n1";
  std::vector<CaseResult> out;
  ParameterSet p = make_parameters(1, "0.5", "0", {"0.1", "0.2", "0.3", "0.4"}, bits);
  out.push_back(from_report(s, "bailey", classical_n1(IdentityKind::BaileyDougall, p, num("0.37", bits), std::nullopt,
                                                      ctx, verify_options(1e-25, 120, options))));
  ParameterSet u = make_parameters(1, "0.5", "0", {"-0.1", "-0.2", "-0.3", "-0.4"}, bits);
  out.push_back(from_report(s, "rogers-cone", classical_n1(IdentityKind::RogersNonterminating, u, Complex(bits),
                                                           std::nullopt, ctx, verify_options(1e-25, 120, options))));
  for (long N = 1; N <= 3; ++N) {
    // g_a + g_b + N = 0
    ParameterSet t = make_parameters(1, "0.5", "0", {"0.4", decimal(-0.4 - static_cast<double>(N)), "0.3", "0.2"}, bits);
    out.push_back(from_report(s, "terminating-N" + std::to_string(N),
                              classical_n1(IdentityKind::Terminating, t, Complex(bits), N, ctx,
                                           verify_options(1e-40, 120, options))));
    ParameterSet d = make_parameters(1, "1", "0", {"0.4", decimal(-0.4 - static_cast<double>(N)), "0.3", "0.2"}, bits);
    out.push_back(from_report(s, "terminating-q1-N" + std::to_string(N),
                              classical_n1(IdentityKind::Terminating, d, Complex(bits), N, ctx,
                                           verify_options(1e-40, 120, options))));
  }
  auto rng = seeded(options.seed, 1);
  for (long N = 1; N <= 3; ++N) {
    VerificationReport r;
    for (int attempt = 0; attempt < 100; ++attempt) {
      r = classical_n1_rational(random_rational_point(1, N, {0, 1, 2, 3}, rng));
      if (!(r.error && *r.error == ErrorKind::DivisionByVanishingFactor)) break;
    }
    out.push_back(from_report(s, "terminating-rational-N" + std::to_string(N), std::move(r)));
  }
  out.push_back(from_report(s, "dougall-q1", classical_n1(IdentityKind::BaileyDougall, dougall_q1(1, "0", bits),
                                                          num("0.37", bits), std::nullopt, ctx,
                                                          verify_options(1e-8, 500, options))));
  return out;
}

std::vector<CaseResult> suite_theorems(const BatteryOptions& options) {
  const Precision bits = options.bits;
  const auto ctx = PrecisionContext::with_bits(bits);
  const std::string s = "theorems";
  std::vector<CaseResult> out;
  out.push_back(from_report(s, "macdonald-n2", verify(IdentityKind::Macdonald, standard(2, bits), generic_z(2, bits),
                                                     std::nullopt, ctx, verify_options(1e-15, 30, options))));
  out.push_back(from_report(s, "macdonald-n3", verify(IdentityKind::Macdonald, standard(3, bits), generic_z(3, bits),
                                                     std::nullopt, ctx, verify_options(1e-8, 15, options))));
  out.push_back(from_report(s, "z-independence-n2",
                            z_independence_check(standard(2, bits), generic_z(2, bits), nums({"0.21", "-0.43"}, bits),
                                                 ctx, verify_options(1e-12, 30, options))));
  out.push_back(from_report(s, "aomoto-ito-n2", verify(IdentityKind::AomotoIto, standard(2, bits), generic_z(2, bits),
                                                       std::nullopt, ctx, verify_options(1e-15, 30, options))));
  out.push_back(from_report(s, "bailey-n2", verify(IdentityKind::BaileyDougall, standard(2, bits), generic_z(2, bits),
                                                   std::nullopt, ctx, verify_options(1e-15, 30, options))));
  out.push_back(from_report(s, "rogers-n2",
                            verify(IdentityKind::RogersNonterminating,
                                   make_parameters(2, "0.5", "-0.15", {"-0.1", "-0.2", "-0.3", "-0.4"}, bits), {},
                                   std::nullopt, ctx, verify_options(1e-15, 60, options))));
  out.push_back(from_report(s, "terminating-n2",
                            verify(IdentityKind::Terminating,
                                   make_parameters(2, "0.5", "0.35", {"0.1", "-2.45", "0.3", "0.4"}, bits), {}, 2, ctx,
                                   verify_options(1e-40, 30, options))));
  out.push_back(from_report(s, "terminating-n3",
                            verify(IdentityKind::Terminating,
                                   make_parameters(3, "0.5", "0.35", {"0.1", "-2.8", "0.3", "0.4"}, bits), {}, 2, ctx,
                                   verify_options(1e-40, 30, options))));
  ParameterSet g = standard(2, bits);
  g.couplings = nums({"0.1", "0.2", "0.3", "0.4", "0.15", "0.25"}, bits);
  out.push_back(from_report(s, "gustafson-n2", verify(IdentityKind::Gustafson, g, generic_z(2, bits), std::nullopt,
                                                      ctx, verify_options(1e-12, 30, options))));
  return out;
}

std::vector<CaseResult> suite_rational_terminating(const BatteryOptions& options) {
  std::vector<CaseResult> out;
  const auto perms = all_permutations();
  for (int n = 1; n <= 3; ++n)
    for (long N = 0; N <= 3; ++N) {
      auto rng = seeded(options.seed, static_cast<std::uint64_t>(100 + 10 * n + N));
      for (int i = 0; i < 25; ++i) {
        const Permutation& perm = perms[static_cast<std::size_t>(i) % perms.size()];
        std::string name = "n" + std::to_string(n) + "-N" + std::to_string(N) + "-" + std::to_string(i);
        out.push_back(from_report("rational-terminating", name, verify_random_rational(n, N, perm, rng)));
      }
    }
  return out;
}

std::vector<CaseResult> suite_recurrence(const BatteryOptions& options) {
  const Precision bits = options.bits;
  const auto ctx = PrecisionContext::with_bits(bits);
  const std::string s = "recurrence";
  std::vector<CaseResult> out;
  out.push_back(from_report(s, "n1", recurrence_check(standard(1, bits), generic_z(1, bits), ctx,
                                                      verify_options(1e-25, 60, options))));
  out.push_back(from_report(s, "n2", recurrence_check(standard(2, bits), generic_z(2, bits), ctx,
                                                      verify_options(1e-12, 30, options))));
  out.push_back(from_report(s, "q1-n2", recurrence_check(dougall_q1(2, "1", bits), generic_z(2, bits), ctx,
                                                         verify_options(1e-6, 200, options))));
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CaseResult> suite_properties(const BatteryOptions& options) {
  const Precision bits = options.bits;
  const auto ctx = PrecisionContext::with_bits(bits);
  std::vector<CaseResult> out;
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  out.push_back(property("triple-product", [&](bool& ok) {
    auto rng = seeded(options.seed, 1);
    Real worst(0L, 64);
    for (int i = 0; i < 1000; ++i) {
      double r = 0.9 * unit(rng), t = kTwoPi * unit(rng);
      double m = std::exp(2.0 * (unit(rng) - 0.5)), ph = kTwoPi * unit(rng);
      Complex q(r * std::cos(t), r * std::sin(t), bits), zeta(m * std::cos(ph), m * std::sin(ph), bits);
      auto series = theta_series(zeta, q, ctx), product = theta_product(zeta, q, ctx);
      Real diff = abs(series.value - product.value);
      if (diff > series.error + product.error) ok = false;
      if (diff > worst) worst = diff;
    }
    return "1000 samples, max |series - product| " + sci(worst);
  }));

  out.push_back(property("reflection", [&](bool& ok) {
    auto rng = seeded(options.seed, 2);
    Real worst(0L, 64);
    for (int i = 0; i < 10; ++i) {
      Complex a(1.8 * unit(rng) - 0.9, 1.8 * unit(rng) - 0.9, bits), q(0.3 + 0.6 * unit(rng), 0.0, bits);
      Complex b(6.0 * unit(rng) - 3.0, 1.8 * unit(rng) - 0.9, bits);
      for (long l = -20; l <= 20; ++l) {
        Real e1 = rel(qpoch_finite(a, q, l) * qpoch_finite(reciprocal(a) * q, q, -l),
                      pow(-a, l) * pow(q, l * (l - 1) / 2));
        Real e2 = rel(pochhammer(b, l) * pochhammer(1L - b, -l), Complex(l % 2 == 0 ? 1L : -1L, bits));
        for (const Real* e : {&e1, &e2}) {
          if (*e > worst) worst = *e;
          if (e->to_double() > 1e-60) ok = false;
        }
      }
    }
    return "410 shifts, max rel deviation " + sci(worst);
  }));

  out.push_back(property("quasi-periodicity", [&](bool& ok) {
    auto rng = seeded(options.seed, 3);
    Real worst(0L, 64);
    for (int i = 0; i < 100; ++i) {
      double r = 0.05 + 0.85 * unit(rng), m = std::exp(unit(rng) - 0.5), ph = kTwoPi * unit(rng);
      Complex q(r, 0.0, bits), zeta(m * std::cos(ph), m * std::sin(ph), bits);
      auto shifted = theta_product(q * zeta, q, ctx), base = theta_product(zeta, q, ctx);
      Real e = rel(shifted.value, -(base.value / zeta));
      if (e > worst) worst = e;
      if (e.to_double() > 1e-60) ok = false;
    }
    return "100 samples, max rel deviation " + sci(worst);
  }));

  out.push_back(property("aomoto-periodicity", [&](bool& ok) {
    Real worst(0L, 64);
    for (const auto& p : {standard(1, bits), standard(2, bits), standard(3, bits), dougall_q1(2, "1", bits)}) {
      Vec z = generic_z(p.n, bits);
      Vec minus;
      for (const auto& v : z) minus.push_back(-v);
      Complex base = c_plus(minus, p, ctx).to_complex() / c_minus(z, p, ctx).to_complex();
      for (long shift = -3; shift <= 3; ++shift) {
        Vec x = z, mx = minus;
        for (std::size_t j = 0; j < x.size(); ++j) {
          long l = shift * static_cast<long>(j + 1) % 5;
          x[j] = x[j] + l;
          mx[j] = mx[j] - l;
        }
        Real e = rel(c_plus(mx, p, ctx).to_complex() / c_minus(x, p, ctx).to_complex(), base);
        if (e > worst) worst = e;
        if (e.to_double() > 1e-50) ok = false;
      }
    }
    return "max rel deviation " + sci(worst);
  }));

  out.push_back(property("bailey-termwise", [&](bool& ok) {
    Real worst(0L, 64);
    for (int n = 1; n <= 3; ++n) {
      ParameterSet p = standard(n, bits);
      Vec z = generic_z(n, bits);
      LatticePoint origin(static_cast<std::size_t>(n), 0L);
      Complex aomoto_origin = aomoto_term(z, origin, p, ctx).to_complex();
      for (const auto& l : enumerate_shell(n, 2)) {
        Complex a = bailey_term(z, l, p, ctx).to_complex();
        Complex b = aomoto_term(z, l, p, ctx).to_complex() / aomoto_origin;
        Real e = rel(a, b);
        if (e > worst) worst = e;
        if (e.to_double() > 1e-50) ok = false;
      }
    }
    return "shell 2, n <= 3, max rel deviation " + sci(worst);
  }));

  out.push_back(property("cone-vanishing", [&](bool& ok) {
    long checked = 0;
    for (int n = 1; n <= 3; ++n) {
      ParameterSet p = standard(n, bits);
      auto rho = rho_vectors(p).rho;
      Vec z;
      for (const auto& v : rho) z.push_back(-v);
      for (long r = 0; r <= 6; ++r)
        for (const auto& l : enumerate_shell(n, r)) {
          bool in_cone = std::is_sorted(l.rbegin(), l.rend()) && l.back() >= 0;
          if (in_cone) continue;
          ++checked;
          if (!bailey_term(z, l, p, ctx).value.is_zero()) ok = false;
        }
    }
    return std::to_string(checked) + " points outside the cone";
  }));

  out.push_back(property("alcove-vanishing", [&](bool& ok) {
    long checked = 0;
    for (auto [n, N, gb] : {std::tuple{1, 2L, "-2.1"}, {2, 2L, "-2.45"}, {3, 1L, "-1.8"}}) {
      ParameterSet p = make_parameters(n, "0.5", "0.35", {"0.1", gb, "0.3", "0.4"}, bits);
      if (!check_truncation(p, N)) throw Error(ErrorKind::TruncationViolated, "alcove parameters");
      for (const auto& l : enumerate_cone(n, N + 3)) {
        bool zero = rogers_term(l, p, ctx).value.is_zero();
        if (zero != (l[0] > N)) ok = false;
        ++checked;
      }
    }
    return std::to_string(checked) + " cone points";
  }));

  out.push_back(property("truncation-consistency", [&](bool& ok) {
    ParameterSet p = make_parameters(2, "0.5", "0.35", {"0.1", "-2.45", "0.3", "0.4"}, bits);
    auto term = make_rogers_term(p, ctx);
    Complex alcove = sum_points(*term, enumerate_alcove(2, 2), options.threads, ctx);
    Complex cone = sum_points(*term, enumerate_cone(2, 8), options.threads, ctx);
    Real e = rel(cone, alcove);
    ok = e.is_zero() || e.to_double() < 1e-70;
    return "cone vs alcove rel " + sci(e);
  }));

  out.push_back(property("middle-term-normalization", [&](bool& ok) {
    VerifyOptions v = verify_options(1e-20, 30, options);
    ParameterSet p = standard(2, bits);
    Vec z = generic_z(2, bits);
    auto mac = verify(IdentityKind::Macdonald, p, z, std::nullopt, ctx, v);
    auto bai = verify(IdentityKind::BaileyDougall, p, z, std::nullopt, ctx, v);
    LatticePoint origin{0, 0};
    Complex middle = macdonald_term(z, origin, p, ctx).to_complex();
    Real e1 = rel(bai.lhs * middle, mac.lhs), e2 = rel(bai.rhs * middle, mac.rhs);
    ok = mac.pass && bai.pass && e1.to_double() < 1e-18 && e2.to_double() < 1e-60;
    return "lhs rel " + sci(e1) + ", rhs rel " + sci(e2);
  }));

  out.push_back(property("hat-involution", [&](bool& ok) {
    auto rng = seeded(options.seed, 4);
    Real worst(0L, 64);
    for (int i = 0; i < 100; ++i) {
      std::array<Complex, 4> v;
      for (auto& x : v) x = Complex(4.0 * unit(rng) - 2.0, 4.0 * unit(rng) - 2.0, bits);
      auto back = hat_transform(hat_transform(v));
      for (std::size_t r = 0; r < 4; ++r) {
        Real e = abs(back[r] - v[r]);
        if (e > worst) worst = e;
        if (e.to_double() > 1e-70) ok = false;
      }
    }
    return "100 samples, max deviation " + sci(worst);
  }));

  out.push_back(property("permutation-invariance", [&](bool& ok) {
    // Relabel the couplings by sigma and compose perm with it: the roles, hence
    // every value, are unchanged.
    VerifyOptions v = verify_options(1e-20, 60, options);
    ParameterSet mac = make_parameters(1, "0.5", "0", {"0.1", "0.2", "0.3", "0.4"}, bits);
    ParameterSet rog = make_parameters(2, "0.5", "-0.15", {"-0.1", "-0.2", "-0.3", "-0.4"}, bits);
    ParameterSet ter = make_parameters(2, "0.5", "0.35", {"0.1", "-2.45", "0.3", "0.4"}, bits);
    Vec z = generic_z(1, bits);
    auto base_mac = verify(IdentityKind::Macdonald, mac, z, std::nullopt, ctx, v);
    auto base_rog = verify(IdentityKind::RogersNonterminating, rog, {}, std::nullopt, ctx, v);
    auto base_ter = verify(IdentityKind::Terminating, ter, {}, 2, ctx, v);
    Complex base_rhs2 = macdonald_rhs_hat_form(standard(2, bits), ctx);
    auto relabel = [](ParameterSet p, const Permutation& sigma) {
      ParameterSet out = p;
      for (std::size_t i = 0; i < 4; ++i) out.gr[static_cast<std::size_t>(sigma[i])] = p.gr[i];
      for (std::size_t r = 0; r < 4; ++r) out.perm[r] = sigma[static_cast<std::size_t>(p.perm[r])];
      return out;
    };
    Real worst(0L, 64);
    auto track = [&](const Real& e, double limit) {
      if (e > worst) worst = e;
      if (e.to_double() > limit) ok = false;
    };
    for (const auto& sigma : all_permutations()) {
      auto m = verify(IdentityKind::Macdonald, relabel(mac, sigma), z, std::nullopt, ctx, v);
      auto r = verify(IdentityKind::RogersNonterminating, relabel(rog, sigma), {}, std::nullopt, ctx, v);
      auto t = verify(IdentityKind::Terminating, relabel(ter, sigma), {}, 2, ctx, v);
      ok = ok && m.pass == base_mac.pass && r.pass == base_rog.pass && t.pass == base_ter.pass;
      ok = ok && m.pass && r.pass && t.pass;
      track(rel(m.rhs, base_mac.rhs), 1e-60);
      track(rel(r.rhs, base_rog.rhs), 1e-60);
      track(rel(t.rhs, base_ter.rhs), 1e-60);
      ParameterSet h = standard(2, bits);
      h.perm = sigma;
      track(rel(macdonald_rhs_hat_form(h, ctx), base_rhs2), 1e-60);
    }
    return "24 relabelings, max rhs deviation " + sci(worst);
  }));

  out.push_back(property("tail-soundness", [&](bool& ok) {
    auto rng = seeded(options.seed, 5);
    int checked = 0;
    Real ratio_max(0L, 64);
    for (int i = 0; i < 20; ++i) {
      int n = 1 + i % 2;
      int family = i % 5;
      std::string g = decimal(0.4 * unit(rng));
      std::array<std::string, 4> gr;
      ParameterSet p;
      std::unique_ptr<LatticeTerm> term;
      RegionKind region = RegionKind::Bilateral;
      IdentityKind kind = IdentityKind::Macdonald;
      if (family == 4) {
        // unilateral: negative couplings
        for (auto& s : gr) s = decimal(-0.05 - 0.3 * unit(rng));
        p = make_parameters(n, decimal(0.3 + 0.4 * unit(rng)), decimal(-0.1 * unit(rng)), gr, bits);
        kind = IdentityKind::RogersNonterminating;
        region = RegionKind::Cone;
        term = make_rogers_term(p, ctx);
      } else {
        for (auto& s : gr) s = decimal(0.5 * unit(rng) - 0.1);
        const bool q1 = family == 3;
        if (q1)
          for (auto& s : gr) s = decimal(1.0 + unit(rng));
        p = make_parameters(n, q1 ? "1" : decimal(0.3 + 0.4 * unit(rng)), g, gr, bits);
        term = make_macdonald_term(generic_z(n, bits), p, ctx);
      }
      auto model = decay_model(kind, p);
      long r = 2 + static_cast<long>(i % 4);
      Real bound = tail_bound(*term, model, r, region, ctx);
      Real omitted(0L, bits);
      for (long s = r + 1; s <= 2 * r; ++s) {
        auto points = region == RegionKind::Cone ? enumerate_cone_slice(n, s) : enumerate_shell(n, s);
        for (const auto& l : points) omitted = omitted + abs((*term)(l));
      }
      if (omitted > bound) ok = false;
      if (!bound.is_zero()) {
        Real ratio = omitted / bound;
        if (ratio > ratio_max) ratio_max = ratio;
      }
      ++checked;
    }
    return std::to_string(checked) + " configurations, max omitted/bound " + sci(ratio_max);
  }));

  return out;
}

}  // namespace vwp
