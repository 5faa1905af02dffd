#include "vwp/identities.hpp"

#include <chrono>

#include "json.hpp"

namespace vwp {

namespace {

using Vec = std::vector<Complex>;

Complex one(Precision bits) { return Complex(1L, bits); }

Complex pole_checked(const Complex& num, const Complex& den, const char* what) {
  if (den.is_zero()) throw Error(ErrorKind::PoleHit, what);
  return num / den;
}

// prod (q^{num};q)_inf / prod (q^{den};q)_inf over linear exponents.
Complex inf_ratio(const FloatRing& ring, std::initializer_list<Lin> num, std::initializer_list<Lin> den,
                  const char* what) {
  Complex top = ring.one(), bottom = ring.one();
  for (const Lin& e : num) top *= ring.infinite(e);
  for (const Lin& e : den) bottom *= ring.infinite(e);
  return pole_checked(top, bottom, what);
}

std::string format(const Real& x, int digits) {
  if (!x.is_finite()) return x.str();
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, x.get());
  return buf.data();
}

std::string format(const Complex& z, int digits) {
  if (z.im.is_zero()) return format(z.re, digits);
  std::string im = format(z.im, digits);
  if (im[0] != '-') im = "+" + im;
  return format(z.re, digits) + im + "i";
}

Real to_real(const mpq_class& v, Precision bits) {
  Real out(bits);
  mpfr_set_q(out.get(), v.get_mpq_t(), MPFR_RNDN);
  return out;
}

Real relative(const Complex& a, const Complex& b) {
  Real diff = abs(a - b);
  Real scale = abs(b);
  return scale.is_zero() ? diff : diff / scale;
}

Real exact_relative(const mpq_class& a, const mpq_class& b) {
  if (a == b) return Real(0L, 64);
  mpq_class d = a - b;
  if (sgn(b) != 0) d /= b;
  return abs(to_real(d, 64));
}

void echo(VerificationReport& report, IdentityKind kind, const ParameterSet& params, const Vec& z,
          std::optional<long> N, const PrecisionContext& ctx, const Real& tol) {
  report.kind = kind;
  report.mode = Mode::Float;
  report.n = params.n;
  report.q = params.degenerate ? "1" : format(params.q, 30);
  report.g = format(params.g, 30);
  for (std::size_t r = 0; r < 4; ++r) report.gr[r] = format(params.gr[r], 30);
  for (const auto& c : params.couplings) report.couplings.push_back(format(c, 30));
  report.perm = params.perm;
  for (const auto& v : z) report.z.push_back(format(v, 30));
  report.N = N;
  report.precision_bits = ctx.bits;
  report.tolerance = tol;
  report.lhs = report.rhs = Complex(ctx.bits);
  report.abs_err = report.rel_err = report.tail_bound = Real(0L, 64);
}

void finalize(VerificationReport& report, const Complex& lhs, const Complex& rhs, const Real& tail) {
  report.lhs = lhs;
  report.rhs = rhs;
  report.abs_err = abs(lhs - rhs);
  report.rel_err = relative(lhs, rhs);
  report.tail_bound = tail;
  Real allowance = report.tolerance;
  Real scale = abs(rhs);
  if (!scale.is_zero()) allowance = allowance + tail / scale;
  bool ok = report.rel_err <= allowance;
  for (const auto& c : report.checks) ok = ok && c.rel_err <= report.tolerance;
  report.pass = ok;
}

void record(VerificationReport& report, const SumResult& s) {
  report.radius_used = s.radius_used;
  report.terms_evaluated = s.terms_evaluated;
}

void record_error(VerificationReport& report, const Error& e) {
  report.error = e.kind();
  report.error_detail = e.detail();
  report.pass = false;
}

SumOptions sum_options(const VerifyOptions& options, const Real& tol) {
  SumOptions s;
  s.tolerance = tol / 16L;
  s.max_radius = options.max_radius;
  s.threads = options.threads;
  return s;
}

void require_generic(const Vec& z, const ParameterSet& params, IdentityKind kind, const VerifyOptions& options) {
  if (options.skip_genericity) return;
  auto violations = check_genericity(z, params, kind);
  if (violations.empty()) return;
  std::string what;
  for (const auto& v : violations) what += (what.empty() ? "" : ", ") + v.what;
  throw Error(ErrorKind::GenericityViolated, "evaluation point near a pole or degeneracy: " + what);
}

Vec resolve_z(const Vec& z, const ParameterSet& params) {
  Vec out = z.empty() ? default_z(params.n, params.precision()) : z;
  if (static_cast<int>(out.size()) != params.n)
    throw Error(ErrorKind::InvalidParameters, "z must have n = " + std::to_string(params.n) + " components");
  return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

SumResult macdonald_sum(const ParameterSet& params, const Vec& z, const PrecisionContext& ctx,
                        const VerifyOptions& options, const Real& tol) {
  require_generic(z, params, IdentityKind::Macdonald, options);
  auto model = decay_model(IdentityKind::Macdonald, params);
  return sum_bilateral(*make_macdonald_term(z, params, ctx), model, sum_options(options, tol), ctx);
}

}  // namespace

// ---------------------------------------------------------------------------

Complex macdonald_rhs(const ParameterSet& params, const PrecisionContext& ctx) {
  Nome nome(params, ctx);
  const int n = params.n;
  const Complex& g = params.g;
  const Complex sum = params.coupling_sum();
  Complex out = one(ctx.bits);
  for (int j = 1; j <= n; ++j) {
    Complex num = nome.q_infinity() * nome.infinite(g * static_cast<long>(j) + 1L);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t s = r + 1; s < 4; ++s)
        num *= nome.infinite(g * static_cast<long>(n - j) + params.gr[r] + params.gr[s] + 1L);
    Complex den = nome.infinite(g + 1L) * nome.infinite(g * static_cast<long>(2 * n - j - 1) + sum + 1L);
    out *= pole_checked(num, den, "Macdonald constant");
  }
  return out;
}

Complex macdonald_rhs_hat_form(const ParameterSet& params, const PrecisionContext& ctx) {
  FloatRing ring(params, ctx);
  const int n = params.n;
  const Permutation& perm = params.perm;
  const Lin g = Lin::g();
  Complex out = one(ctx.bits);
  for (int j = 1; j <= n; ++j) {
    const Lin hj = rho_hat_lin(n, j, perm);
    for (int k = j + 1; k <= n; ++k) {
      const Lin hk = rho_hat_lin(n, k, perm);
      out *= inf_ratio(ring, {1L + g + hj + hk, 1L + g + hj - hk, 1L - g + hj + hk, 1L - g + hj - hk},
                       {1L + hj + hk, 1L + hj - hk, 1L + hj + hk, 1L + hj - hk}, "Macdonald constant (hat form)");
    }
    Complex top = ring.one();
    for (int r = 0; r < 4; ++r) {
      const Lin h = Lin::hat(perm, r);
      top *= ring.infinite(1L + h + hj) * ring.infinite(1L - h + hj);
    }
    out *= pole_checked(top, pow(ring.infinite(1L + 2L * hj), 2), "Macdonald constant (hat form)");
  }
  return out;
}

Complex aomoto_rhs(const Vec& z, const ParameterSet& params, const PrecisionContext& ctx) {
  return aomoto_factor(z, params, ctx).to_complex() * macdonald_rhs(params, ctx);
}

Complex bailey_rhs(const Vec& z, const ParameterSet& params, const PrecisionContext& ctx) {
  std::vector<long> origin(static_cast<std::size_t>(params.n), 0L);
  return pole_checked(macdonald_rhs(params, ctx), macdonald_term(z, origin, params, ctx).to_complex(),
                      "middle term");
}

Complex rogers_rhs(const ParameterSet& params, const PrecisionContext& ctx) {
  FloatRing ring(params, ctx);
  const int n = params.n;
  const Permutation& perm = params.perm;
  const Lin g = Lin::g();
  Complex out = one(ctx.bits);
  for (int j = 1; j <= n; ++j) {
    const Lin rj = rho_lin(n, j, perm), hj = rho_hat_lin(n, j, perm);
    for (int k = j + 1; k <= n; ++k) {
      const Lin rk = rho_lin(n, k, perm), hk = rho_hat_lin(n, k, perm);
      out *= inf_ratio(ring, {1L + rj + rk, 1L + rj - rk, 1L + g - hj - hk, 1L + g - hj + hk},
                       {1L - g + rj + rk, 1L - g + rj - rk, 1L - hj - hk, 1L - hj + hk}, "unilateral norm");
    }
    Complex top = ring.infinite(1L + 2L * rj), bottom = ring.infinite(1L - 2L * hj);
    for (int r = 0; r < 4; ++r) {
      top *= ring.infinite(1L + Lin::hat(perm, r) - hj);
      bottom *= ring.infinite(1L - Lin::coupling(r) + rj);
    }
    out *= pole_checked(top, bottom, "unilateral norm");
  }
  return out;
}

Complex rogers_rhs_simplified(const ParameterSet& params, const PrecisionContext& ctx) {
  FloatRing ring(params, ctx);
  const int n = params.n;
  const Permutation& perm = params.perm;
  const Lin g = Lin::g(), ga = Lin::role(perm, 0), sum = Lin::coupling_sum();
  Complex out = one(ctx.bits);
  for (int j = 1; j <= n; ++j) {
    const long a1 = 2L * n - j - 1, a0 = n - j;
    Complex top = ring.infinite(1L + a1 * g + 2L * ga), bottom = ring.infinite(1L - a1 * g - sum);
    for (int r = 1; r < 4; ++r) {
      const Lin gr = Lin::role(perm, r);
      bottom *= ring.infinite(1L + a0 * g + ga - gr);
      for (int s = r + 1; s < 4; ++s) top *= ring.infinite(1L - a0 * g - gr - Lin::role(perm, s));
    }
    out *= pole_checked(top, bottom, "unilateral norm (simplified)");
  }
  return out;
}

Complex gustafson_rhs(const ParameterSet& params, const PrecisionContext& ctx) {
  const auto& c = params.couplings;
  if (static_cast<int>(c.size()) != 2 * params.n + 2)
    throw Error(ErrorKind::InvalidParameters, "Gustafson sum needs 2n+2 couplings");
  Nome nome(params, ctx);
  Complex num = pow(nome.q_infinity(), params.n);
  Complex sum(ctx.bits);
  for (std::size_t r = 0; r < c.size(); ++r) {
    sum += c[r];
    for (std::size_t s = r + 1; s < c.size(); ++s) num *= nome.infinite(c[r] + c[s] + 1L);
  }
  return pole_checked(num, nome.infinite(sum + 1L), "Gustafson constant");
}

Complex recurrence_factor(const ParameterSet& params, const PrecisionContext& ctx) {
  Nome nome(params, ctx);
  const Complex& g = params.g;
  Complex num = nome.q_infinity() * nome.infinite(g * static_cast<long>(params.n) + 1L);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t s = r + 1; s < 4; ++s) num *= nome.infinite(params.gr[r] + params.gr[s] + 1L);
  Complex den =
      nome.infinite(g + 1L) * nome.infinite(g * static_cast<long>(params.n - 1) + params.coupling_sum() + 1L);
  return pole_checked(num, den, "recurrence factor");
}

TerminatingForms<Complex> terminating_rhs_forms(const ParameterSet& params, long N, const PrecisionContext& ctx) {
  if (N < 0 || !check_truncation(params, N))
    throw Error(ErrorKind::TruncationViolated, "(n-1)g + g_a + g_b + N != 0 for N = " + std::to_string(N));
  FloatRing ring(params, ctx);
  return terminating_forms(ring, params.n, params.perm, N);
}

Complex terminating_rhs(const ParameterSet& params, long N, const PrecisionContext& ctx) {
  return terminating_rhs_forms(params, N, ctx).line1;
}

// ---------------------------------------------------------------------------

bool RationalPoint::truncation_holds() const {
  mpq_class m = x[static_cast<std::size_t>(perm[0])] * x[static_cast<std::size_t>(perm[1])];
  for (int i = 0; i < n - 1; ++i) m *= t;
  for (long i = 0; i < N; ++i) m *= q;
  return m == 1;
}

RationalPoint random_rational_point(int n, long N, const Permutation& perm, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> small(1, 9), sign(0, 1);
  auto draw = [&](bool signed_value) {
    for (;;) {
      mpq_class v(small(rng), small(rng));
      v.canonicalize();
      if (signed_value && sign(rng) == 1) v = -v;
      if (v != 1 && v != -1) return v;
    }
  };
  RationalPoint p;
  p.n = n;
  p.N = N;
  p.perm = perm;
  do p.q = draw(false);
  while (p.q > 1);
  p.t = draw(true);
  for (int r : {0, 2, 3}) p.x[static_cast<std::size_t>(perm[static_cast<std::size_t>(r)])] = draw(true);
  mpq_class m = p.x[static_cast<std::size_t>(perm[0])];
  for (int i = 0; i < n - 1; ++i) m *= p.t;
  for (long i = 0; i < N; ++i) m *= p.q;
  p.x[static_cast<std::size_t>(perm[1])] = 1 / m;
  return p;
}

// ---------------------------------------------------------------------------

const char* to_string(Mode mode) { return mode == Mode::Float ? "float" : "rational"; }

bool is_precondition_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConvergenceViolated:
    case ErrorKind::GenericityViolated:
    case ErrorKind::TruncationViolated:
    case ErrorKind::InvalidParameters:
    case ErrorKind::NomeOutOfRange:
    case ErrorKind::PoleHit:
    case ErrorKind::PoleAtNonpositiveInteger:
    case ErrorKind::ThetaZeroHit:
    case ErrorKind::DivisionByVanishingFactor:
    case ErrorKind::ZeroArgument: return true;
    case ErrorKind::RadiusExhausted: return false;
  }
  return false;
}

std::string VerificationReport::to_json(bool include_timing) const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["identity"] = vwp::to_string(kind);
  j["mode"] = vwp::to_string(mode);
  j["n"] = n;
  j["q"] = q;
  j["g"] = g;
  j["g_r"] = gr;
  if (!couplings.empty()) j["couplings"] = couplings;
  ordered_json p = ordered_json::array();
  for (int v : perm) p.push_back(v + 1);
  j["perm"] = p;
  j["z"] = z;
  j["N"] = N ? ordered_json(*N) : ordered_json(nullptr);
  j["precision_bits"] = precision_bits;
  j["radius_used"] = radius_used;
  j["terms_evaluated"] = terms_evaluated;
  j["lhs"] = {{"re", format(lhs.re, 40)}, {"im", format(lhs.im, 40)}};
  j["rhs"] = {{"re", format(rhs.re, 40)}, {"im", format(rhs.im, 40)}};
  if (mode == Mode::Rational) {
    j["lhs_exact"] = lhs_exact;
    j["rhs_exact"] = rhs_exact;
  }
  j["abs_err"] = format(abs_err, 6);
  j["rel_err"] = format(rel_err, 6);
  j["tail_bound"] = format(tail_bound, 6);
  j["tolerance"] = format(tolerance, 6);
  ordered_json c = ordered_json::object();
  for (const auto& check : checks) c[check.name] = format(check.rel_err, 6);
  j["checks"] = c;
  if (include_timing) j["wall_time_ms"] = wall_time_ms;
  j["verdict"] = pass ? "pass" : "fail";
  j["error"] = error ? ordered_json{{"kind", vwp::to_string(*error)}, {"detail", error_detail}} : ordered_json(nullptr);
  return j.dump(2);
}

Real default_tolerance(Precision bits) {
  Real ten(10L, 64);
  return pow(ten, -static_cast<long>(bits / 8));
}

// ---------------------------------------------------------------------------

VerificationReport verify(IdentityKind kind, const ParameterSet& params, const Vec& z_in, std::optional<long> N,
                          const PrecisionContext& ctx, const VerifyOptions& options) {
  if (kind == IdentityKind::Recurrence) return recurrence_check(params, z_in, ctx, options);
  auto start = std::chrono::steady_clock::now();
  const Real tol = options.tolerance.value_or(default_tolerance(ctx.bits));
  const bool unilateral = kind == IdentityKind::RogersNonterminating || kind == IdentityKind::Terminating;
  VerificationReport report;
  echo(report, kind, params, unilateral ? Vec{} : z_in, N, ctx, tol);
  try {
    params.validate();
    ctx.validate();
    Vec z = unilateral ? Vec{} : resolve_z(z_in, params);
    if (!unilateral) {
      report.z.clear();
      for (const auto& v : z) report.z.push_back(format(v, 30));
    }
    const SumOptions sum = sum_options(options, tol);
    switch (kind) {
      case IdentityKind::Macdonald: {
        SumResult s = macdonald_sum(params, z, ctx, options, tol);
        record(report, s);
        Complex rhs = macdonald_rhs(params, ctx);
        report.checks.push_back({"hat_form", relative(macdonald_rhs_hat_form(params, ctx), rhs)});
        finalize(report, s.value, rhs, s.tail_bound);
        break;
      }
      case IdentityKind::AomotoIto: {
        require_generic(z, params, kind, options);
        auto model = decay_model(kind, params);
        SumResult s = sum_bilateral(*make_aomoto_term(z, params, ctx, options.term_options), model, sum, ctx);
        record(report, s);
        Complex factor = aomoto_factor(z, params, ctx).to_complex();
        Vec minus_z;
        for (const auto& v : z) minus_z.push_back(-v);
        Complex c_ratio = c_plus(minus_z, params, ctx).to_complex() / c_minus(z, params, ctx).to_complex();
        report.checks.push_back({"factor_c_ratio", relative(c_ratio, factor)});
        finalize(report, s.value, factor * macdonald_rhs(params, ctx), s.tail_bound);
        break;
      }
      case IdentityKind::BaileyDougall: {
        require_generic(z, params, kind, options);
        auto model = decay_model(kind, params);
        SumResult s = sum_bilateral(*make_bailey_term(z, params, ctx), model, sum, ctx);
        record(report, s);
        finalize(report, s.value, bailey_rhs(z, params, ctx), s.tail_bound);
        break;
      }
      case IdentityKind::RogersNonterminating: {
        auto model = decay_model(kind, params);
        SumResult s = sum_cone(*make_rogers_term(params, ctx), model, sum, ctx);
        record(report, s);
        Complex rhs = rogers_rhs(params, ctx);
        report.checks.push_back({"simplified", relative(rogers_rhs_simplified(params, ctx), rhs)});
        finalize(report, s.value, rhs, s.tail_bound);
        break;
      }
      case IdentityKind::Terminating: {
        if (!N) throw Error(ErrorKind::InvalidParameters, "the terminating identity needs N");
        auto forms = terminating_rhs_forms(params, *N, ctx);
        SumResult s = sum_alcove(*make_rogers_term(params, ctx), *N, sum, ctx);
        record(report, s);
        report.checks.push_back({"line2", relative(forms.line2, forms.line1)});
        report.checks.push_back({"simplified1", relative(forms.simple1, forms.line1)});
        report.checks.push_back({"simplified2", relative(forms.simple2, forms.line1)});
        report.checks.push_back({"squared", relative(forms.squared, forms.line1 * forms.line1)});
        finalize(report, s.value, forms.line1, s.tail_bound);
        break;
      }
      case IdentityKind::Gustafson: {
        require_generic(z, params, kind, options);
        auto model = decay_model(kind, params);
        SumResult s = sum_bilateral(*make_gustafson_term(z, params, ctx), model, sum, ctx);
        record(report, s);
        finalize(report, s.value, gustafson_rhs(params, ctx), s.tail_bound);
        break;
      }
      case IdentityKind::Recurrence: break;
    }
  } catch (const RadiusExhausted& e) {
    record(report, e.partial());
    report.lhs = e.partial().value;
    report.tail_bound = e.partial().tail_bound;
    record_error(report, e);
  } catch (const Error& e) {
    record_error(report, e);
  }
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

VerificationReport verify_rational(const RationalPoint& point) {
  auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.kind = IdentityKind::Terminating;
  report.mode = Mode::Rational;
  report.n = point.n;
  report.q = point.q.get_str();
  report.g = point.t.get_str();
  for (std::size_t r = 0; r < 4; ++r) report.gr[r] = point.x[r].get_str();
  report.perm = point.perm;
  report.N = point.N;
  report.precision_bits = 256;
  report.tolerance = report.abs_err = report.rel_err = report.tail_bound = Real(0L, 64);
  report.lhs = report.rhs = Complex(256);
  try {
    if (!is_permutation(point.perm)) throw Error(ErrorKind::InvalidParameters, "perm is not a permutation");
    if (point.N < 0) throw Error(ErrorKind::InvalidParameters, "N must be nonnegative");
    if (!point.truncation_holds())
      throw Error(ErrorKind::TruncationViolated, "x_a x_b t^(n-1) q^N != 1 at the rational point");
    RationalRing ring = point.ring();
    mpq_class lhs(0);
    auto alcove = enumerate_alcove(point.n, point.N);
    for (const auto& l : alcove) lhs += rogers_weight(ring, point.n, point.perm, l);
    auto forms = terminating_forms(ring, point.n, point.perm, point.N);
    report.terms_evaluated = static_cast<long>(alcove.size());
    report.radius_used = point.N;
    report.lhs_exact = lhs.get_str();
    report.rhs_exact = forms.line1.get_str();
    report.lhs = Complex(to_real(lhs, 256));
    report.rhs = Complex(to_real(forms.line1, 256));
    report.abs_err = abs(to_real(lhs - forms.line1, 64));
    report.rel_err = exact_relative(lhs, forms.line1);
    report.checks.push_back({"line2", exact_relative(forms.line2, forms.line1)});
    report.checks.push_back({"simplified1", exact_relative(forms.simple1, forms.line1)});
    report.checks.push_back({"simplified2", exact_relative(forms.simple2, forms.line1)});
    report.checks.push_back({"squared", exact_relative(forms.squared, forms.line1 * forms.line1)});
    bool ok = lhs == forms.line1;
    for (const auto& c : report.checks) ok = ok && c.rel_err.is_zero();
    report.pass = ok;
  } catch (const Error& e) {
    record_error(report, e);
  }
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

VerificationReport z_independence_check(const ParameterSet& params, const Vec& z1, const Vec& z2,
                                        const PrecisionContext& ctx, const VerifyOptions& options) {
  auto start = std::chrono::steady_clock::now();
  const Real tol = options.tolerance.value_or(default_tolerance(ctx.bits));
  VerificationReport report;
  echo(report, IdentityKind::Macdonald, params, z1, std::nullopt, ctx, tol);
  for (const auto& v : z2) report.z.push_back(format(v, 30));
  try {
    params.validate();
    SumResult a = macdonald_sum(params, resolve_z(z1, params), ctx, options, tol);
    SumResult b = macdonald_sum(params, resolve_z(z2, params), ctx, options, tol);
    report.radius_used = std::max(a.radius_used, b.radius_used);
    report.terms_evaluated = a.terms_evaluated + b.terms_evaluated;
    finalize(report, a.value, b.value, a.tail_bound + b.tail_bound);
  } catch (const RadiusExhausted& e) {
    record(report, e.partial());
    record_error(report, e);
  } catch (const Error& e) {
    record_error(report, e);
  }
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

VerificationReport recurrence_check(const ParameterSet& params, const Vec& z_in, const PrecisionContext& ctx,
                                    const VerifyOptions& options) {
  auto start = std::chrono::steady_clock::now();
  const Real tol = options.tolerance.value_or(default_tolerance(ctx.bits));
  VerificationReport report;
  echo(report, IdentityKind::Recurrence, params, z_in, std::nullopt, ctx, tol);
  try {
    params.validate();
    Vec z = resolve_z(z_in, params);
    report.z.clear();
    for (const auto& v : z) report.z.push_back(format(v, 30));
    SumResult top = macdonald_sum(params, z, ctx, options, tol);
    Complex lhs = top.value;
    Real rel_tail = top.tail_bound / abs(top.value);
    report.radius_used = top.radius_used;
    report.terms_evaluated = top.terms_evaluated;
    if (params.n > 1) {
      ParameterSet lower = params;
      lower.n = params.n - 1;
      for (auto& g : lower.gr) g = g + params.g / 2L;
      Vec zl(z.begin(), z.end() - 1);
      SumResult bottom = macdonald_sum(lower, zl, ctx, options, tol);
      lhs = lhs / bottom.value;
      rel_tail = rel_tail + bottom.tail_bound / abs(bottom.value);
      report.radius_used = std::max(report.radius_used, bottom.radius_used);
      report.terms_evaluated += bottom.terms_evaluated;
    }
    Complex rhs = recurrence_factor(params, ctx);
    finalize(report, lhs, rhs, rel_tail * abs(rhs) * 2L);
  } catch (const RadiusExhausted& e) {
    record(report, e.partial());
    record_error(report, e);
  } catch (const Error& e) {
    record_error(report, e);
  }
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

// ---------------------------------------------------------------------------

VerificationReport classical_n1(IdentityKind kind, const ParameterSet& params, const Complex& z,
                                std::optional<long> N, const PrecisionContext& ctx, const VerifyOptions& options) {
  auto start = std::chrono::steady_clock::now();
  const Real tol = options.tolerance.value_or(default_tolerance(ctx.bits));
  const bool bilateral = kind == IdentityKind::BaileyDougall;
  VerificationReport report;
  echo(report, kind, params, bilateral ? Vec{z} : Vec{}, N, ctx, tol);
  try {
    params.validate();
    if (params.n != 1) throw Error(ErrorKind::InvalidParameters, "classical sums have n = 1");
    const SumOptions sum = sum_options(options, tol);
    auto ring = std::make_shared<FloatRing>(params, ctx);
    const Nome& nome = ring->nome();
    const Permutation perm = params.perm;
    if (bilateral) {
      require_generic({z}, params, kind, options);
      const ParameterSet& p = params;
      const Complex s1 = params.coupling_sum() + 1L;
      FunctionTerm series(1, [&nome, &p, z, s1](std::span<const long> l) {
        long m = l[0];
        Complex v = nome.pow(s1 * m) * nome.bracket(z * 2L + 2L * m) / nome.bracket(z * 2L);
        for (const auto& g : p.gr) v *= nome.factorial(z - g, m) * nome.inv_factorial(g + z + 1L, m);
        return v;
      });
      auto model = decay_model(IdentityKind::Macdonald, params);
      SumResult s = sum_bilateral(series, model, sum, ctx);
      record(report, s);
      Complex closed = nome.infinite(z * 2L + 1L) * nome.infinite(1L - z * 2L);
      Complex den = one(ctx.bits);
      for (const auto& g : params.gr) den *= nome.infinite(g + z + 1L) * nome.infinite(g - z + 1L);
      closed = pole_checked(closed, den, "classical bilateral closed form");
      Complex num = nome.q_infinity();
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t t = r + 1; t < 4; ++t) num *= nome.infinite(params.gr[r] + params.gr[t] + 1L);
      closed *= pole_checked(num, nome.infinite(s1), "classical bilateral closed form");
      SumResult multi = sum_bilateral(*make_bailey_term({z}, params, ctx), model, sum, ctx);
      report.checks.push_back({"multiple_sum", relative(multi.value, s.value)});
      report.checks.push_back({"multiple_rhs", relative(bailey_rhs({z}, params, ctx), closed)});
      finalize(report, s.value, closed, s.tail_bound + multi.tail_bound);
    } else if (kind == IdentityKind::RogersNonterminating) {
      FunctionTerm series(1, [ring, perm](std::span<const long> l) {
        return classical_unilateral_summand(*ring, perm, l[0]);
      });
      auto model = decay_model(kind, params);
      SumResult s = sum_cone(series, model, sum, ctx);
      record(report, s);
      const Lin ga = Lin::role(perm, 0), gb = Lin::role(perm, 1), gc = Lin::role(perm, 2), gd = Lin::role(perm, 3);
      Complex closed = inf_ratio(*ring, {1L + 2L * ga, 1L - gb - gc, 1L - gb - gd, 1L - gc - gd},
                                 {1L + ga - gb, 1L + ga - gc, 1L + ga - gd, 1L - Lin::coupling_sum()},
                                 "classical unilateral closed form");
      SumResult multi = sum_cone(*make_rogers_term(params, ctx), model, sum, ctx);
      report.checks.push_back({"multiple_sum", relative(multi.value, s.value)});
      report.checks.push_back({"multiple_rhs", relative(rogers_rhs(params, ctx), closed)});
      finalize(report, s.value, closed, s.tail_bound + multi.tail_bound);
    } else if (kind == IdentityKind::Terminating) {
      if (!N) throw Error(ErrorKind::InvalidParameters, "the terminating sum needs N");
      auto forms = terminating_rhs_forms(params, *N, ctx);
      CompensatedSum acc(ctx.bits);
      for (long l = 0; l <= *N; ++l) acc.add(classical_unilateral_summand(*ring, perm, l));
      report.radius_used = *N;
      report.terms_evaluated = *N + 1;
      Complex multi = sum_alcove(*make_rogers_term(params, ctx), *N, sum, ctx).value;
      report.checks.push_back({"second_form", relative(forms.simple2, forms.simple1)});
      report.checks.push_back({"multiple_sum", relative(multi, acc.value())});
      finalize(report, acc.value(), forms.simple1, Real(0L, 64));
    } else {
      throw Error(ErrorKind::InvalidParameters, std::string("no classical sum for ") + to_string(kind));
    }
  } catch (const RadiusExhausted& e) {
    record(report, e.partial());
    record_error(report, e);
  } catch (const Error& e) {
    record_error(report, e);
  }
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

VerificationReport classical_n1_rational(const RationalPoint& point) {
  auto start = std::chrono::steady_clock::now();
  VerificationReport report = verify_rational(point);
  if (report.error) return report;
  try {
    if (point.n != 1) throw Error(ErrorKind::InvalidParameters, "classical sums have n = 1");
    RationalRing ring = point.ring();
    mpq_class series(0);
    for (long l = 0; l <= point.N; ++l) series += classical_unilateral_summand(ring, point.perm, l);
    auto forms = terminating_forms(ring, 1, point.perm, point.N);
    mpq_class machinery(0);
    for (long l = 0; l <= point.N; ++l) {
      std::vector<long> lam{l};
      machinery += rogers_weight(ring, 1, point.perm, lam);
    }
    report.kind = IdentityKind::Terminating;
    report.lhs_exact = series.get_str();
    report.rhs_exact = forms.simple1.get_str();
    report.lhs = Complex(to_real(series, 256));
    report.rhs = Complex(to_real(forms.simple1, 256));
    report.abs_err = abs(to_real(series - forms.simple1, 64));
    report.rel_err = exact_relative(series, forms.simple1);
    report.checks.clear();
    report.checks.push_back({"second_form", exact_relative(forms.simple2, forms.simple1)});
    report.checks.push_back({"multiple_sum", exact_relative(machinery, series)});
    bool ok = series == forms.simple1;
    for (const auto& c : report.checks) ok = ok && c.rel_err.is_zero();
    report.pass = ok;
  } catch (const Error& e) {
    record_error(report, e);
  }
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

VerificationReport verify_random_rational(int n, long N, const Permutation& perm, std::mt19937_64& rng,
                                          int attempts) {
  VerificationReport last;
  for (int i = 0; i < attempts; ++i) {
    last = verify_rational(random_rational_point(n, N, perm, rng));
    if (!(last.error && *last.error == ErrorKind::DivisionByVanishingFactor)) return last;
  }
  return last;
}

}  // namespace vwp
