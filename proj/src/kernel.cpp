#include "vwp/kernel.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numbers>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace vwp {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByVanishingFactor: return "DivisionByVanishingFactor";
    case ErrorKind::NomeOutOfRange: return "NomeOutOfRange";
    case ErrorKind::ZeroArgument: return "ZeroArgument";
    case ErrorKind::PoleAtNonpositiveInteger: return "PoleAtNonpositiveInteger";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::ThetaZeroHit: return "ThetaZeroHit";
    case ErrorKind::ConvergenceViolated: return "ConvergenceViolated";
    case ErrorKind::RadiusExhausted: return "RadiusExhausted";
    case ErrorKind::TruncationViolated: return "TruncationViolated";
    case ErrorKind::GenericityViolated: return "GenericityViolated";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
  }
  return "Unknown";
}

namespace {

constexpr Precision kBoundBits = 64;

Real bound(double v) { return Real(v, kBoundBits); }

// log2 |z| in double; -inf for zero. Safe for magnitudes outside double range.
double log2_abs(const Complex& z) {
  if (z.is_zero()) return -INFINITY;
  long ere = z.re.is_zero() ? LONG_MIN : z.re.exponent2();
  long eim = z.im.is_zero() ? LONG_MIN : z.im.exponent2();
  long e = std::max(ere, eim);
  double re = z.re.is_zero() ? 0.0 : mpfr_get_d(ldexp(z.re, -e).get(), MPFR_RNDN);
  double im = z.im.is_zero() ? 0.0 : mpfr_get_d(ldexp(z.im, -e).get(), MPFR_RNDN);
  return static_cast<double>(e) + std::log2(std::hypot(re, im));
}

double abs_d(const Complex& z) { return std::hypot(z.re.to_double(), z.im.to_double()); }

}  // namespace

PrecisionContext PrecisionContext::with_bits(Precision bits) {
  PrecisionContext ctx;
  ctx.bits = bits;
  ctx.tolerance = ldexp(Real(1L, kBoundBits), -(static_cast<long>(bits) - 16));
  return ctx;
}

void PrecisionContext::validate() const {
  if (bits < 64) throw Error(ErrorKind::InvalidParameters, "precision_bits must be >= 64");
  if (!(tolerance.sign() > 0)) throw Error(ErrorKind::InvalidParameters, "target_tolerance must be > 0");
}

Real PrecisionContext::unit_roundoff() const { return ldexp(Real(1L, kBoundBits), 1 - static_cast<long>(bits)); }

// ---------------------------------------------------------------------------

Real normalize_phase(const Real& angle) {
  Real two_pi = Real::pi(angle.precision()) * 2L;
  Real out = angle - two_pi * round(angle / two_pi);
  Real pi = Real::pi(angle.precision());
  if (out <= -pi) out += two_pi;
  if (out > pi) out -= two_pi;
  return out;
}

LogComplex LogComplex::zero(Precision bits) { return {Real::infinity(bits, -1), Real(0L, bits)}; }

LogComplex LogComplex::from(const Complex& z) {
  if (z.is_zero()) return zero(z.precision());
  return {log(abs(z)), arg(z)};
}

Complex LogComplex::to_complex() const {
  if (is_zero()) return Complex(phase.precision());
  return exp(Complex(log_magnitude, phase));
}

LogComplex& LogComplex::operator*=(const LogComplex& rhs) {
  if (is_zero() || rhs.is_zero()) {
    *this = zero(std::max(phase.precision(), rhs.phase.precision()));
    return *this;
  }
  log_magnitude += rhs.log_magnitude;
  phase = normalize_phase(phase + rhs.phase);
  return *this;
}

LogComplex& LogComplex::operator/=(const LogComplex& rhs) {
  if (rhs.is_zero()) throw Error(ErrorKind::DivisionByVanishingFactor, "LogComplex division by zero");
  if (is_zero()) return *this;
  log_magnitude -= rhs.log_magnitude;
  phase = normalize_phase(phase - rhs.phase);
  return *this;
}

// ---------------------------------------------------------------------------

Complex qpoch_finite(const Complex& a, const Complex& q, long m) {
  Precision bits = std::max(a.precision(), q.precision());
  Complex result(1L, bits);
  if (m >= 0) {
    Complex pw = a;
    for (long k = 0; k < m; ++k) {
      result *= (1L - pw);
      if (k + 1 < m) pw *= q;
    }
    return result;
  }
  Complex qinv = reciprocal(q);
  Complex pw = a * qinv;
  for (long k = 1; k <= -m; ++k) {
    Complex f = 1L - pw;
    if (f.is_zero())
      throw Error(ErrorKind::DivisionByVanishingFactor, "factor 1 - a q^-" + std::to_string(k) + " vanishes");
    result *= f;
    pw *= qinv;
  }
  return reciprocal(result);
}

Certified<Complex> qpoch_infinite(const Complex& a_in, const Complex& q_in, const PrecisionContext& ctx) {
  const Precision bits = std::max({ctx.bits, a_in.precision(), q_in.precision()});
  Complex a = a_in.with_precision(bits);
  Complex q = q_in.with_precision(bits);
  const double lq = log2_abs(q);
  if (!(lq < 0.0)) throw Error(ErrorKind::NomeOutOfRange, "|q| must be < 1");
  if (a.is_zero()) return {Complex(1L, bits), bound(0.0)};

  const double la = log2_abs(a);
  const double abs_q = std::exp2(lq);
  const double ltol = log2_abs(Complex(ctx.tolerance));
  // Tail |log T| <= 2|a||q|^K/(1-|q|) =: delta once |a q^K| <= 1/2; require delta <= tol/4.
  double k_tail = (ltol - 3.0 + std::log2(1.0 - abs_q) - la) / lq;
  double k_half = (-1.0 - la) / lq;
  long K = static_cast<long>(std::ceil(std::max({0.0, k_tail, k_half})));

  const double u = std::exp2(1.0 - static_cast<double>(bits));
  Complex product(1L, bits);
  Complex pw = a;
  const bool real_q = q.is_real();
  double rel_rounding = 0.0;
  for (long k = 0; k < K; ++k) {
    Complex f = 1L - pw;
    if (f.is_zero()) return {Complex(bits), bound(0.0)};
    double pw_abs = abs_d(pw);
    double f_abs = abs_d(f);
    rel_rounding += (2.0 * k + 3.0) * u * pw_abs / f_abs + 3.0 * u;
    product *= f;
    if (real_q) pw *= q.re; else pw *= q;
  }
  // |P - P_K| <= |P_K| (e^delta - 1 + rounding); e^delta - 1 <= 2 delta for delta <= 1.
  double ldelta = 1.0 + la + static_cast<double>(K) * lq - std::log2(1.0 - abs_q);
  Real rel = ldexp(bound(2.0), static_cast<long>(std::ceil(ldelta))) + bound(rel_rounding * 1.25);
  Real err = round_up(abs(product), kBoundBits) * rel;
  return {std::move(product), std::move(err)};
}

Complex pochhammer(const Complex& a, long m) {
  Complex result(1L, a.precision());
  if (m >= 0) {
    for (long k = 0; k < m; ++k) result *= (a + k);
    return result;
  }
  for (long k = 1; k <= -m; ++k) {
    Complex f = a - k;
    if (f.is_zero())
      throw Error(ErrorKind::DivisionByVanishingFactor, "Pochhammer factor a-" + std::to_string(k) + " vanishes");
    result *= f;
  }
  return reciprocal(result);
}

// ---------------------------------------------------------------------------
// Gamma function: Spouge's formula
//   Gamma(z+1) = (z+a)^{z+1/2} e^{-(z+a)} [c_0 + sum_{k=1}^{a-1} c_k/(z+k) + eps]
// with relative error |eps| <= a^{-1/2} (2 pi)^{-(a+1/2)} for Re z >= 0.

namespace {

struct SpougeTable {
  long a = 0;
  Precision working_bits = 0;
  std::vector<Real> c;  // c[0..a-1]
};

long spouge_order(double log2_tol) {
  const double l2pi = std::log2(2.0 * std::numbers::pi);
  for (long a = 2;; ++a) {
    double l2eps = -0.5 * std::log2(static_cast<double>(a)) - (a + 0.5) * l2pi;
    if (l2eps <= log2_tol - 2.0) return a;
  }
}

std::shared_ptr<const SpougeTable> spouge_table(const PrecisionContext& ctx) {
  static std::mutex mutex;
  static std::map<std::pair<Precision, long>, std::shared_ptr<const SpougeTable>> cache;

  double ltol = std::min(log2_abs(Complex(ctx.tolerance)), -static_cast<double>(ctx.bits) + 8.0);
  long a = spouge_order(ltol);
  std::lock_guard lock(mutex);
  auto key = std::make_pair(ctx.bits, a);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  auto table = std::make_shared<SpougeTable>();
  table->a = a;
  // The coefficients alternate in sign and grow roughly like e^a; the sum
  // cancels back to O(1), so carry guard bits for that loss.
  table->working_bits = ctx.bits + 2 * a + 32;
  const Precision wp = table->working_bits;
  table->c.reserve(static_cast<std::size_t>(a));
  table->c.push_back(sqrt(Real::pi(wp) * 2L));
  Real factorial(1L, wp);  // (k-1)!
  for (long k = 1; k < a; ++k) {
    if (k > 1) factorial *= (k - 1);
    Real base(static_cast<long>(a - k), wp);
    Real ck = exp(log(base) * (Real(2 * k - 1, wp) / 2L) + base) / factorial;
    if ((k - 1) % 2 == 1) ck = -ck;
    table->c.push_back(std::move(ck));
  }
  cache.emplace(key, table);
  return table;
}

// log Gamma(z) for Re z >= 1/2, as a complex number whose real part is log|Gamma|
// and whose imaginary part is arg Gamma modulo 2 pi.
Complex log_gamma_right(const Complex& z_in, const PrecisionContext& ctx) {
  auto table = spouge_table(ctx);
  const Precision wp = table->working_bits;
  Complex z = z_in.with_precision(wp);
  Complex sum(table->c[0]);
  for (long k = 1; k < table->a; ++k) sum += Complex(table->c[static_cast<std::size_t>(k)]) / (z + k);
  Complex za = z + table->a;
  Complex half(Real(1L, wp) / 2L);
  Complex lg1 = (z + half) * log(za) - za + log(sum);  // log Gamma(z+1)
  return (lg1 - log(z)).with_precision(ctx.bits);
}

bool near_nonpositive_integer(const Complex& z, Precision bits) {
  if (z.re.sign() > 0) return false;
  Real n = round(z.re);
  Real thresh = ldexp(Real(1L, kBoundBits), -static_cast<long>(bits) / 2);
  return abs(z.re - n) <= thresh && abs(z.im) <= thresh;
}

}  // namespace

LogComplex log_gamma(const Complex& z_in, const PrecisionContext& ctx) {
  Complex z = z_in.with_precision(std::max(ctx.bits, z_in.precision()));
  if (z.im.is_zero() && z.re.is_integer() && z.re.sign() <= 0)
    throw Error(ErrorKind::PoleAtNonpositiveInteger, "Gamma pole at " + z.re.str(20));
  Real half(0.5, ctx.bits);
  Complex lg(ctx.bits);
  if (z.re >= half) {
    lg = log_gamma_right(z, ctx);
  } else {
    // Gamma(z) = pi / (sin(pi z) Gamma(1-z))
    Complex s = sin_reflection(z);
    if (s.is_zero()) throw Error(ErrorKind::PoleAtNonpositiveInteger, "Gamma pole at " + z.re.str(20));
    lg = Complex(log(Real::pi(ctx.bits))) - log(s) - log_gamma_right(1L - z, ctx);
  }
  return {lg.re, normalize_phase(lg.im)};
}

Complex gamma(const Complex& z, const PrecisionContext& ctx) { return log_gamma(z, ctx).to_complex(); }

Complex rgamma(const Complex& z, const PrecisionContext& ctx) {
  if (near_nonpositive_integer(z, ctx.bits)) return Complex(ctx.bits);
  LogComplex lg = log_gamma(z, ctx);
  return LogComplex{-lg.log_magnitude, normalize_phase(-lg.phase)}.to_complex();
}

Complex sin_reflection(const Complex& z) {
  const Precision bits = z.precision();
  Real pi = Real::pi(bits);
  Real s(bits), c(bits);
  if (z.re.is_integer()) {
    // sin(pi n) = 0, cos(pi n) = (-1)^n exactly.
    Real half = z.re / 2L;
    s = Real(0L, bits);
    c = Real(half.is_integer() ? 1L : -1L, bits);
  } else {
    mpfr_sin_cos(s.get(), c.get(), (pi * z.re).get(), MPFR_RNDN);
  }
  if (z.im.is_zero()) return {std::move(s), Real(0L, bits)};
  Real sh(bits), ch(bits);
  mpfr_sinh_cosh(sh.get(), ch.get(), (pi * z.im).get(), MPFR_RNDN);
  return {s * ch, c * sh};
}

// ---------------------------------------------------------------------------

namespace {

void check_theta_args(const Complex& zeta, const Complex& q) {
  if (zeta.is_zero()) throw Error(ErrorKind::ZeroArgument, "theta argument must be nonzero");
  double lq = log2_abs(q);
  if (!(lq < 0.0) || q.is_zero()) throw Error(ErrorKind::NomeOutOfRange, "theta requires 0 < |q| < 1");
}

}  // namespace

Certified<Complex> theta_series(const Complex& zeta_in, const Complex& q_in, const PrecisionContext& ctx) {
  check_theta_args(zeta_in, q_in);
  const Precision bits = std::max({ctx.bits, zeta_in.precision(), q_in.precision()});
  Complex zeta = zeta_in.with_precision(bits);
  Complex q = q_in.with_precision(bits);
  Complex zinv = reciprocal(zeta);
  const double lq = log2_abs(q);
  const double lz = log2_abs(zeta);
  const double ltol = log2_abs(Complex(ctx.tolerance));

  // t_m = (-1)^m q^{m(m-1)/2} zeta^m; t_{m+1} = -q^m zeta t_m and t_{-k-1} = -q^{k+1} zeta^{-1} t_{-k}.
  Complex sum(1L, bits);
  double log2_scale = 0.0;  // log2 of the largest |t_m|
  std::vector<double> logs{0.0};

  auto run_side = [&](bool positive) {
    Complex t(1L, bits);
    Complex step = positive ? -zeta : -(q * zinv);  // first ratio
    Complex qpow = positive ? Complex(1L, bits) : q;
    double lt = 0.0;
    for (long m = 0;; ++m) {
      // ratio magnitude for this step: |q|^m |zeta| (positive) or |q|^{m+1}/|zeta| (negative)
      double lratio = positive ? m * lq + lz : (m + 1) * lq - lz;
      t *= step;
      lt += lratio;
      sum += t;
      logs.push_back(lt);
      log2_scale = std::max(log2_scale, lt);
      // Subsequent ratios are at most 2^{lratio + lq} <= 1/2: geometric tail <= 2 |t_next|.
      double lnext = lt + lratio + lq;
      if (lratio + lq <= -1.0 && lnext + 1.0 <= ltol + log2_scale - 4.0) return lnext + 1.0;
      qpow *= q;
      step = positive ? -(qpow * zeta) : -(qpow * zinv);
    }
  };
  double ltail_pos = run_side(true);
  double ltail_neg = run_side(false);

  double abs_sum = 0.0;  // sum of |t_m| / 2^log2_scale
  for (double l : logs) abs_sum += (l - log2_scale > -1100.0) ? std::exp2(l - log2_scale) : 0.0;
  const double u = std::exp2(1.0 - static_cast<double>(bits));
  double lround = std::log2(4.0 * static_cast<double>(logs.size()) * static_cast<double>(logs.size()) * u * abs_sum) +
                  log2_scale;
  double lerr = std::max({ltail_pos, ltail_neg, lround}) + 2.0;
  return {std::move(sum), ldexp(bound(1.0), static_cast<long>(std::ceil(lerr)))};
}

Certified<Complex> theta_product(const Complex& zeta_in, const Complex& q_in, const PrecisionContext& ctx) {
  check_theta_args(zeta_in, q_in);
  const Precision bits = std::max({ctx.bits, zeta_in.precision(), q_in.precision()});
  Complex zeta = zeta_in.with_precision(bits);
  Complex q = q_in.with_precision(bits);
  auto p1 = qpoch_infinite(q, q, ctx);
  auto p2 = qpoch_infinite(zeta, q, ctx);
  auto p3 = qpoch_infinite(q / zeta, q, ctx);
  Complex value = p1.value * p2.value * p3.value;
  // |xyz - XYZ| <= e1|YZ| + e2|XZ| + e3|XY| + higher order; add rounding of the two products.
  Real a1 = round_up(abs(p1.value), kBoundBits), a2 = round_up(abs(p2.value), kBoundBits),
       a3 = round_up(abs(p3.value), kBoundBits);
  Real err = p1.error * (a2 + p2.error) * (a3 + p3.error) + a1 * p2.error * (a3 + p3.error) + a1 * a2 * p3.error;
  err += round_up(abs(value), kBoundBits) * ctx.unit_roundoff() * 8L;
  // The argument q/zeta carries one rounding; its effect is bounded by the rounding term above
  // scaled with the logarithmic derivative, which we fold in conservatively.
  err *= 2L;
  return {std::move(value), std::move(err)};
}

}  // namespace vwp
