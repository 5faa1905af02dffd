#include "vwp/real.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace vwp {

namespace {

Precision join(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

Real::Real(Precision bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

Real::Real(double value, Precision bits) {
  mpfr_init2(value_, bits);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(long value, Precision bits) {
  mpfr_init2(value_, bits);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real Real::parse(std::string_view text, Precision bits) {
  std::string s(text);
  Real out(bits);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational number: " + s);
    q.canonicalize();
    mpfr_set_q(out.value_, q.get_mpq_t(), MPFR_RNDN);
    return out;
  }
  if (mpfr_set_str(out.value_, s.c_str(), 10, MPFR_RNDN) != 0)
    throw std::invalid_argument("not a number: " + s);
  return out;
}

Real Real::pi(Precision bits) {
  Real out(bits);
  mpfr_const_pi(out.value_, MPFR_RNDN);
  return out;
}

Real Real::infinity(Precision bits, int sign) {
  Real out(bits);
  mpfr_set_inf(out.value_, sign);
  return out;
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::with_precision(Precision bits) const {
  Real out(bits);
  mpfr_set(out.value_, value_, MPFR_RNDN);
  return out;
}

std::string Real::str(int digits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  if (digits <= 0) digits = static_cast<int>(precision() * 0.30103) + 1;
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, value_);
  return buf.data();
}

Real Real::operator-() const {
  Real out(precision());
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

Real& Real::operator+=(const Real& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

Real operator+(const Real& a, const Real& b) {
  Real out(join(a, b));
  mpfr_add(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

Real operator-(const Real& a, const Real& b) {
  Real out(join(a, b));
  mpfr_sub(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

Real operator*(const Real& a, const Real& b) {
  Real out(join(a, b));
  mpfr_mul(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

Real operator/(const Real& a, const Real& b) {
  Real out(join(a, b));
  mpfr_div(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

Real operator+(const Real& a, long b) {
  Real out(a.precision());
  mpfr_add_si(out.value_, a.value_, b, MPFR_RNDN);
  return out;
}

Real operator-(const Real& a, long b) {
  Real out(a.precision());
  mpfr_sub_si(out.value_, a.value_, b, MPFR_RNDN);
  return out;
}

Real operator*(const Real& a, long b) {
  Real out(a.precision());
  mpfr_mul_si(out.value_, a.value_, b, MPFR_RNDN);
  return out;
}

Real operator/(const Real& a, long b) {
  Real out(a.precision());
  mpfr_div_si(out.value_, a.value_, b, MPFR_RNDN);
  return out;
}

Real operator-(long a, const Real& b) {
  Real out(b.precision());
  mpfr_si_sub(out.value_, a, b.value_, MPFR_RNDN);
  return out;
}

Real operator/(long a, const Real& b) {
  Real out(b.precision());
  mpfr_si_div(out.value_, a, b.value_, MPFR_RNDN);
  return out;
}

#define VWP_UNARY(name, fn)              \
  Real name(const Real& x) {             \
    Real out(x.precision());             \
    fn(out.get(), x.get(), MPFR_RNDN);   \
    return out;                          \
  }

VWP_UNARY(abs, mpfr_abs)
VWP_UNARY(sqrt, mpfr_sqrt)
VWP_UNARY(exp, mpfr_exp)
VWP_UNARY(log, mpfr_log)
VWP_UNARY(log2, mpfr_log2)
VWP_UNARY(sin, mpfr_sin)
VWP_UNARY(cos, mpfr_cos)

#undef VWP_UNARY

Real floor(const Real& x) {
  Real out(x.precision());
  mpfr_floor(out.get(), x.get());
  return out;
}

Real round(const Real& x) {
  Real out(x.precision());
  mpfr_round(out.get(), x.get());
  return out;
}

Real atan2(const Real& y, const Real& x) {
  Real out(join(y, x));
  mpfr_atan2(out.get(), y.get(), x.get(), MPFR_RNDN);
  return out;
}

Real hypot(const Real& x, const Real& y) {
  Real out(join(x, y));
  mpfr_hypot(out.get(), x.get(), y.get(), MPFR_RNDN);
  return out;
}

Real pow(const Real& x, long k) {
  Real out(x.precision());
  mpfr_pow_si(out.get(), x.get(), k, MPFR_RNDN);
  return out;
}

Real pow(const Real& x, const Real& y) {
  Real out(join(x, y));
  mpfr_pow(out.get(), x.get(), y.get(), MPFR_RNDN);
  return out;
}

Real ldexp(const Real& x, long e) {
  Real out(x.precision());
  mpfr_mul_2si(out.get(), x.get(), e, MPFR_RNDN);
  return out;
}

Real round_up(const Real& x, Precision bits) {
  Real out(bits);
  mpfr_set(out.get(), x.get(), MPFR_RNDA);
  return out;
}

const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }
const Real& min(const Real& a, const Real& b) { return b < a ? b : a; }

// ---------------------------------------------------------------------------

Precision Complex::precision() const { return std::max(re.precision(), im.precision()); }

Complex Complex::with_precision(Precision bits) const {
  return {re.with_precision(bits), im.with_precision(bits)};
}

std::string Complex::str(int digits) const {
  std::string s = re.str(digits);
  if (im.sign() >= 0) s += "+";
  return s + im.str(digits) + "i";
}

Complex& Complex::operator+=(const Complex& rhs) {
  re += rhs.re;
  im += rhs.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& rhs) {
  re -= rhs.re;
  im -= rhs.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& rhs) {
  *this = *this * rhs;
  return *this;
}

Complex& Complex::operator/=(const Complex& rhs) {
  *this = *this / rhs;
  return *this;
}

Complex& Complex::operator*=(const Real& rhs) {
  re *= rhs;
  im *= rhs;
  return *this;
}

Complex& Complex::operator*=(long rhs) {
  re *= rhs;
  im *= rhs;
  return *this;
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }

Complex operator*(const Complex& a, const Complex& b) {
  if (a.im.is_zero() && b.im.is_zero()) return Complex(a.re * b.re, Real(0L, std::max(a.precision(), b.precision())));
  Precision bits = std::max(a.precision(), b.precision());
  Real re(bits), im(bits);
  // fms/fma keep each component to one rounding.
  mpfr_fmms(re.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmma(im.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  return {std::move(re), std::move(im)};
}

Complex operator/(const Complex& a, const Complex& b) {
  if (b.im.is_zero()) return {a.re / b.re, a.im / b.re};
  Precision bits = std::max(a.precision(), b.precision());
  Real den(bits);
  mpfr_fmma(den.get(), b.re.get(), b.re.get(), b.im.get(), b.im.get(), MPFR_RNDN);
  Real re(bits), im(bits);
  mpfr_fmma(re.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmms(im.get(), a.im.get(), b.re.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  re /= den;
  im /= den;
  return {std::move(re), std::move(im)};
}

Complex operator/(long a, const Complex& b) { return Complex(a, b.precision()) / b; }

Real abs(const Complex& z) { return hypot(z.re, z.im); }

Real norm(const Complex& z) {
  Real out(z.precision());
  mpfr_fmma(out.get(), z.re.get(), z.re.get(), z.im.get(), z.im.get(), MPFR_RNDN);
  return out;
}

Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex conj(const Complex& z) { return {z.re, -z.im}; }

Complex exp(const Complex& z) {
  Real m = exp(z.re);
  if (z.im.is_zero()) return {std::move(m), Real(0L, z.precision())};
  Real s(z.im.precision()), c(z.im.precision());
  mpfr_sin_cos(s.get(), c.get(), z.im.get(), MPFR_RNDN);
  return {m * c, m * s};
}

Complex log(const Complex& z) {
  if (z.im.is_zero() && z.re.sign() > 0) return {log(z.re), Real(0L, z.precision())};
  return {log(abs(z)), arg(z)};
}

Complex sqrt(const Complex& z) {
  if (z.is_zero()) return z;
  Real r = abs(z);
  Real re = sqrt((r + abs(z.re)) / 2L);
  Real im = z.im / (re * 2L);
  if (z.re.sign() >= 0) return {std::move(re), std::move(im)};
  // Re < 0: swap roles so the result stays in the right half plane.
  Real a = abs(im);
  Real b = z.im.sign() >= 0 ? re : -re;
  return {std::move(a), std::move(b)};
}

Complex sin(const Complex& z) {
  if (z.im.is_zero()) return {sin(z.re), Real(0L, z.precision())};
  Real s(z.precision()), c(z.precision()), sh(z.precision()), ch(z.precision());
  mpfr_sin_cos(s.get(), c.get(), z.re.get(), MPFR_RNDN);
  mpfr_sinh_cosh(sh.get(), ch.get(), z.im.get(), MPFR_RNDN);
  return {s * ch, c * sh};
}

Complex cos(const Complex& z) {
  if (z.im.is_zero()) return {cos(z.re), Real(0L, z.precision())};
  Real s(z.precision()), c(z.precision()), sh(z.precision()), ch(z.precision());
  mpfr_sin_cos(s.get(), c.get(), z.re.get(), MPFR_RNDN);
  mpfr_sinh_cosh(sh.get(), ch.get(), z.im.get(), MPFR_RNDN);
  return {c * ch, -(s * sh)};
}

Complex pow(const Complex& z, long k) {
  if (k < 0) return reciprocal(pow(z, -k));
  Complex result(1L, z.precision());
  Complex base = z;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Complex reciprocal(const Complex& z) { return 1L / z; }

}  // namespace vwp
