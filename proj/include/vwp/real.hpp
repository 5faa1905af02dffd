#pragma once

// Arbitrary-precision real and complex numbers on top of MPFR.
//
// Every value carries its own mantissa size. Binary operations produce a
// result at the larger of the two operand precisions, so there is no hidden
// global precision setting: precision flows from the inputs.

#include <mpfr.h>

#include <string>
#include <string_view>

namespace vwp {

using Precision = mpfr_prec_t;

class Real {
 public:
  explicit Real(Precision bits = 64);
  Real(double value, Precision bits);
  Real(long value, Precision bits);
  Real(int value, Precision bits) : Real(static_cast<long>(value), bits) {}

  /// Parses decimal or rational ("p/q") text.
  static Real parse(std::string_view text, Precision bits);
  static Real pi(Precision bits);
  static Real infinity(Precision bits, int sign = 1);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  Precision precision() const { return mpfr_get_prec(value_); }
  /// Copy rounded (or padded) to a new precision.
  Real with_precision(Precision bits) const;

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(value_, MPFR_RNDN); }
  /// Scientific notation with `digits` significant digits (0: all digits
  /// the precision supports).
  std::string str(int digits = 0) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_nan() const { return mpfr_nan_p(value_) != 0; }
  bool is_integer() const { return mpfr_integer_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  /// Binary exponent e with 0.5 <= |x|/2^e < 1; meaningless for zero.
  long exponent2() const { return mpfr_get_exp(value_); }

  Real operator-() const;
  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator*=(long rhs);
  Real& operator/=(long rhs);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator+(const Real& a, long b);
  friend Real operator-(const Real& a, long b);
  friend Real operator*(const Real& a, long b);
  friend Real operator/(const Real& a, long b);
  friend Real operator+(long a, const Real& b) { return b + a; }
  friend Real operator-(long a, const Real& b);
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator/(long a, const Real& b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return b <= a; }

 private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real log2(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, long k);
Real pow(const Real& x, const Real& y);
Real floor(const Real& x);
Real round(const Real& x);
Real hypot(const Real& x, const Real& y);
Real ldexp(const Real& x, long e);
/// Lower-precision copy rounded away from zero; used for error bounds.
Real round_up(const Real& x, Precision bits);
const Real& max(const Real& a, const Real& b);
const Real& min(const Real& a, const Real& b);

class Complex {
 public:
  explicit Complex(Precision bits = 64) : re(bits), im(bits) {}
  Complex(Real real, Real imag) : re(std::move(real)), im(std::move(imag)) {}
  explicit Complex(Real real) : re(std::move(real)), im(0L, re.precision()) {}
  Complex(double real, double imag, Precision bits) : re(real, bits), im(imag, bits) {}
  Complex(long real, Precision bits) : re(real, bits), im(0L, bits) {}

  static Complex i(Precision bits) { return {Real(0L, bits), Real(1L, bits)}; }

  Precision precision() const;
  Complex with_precision(Precision bits) const;
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_finite() const { return re.is_finite() && im.is_finite(); }
  bool is_real() const { return im.is_zero(); }
  std::string str(int digits = 0) const;

  Complex operator-() const { return {-re, -im}; }
  Complex& operator+=(const Complex& rhs);
  Complex& operator-=(const Complex& rhs);
  Complex& operator*=(const Complex& rhs);
  Complex& operator/=(const Complex& rhs);
  Complex& operator*=(const Real& rhs);
  Complex& operator*=(long rhs);

  friend Complex operator+(const Complex& a, const Complex& b);
  friend Complex operator-(const Complex& a, const Complex& b);
  friend Complex operator*(const Complex& a, const Complex& b);
  friend Complex operator/(const Complex& a, const Complex& b);
  friend Complex operator+(const Complex& a, const Real& b) { return {a.re + b, a.im}; }
  friend Complex operator-(const Complex& a, const Real& b) { return {a.re - b, a.im}; }
  friend Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
  friend Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
  friend Complex operator*(const Real& a, const Complex& b) { return b * a; }
  friend Complex operator+(const Complex& a, long b) { return {a.re + b, a.im}; }
  friend Complex operator-(const Complex& a, long b) { return {a.re - b, a.im}; }
  friend Complex operator*(const Complex& a, long b) { return {a.re * b, a.im * b}; }
  friend Complex operator/(const Complex& a, long b) { return {a.re / b, a.im / b}; }
  friend Complex operator+(long a, const Complex& b) { return b + a; }
  friend Complex operator-(long a, const Complex& b) { return {a - b.re, -b.im}; }
  friend Complex operator*(long a, const Complex& b) { return b * a; }
  friend Complex operator/(long a, const Complex& b);

  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

  Real re;
  Real im;
};

Real abs(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real arg(const Complex& z);
Complex conj(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
Complex sqrt(const Complex& z);
Complex sin(const Complex& z);
Complex cos(const Complex& z);
Complex pow(const Complex& z, long k);
Complex reciprocal(const Complex& z);

}  // namespace vwp
