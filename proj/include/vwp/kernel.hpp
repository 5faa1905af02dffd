#pragma once

// Scalar special functions: q-shifted factorials, Pochhammer symbols, the
// gamma function and the Jacobi theta function, all at arbitrary precision.
//
// Operations that truncate an infinite process return a Certified value: the
// computed number together with a conservative bound on its absolute error
// (truncation plus accumulated rounding). Callers propagate these bounds.

#include <cstdint>
#include <span>

#include "vwp/errors.hpp"
#include "vwp/real.hpp"

namespace vwp {

struct PrecisionContext {
  Precision bits = 256;
  /// Requested relative error of every truncated kernel operation.
  Real tolerance = Real(0L, 64);

  /// Context with the default tolerance 2^-(bits-16).
  static PrecisionContext with_bits(Precision bits);
  /// Throws InvalidParameters unless bits >= 64 and tolerance > 0.
  void validate() const;
  /// Unit roundoff 2^(1-bits) as a low-precision Real.
  Real unit_roundoff() const;
};

template <class T>
struct Certified {
  T value;
  Real error;  // absolute, >= 0
};

/// A complex number held as (log|value|, arg value). Exact zero has
/// log_magnitude = -inf. The phase is normalized to (-pi, pi].
struct LogComplex {
  Real log_magnitude;
  Real phase;

  static LogComplex zero(Precision bits);
  static LogComplex from(const Complex& z);
  Complex to_complex() const;
  bool is_zero() const { return !log_magnitude.is_finite() && log_magnitude.sign() < 0; }
  LogComplex& operator*=(const LogComplex& rhs);
  LogComplex& operator/=(const LogComplex& rhs);
};

/// Wraps an angle into (-pi, pi].
Real normalize_phase(const Real& angle);

/// (a;q)_m for any integer m. Throws DivisionByVanishingFactor when m < 0 and
/// one of the factors 1 - a q^{-k} is exactly zero.
Complex qpoch_finite(const Complex& a, const Complex& q, long m);

/// (a;q)_inf for |q| < 1. Throws NomeOutOfRange for |q| >= 1. A factor that is
/// exactly zero yields an exact zero.
Certified<Complex> qpoch_infinite(const Complex& a, const Complex& q, const PrecisionContext& ctx);

/// (a)_m for any integer m. Throws DivisionByVanishingFactor when m < 0 hits a
/// nonpositive-integer factor.
Complex pochhammer(const Complex& a, long m);

/// Gamma(z) in log-magnitude/phase form. Spouge series for Re z >= 1/2,
/// reflection below. Throws PoleAtNonpositiveInteger.
LogComplex log_gamma(const Complex& z, const PrecisionContext& ctx);
Complex gamma(const Complex& z, const PrecisionContext& ctx);
/// 1/Gamma(z): entire, exactly zero at the nonpositive integers (and within
/// 2^(-bits/2) of them).
Complex rgamma(const Complex& z, const PrecisionContext& ctx);

/// Sum_m (-1)^m q^{m(m-1)/2} zeta^m. Requires 0 < |q| < 1 and zeta != 0.
Certified<Complex> theta_series(const Complex& zeta, const Complex& q, const PrecisionContext& ctx);
/// (q, zeta, q/zeta; q)_inf. Same preconditions as theta_series.
Certified<Complex> theta_product(const Complex& zeta, const Complex& q, const PrecisionContext& ctx);

/// sin(pi z); exactly zero at real integers.
Complex sin_reflection(const Complex& z);

}  // namespace vwp
