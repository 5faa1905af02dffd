#pragma once

// Term and weight functions of the sums, for 0<q<1 and for q=1.
//
// Every bilateral term factorizes as
//   prefactor * prod_{j<k} P+_{jk}(l_j + l_k) P-_{jk}(l_j - l_k) * prod_j S_j(l_j)
// with one-dimensional factors. FactorizedTerm memoizes those factors so a
// lattice sum costs a few table lookups per point.

#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "vwp/kernel.hpp"
#include "vwp/parameters.hpp"

namespace vwp {

using LatticePoint = std::vector<long>;

/// The base q together with the q=1 degeneration: q^w -> 1, 1-q^w -> w,
/// (q^w;q)_m -> (w)_m and (q^w;q)_inf -> 1/Gamma(w). Arguments within
/// 2^(-bits/2) of a zero of the corresponding function give exact zeros.
class Nome {
 public:
  Nome(const Real& q, bool degenerate, const PrecisionContext& ctx);
  Nome(const ParameterSet& params, const PrecisionContext& ctx) : Nome(params.q, params.degenerate, ctx) {}

  bool degenerate() const { return degenerate_; }
  const PrecisionContext& ctx() const { return ctx_; }
  Precision bits() const { return ctx_.bits; }

  Complex pow(const Complex& w) const;
  Complex bracket(const Complex& w) const;
  /// (q^w;q)_m, or (w)_m. Throws DivisionByVanishingFactor for m < 0 hits.
  Complex factorial(const Complex& w, long m) const;
  /// 1/(q^w;q)_m, or 1/(w)_m. Zero for m < 0 hits; throws DivisionByVanishingFactor for m > 0 hits.
  Complex inv_factorial(const Complex& w, long m) const;
  /// (q^w;q)_inf, or 1/Gamma(w).
  Complex infinite(const Complex& w) const;
  /// 1/(q^w;q)_inf, or Gamma(w). Throws PoleHit.
  Complex inv_infinite(const Complex& w) const;
  /// theta(q^w), or sin(pi w) for q = 1. Exactly zero on the lattice.
  Complex theta(const Complex& w) const;
  /// (q;q)_inf, or 1.
  const Complex& q_infinity() const { return q_inf_; }

 private:
  // w reduced modulo the imaginary period.
  Complex reduce(const Complex& w) const;
  // Integer k with w within the zero threshold of -k (mod imaginary period), if any.
  bool integer_hit(const Complex& w, long& k) const;

  bool degenerate_;
  PrecisionContext ctx_;
  Real q_;
  Real log_q_;
  Real period_;
  Real threshold_;
  Complex q_inf_;
};

// ---------------------------------------------------------------------------
// Rings over linear exponents. A ring evaluates q^e, 1-q^e and (q^e;q)_m for a
// Lin exponent e; the Rogers weights and the terminating norms are written
// once against this interface.

/// MPFR evaluation at a ParameterSet.
class FloatRing {
 public:
  using Value = Complex;
  FloatRing(const ParameterSet& params, const PrecisionContext& ctx) : params_(params), nome_(params, ctx) {}

  Value one() const { return Complex(1L, nome_.bits()); }
  Value pow(const Lin& e) const { return nome_.pow(e.evaluate(params_)); }
  Value bracket(const Lin& e) const { return nome_.bracket(e.evaluate(params_)); }
  Value factorial(const Lin& e, long m) const { return nome_.factorial(e.evaluate(params_), m); }
  Value infinite(const Lin& e) const { return nome_.infinite(e.evaluate(params_)); }
  static bool is_zero(const Value& v) { return v.is_zero(); }
  const Nome& nome() const { return nome_; }

 private:
  const ParameterSet& params_;
  Nome nome_;
};

/// Exact rational evaluation for q != 1 in the generators q, t = q^g and
/// x_r = q^{g_r}.
class RationalRing {
 public:
  using Value = mpq_class;
  RationalRing(mpq_class q, mpq_class t, std::array<mpq_class, 4> x);

  Value one() const { return 1; }
  Value pow(const Lin& e) const;
  Value bracket(const Lin& e) const { return 1 - pow(e); }
  Value factorial(const Lin& e, long m) const;
  static bool is_zero(const Value& v) { return sgn(v) == 0; }

 private:
  mpq_class q_, t_;
  std::array<mpq_class, 4> x_;
};

/// Exact rational evaluation at q = 1 in g and g_r.
class DegenerateRationalRing {
 public:
  using Value = mpq_class;
  DegenerateRationalRing(mpq_class g, std::array<mpq_class, 4> gr) : g_(std::move(g)), gr_(std::move(gr)) {}

  Value one() const { return 1; }
  Value pow(const Lin&) const { return 1; }
  Value bracket(const Lin& e) const { return evaluate(e); }
  Value factorial(const Lin& e, long m) const;
  Value evaluate(const Lin& e) const;
  static bool is_zero(const Value& v) { return sgn(v) == 0; }

 private:
  mpq_class g_;
  std::array<mpq_class, 4> gr_;
};

template <class Ring>
typename Ring::Value checked_divide(const typename Ring::Value& a, const typename Ring::Value& b, const char* what) {
  if (Ring::is_zero(b)) throw Error(ErrorKind::DivisionByVanishingFactor, what);
  return a / b;
}

/// Factors of the Rogers/Dougall weight Delta. m is l_j+l_k, l_j-l_k or l_j.
/// Every denominator is evaluated even when the numerator vanishes, so a 0/0
/// at a non-generic point raises DivisionByVanishingFactor instead of
/// passing for a zero term.
template <class Ring>
typename Ring::Value rogers_pair(const Ring& ring, const Lin& base, const Lin& g, long m) {
  using V = typename Ring::Value;
  if (m == 0) return ring.one();
  V num = ring.bracket(base + m) * ring.factorial(g + base, m);
  V den = ring.bracket(base) * ring.factorial(1L - g + base, m);
  return checked_divide<Ring>(num, den, "Rogers pair factor");
}

template <class Ring>
typename Ring::Value rogers_single(const Ring& ring, int n, int j, const Permutation& perm, long m) {
  using V = typename Ring::Value;
  if (m == 0) return ring.one();
  Lin rho = rho_lin(n, j, perm);
  Lin rho_hat = rho_hat_lin(n, j, perm);
  V num = ring.pow(static_cast<long>(m) * (1L - 2L * rho_hat)) * ring.bracket(2L * rho + 2L * m);
  V den = ring.bracket(2L * rho);
  for (int r = 0; r < 4; ++r) {
    num *= ring.factorial(Lin::coupling(r) + rho, m);
    den *= ring.factorial(1L - Lin::coupling(r) + rho, m);
  }
  return checked_divide<Ring>(num, den, "Rogers single factor");
}

template <class Ring>
typename Ring::Value rogers_weight(const Ring& ring, int n, const Permutation& perm, std::span<const long> lambda) {
  using V = typename Ring::Value;
  V out = ring.one();
  const Lin g = Lin::g();
  for (int j = 1; j <= n; ++j) {
    out *= rogers_single(ring, n, j, perm, lambda[static_cast<std::size_t>(j - 1)]);
  }
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k) {
      long lj = lambda[static_cast<std::size_t>(j - 1)], lk = lambda[static_cast<std::size_t>(k - 1)];
      Lin rj = rho_lin(n, j, perm), rk = rho_lin(n, k, perm);
      out *= rogers_pair(ring, rj + rk, g, lj + lk);
      out *= rogers_pair(ring, rj - rk, g, lj - lk);
    }
  return out;
}

// ---------------------------------------------------------------------------

struct TermOptions {
  /// Use the q=1 Aomoto-Ito term with the coupling list exactly as printed
  /// (g_3 twice, g_2 absent) instead of the symmetric product over r.
  bool literal_aomoto_q1_typo = false;
};

struct TermValue {
  LogComplex value;
  Real condition_estimate;  // relative rounding bound

  Complex to_complex() const { return value.to_complex(); }
  static TermValue make(const Complex& v, long factors, const PrecisionContext& ctx);
};

TermValue c_plus(const std::vector<Complex>& x, const ParameterSet& params, const PrecisionContext& ctx);
TermValue c_minus(const std::vector<Complex>& x, const ParameterSet& params, const PrecisionContext& ctx);
TermValue c_plus_hat(const std::vector<Complex>& x, const ParameterSet& params, const PrecisionContext& ctx);
TermValue c_minus_hat(const std::vector<Complex>& x, const ParameterSet& params, const PrecisionContext& ctx);

/// 1 / (C+(z+l) C+(-z-l)).
TermValue macdonald_term(const std::vector<Complex>& z, std::span<const long> lambda, const ParameterSet& params,
                         const PrecisionContext& ctx);
/// 1 / (C+(z+l) C-(z+l)).
TermValue aomoto_term(const std::vector<Complex>& z, std::span<const long> lambda, const ParameterSet& params,
                      const PrecisionContext& ctx, const TermOptions& options = {});
/// C+(-z)/C-(z) in theta (q<1) or sine (q=1) form.
TermValue aomoto_factor(const std::vector<Complex>& z, const ParameterSet& params, const PrecisionContext& ctx);
/// The Macdonald term divided by its value at l = 0.
TermValue bailey_term(const std::vector<Complex>& z, std::span<const long> lambda, const ParameterSet& params,
                      const PrecisionContext& ctx);
/// Delta(l) for the unilateral sums.
TermValue rogers_term(std::span<const long> lambda, const ParameterSet& params, const PrecisionContext& ctx);
/// Gustafson's weight at x, with the 2n+2 couplings of params.couplings.
TermValue gustafson_term(const std::vector<Complex>& x, const ParameterSet& params, const PrecisionContext& ctx);

// ---------------------------------------------------------------------------

class LatticeTerm {
 public:
  virtual ~LatticeTerm() = default;
  virtual int rank() const = 0;
  virtual Complex operator()(std::span<const long> lambda) const = 0;
};

/// Wraps a plain function of the lattice point.
class FunctionTerm final : public LatticeTerm {
 public:
  using Fn = std::function<Complex(std::span<const long>)>;
  FunctionTerm(int n, Fn fn) : n_(n), fn_(std::move(fn)) {}
  int rank() const override { return n_; }
  Complex operator()(std::span<const long> lambda) const override { return fn_(lambda); }

 private:
  int n_;
  Fn fn_;
};

class FactorizedTerm final : public LatticeTerm {
 public:
  using Factor = std::function<Complex(long)>;

  FactorizedTerm(int n, Complex prefactor);
  void set_pair(int j, int k, Factor sum, Factor diff);  // 0-based j < k
  void set_single(int j, Factor single);

  int rank() const override { return n_; }
  Complex operator()(std::span<const long> lambda) const override;
  /// term(l + e_j) / term(l), from the O(n) factors that change.
  Complex ratio(std::span<const long> lambda, int j) const;
  /// Number of scalar factors per term.
  long factor_count() const { return static_cast<long>(n_ * n_ + 1); }

 private:
  class Table {
   public:
    explicit Table(Factor fn) : fn_(std::move(fn)) {}
    const Complex& at(long m) const;

   private:
    Factor fn_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<long, Complex> memo_;
  };

  std::size_t pair_index(int j, int k) const;

  int n_;
  Complex prefactor_;
  std::vector<std::unique_ptr<Table>> pair_sum_, pair_diff_, single_;
};

std::unique_ptr<FactorizedTerm> make_macdonald_term(const std::vector<Complex>& z, const ParameterSet& params,
                                                    const PrecisionContext& ctx);
std::unique_ptr<FactorizedTerm> make_aomoto_term(const std::vector<Complex>& z, const ParameterSet& params,
                                                 const PrecisionContext& ctx, const TermOptions& options = {});
std::unique_ptr<FactorizedTerm> make_bailey_term(const std::vector<Complex>& z, const ParameterSet& params,
                                                 const PrecisionContext& ctx);
std::unique_ptr<FactorizedTerm> make_rogers_term(const ParameterSet& params, const PrecisionContext& ctx);
std::unique_ptr<FactorizedTerm> make_gustafson_term(const std::vector<Complex>& z, const ParameterSet& params,
                                                    const PrecisionContext& ctx);

/// term(l + e_j)/term(l) for the bilateral kinds and the Rogers weight.
TermValue term_ratio(IdentityKind kind, std::span<const long> lambda, int j, const std::vector<Complex>& z,
                     const ParameterSet& params, const PrecisionContext& ctx);

}  // namespace vwp
