#pragma once

// Closed-form right-hand sides, verification drivers and the classical
// one-variable sums.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vwp/summation.hpp"

namespace vwp {

// ---------------------------------------------------------------------------
// Right-hand sides. Every product of (q^w;q)_inf maps to a product of
// 1/Gamma(w) at q = 1, so each formula is written once against Nome.

/// Product form prod_j (q, q^{1+jg})(q^{1+(n-j)g+g_r+g_s}) / (q^{1+g}, q^{1+(2n-j-1)g+sum g}).
Complex macdonald_rhs(const ParameterSet& params, const PrecisionContext& ctx);
/// The same constant written through rho-hat and the hat couplings.
Complex macdonald_rhs_hat_form(const ParameterSet& params, const PrecisionContext& ctx);
/// aomoto_factor(z) times the Macdonald constant.
Complex aomoto_rhs(const std::vector<Complex>& z, const ParameterSet& params, const PrecisionContext& ctx);
/// The Macdonald constant divided by the term at l = 0.
Complex bailey_rhs(const std::vector<Complex>& z, const ParameterSet& params, const PrecisionContext& ctx);
/// Norm of the unilateral sum through rho and rho-hat.
Complex rogers_rhs(const ParameterSet& params, const PrecisionContext& ctx);
/// The same norm after cancellation, in g and g_r only.
Complex rogers_rhs_simplified(const ParameterSet& params, const PrecisionContext& ctx);
Complex gustafson_rhs(const ParameterSet& params, const PrecisionContext& ctx);
/// S_n(g, g_r) / S_{n-1}(g, g_r + g/2).
Complex recurrence_factor(const ParameterSet& params, const PrecisionContext& ctx);

/// The representations of the terminating norm: the two lines with lengths N
/// and -N, their simplified versions, and the squared form.
template <class V>
struct TerminatingForms {
  V line1, line2, simple1, simple2, squared;
};

template <class Ring>
TerminatingForms<typename Ring::Value> terminating_forms(const Ring& ring, int n, const Permutation& perm, long N) {
  using V = typename Ring::Value;
  auto ratio = [&](std::initializer_list<Lin> num, std::initializer_list<Lin> den, long m) {
    V top = ring.one(), bottom = ring.one();
    for (const Lin& e : num) top *= ring.factorial(e, m);
    for (const Lin& e : den) bottom *= ring.factorial(e, m);
    return checked_divide<Ring>(top, bottom, "terminating norm");
  };
  const Lin g = Lin::g();
  const Lin ga = Lin::role(perm, 0), gb = Lin::role(perm, 1), gc = Lin::role(perm, 2), gd = Lin::role(perm, 3);
  const Lin ha = Lin::hat(perm, 0), hb = Lin::hat(perm, 1), hc = Lin::hat(perm, 2), hd = Lin::hat(perm, 3);
  TerminatingForms<V> out{ring.one(), ring.one(), ring.one(), ring.one(), ring.one()};
  for (int j = 1; j <= n; ++j) {
    const Lin rj = rho_lin(n, j, perm), hj = rho_hat_lin(n, j, perm);
    for (int k = j + 1; k <= n; ++k) {
      const Lin rk = rho_lin(n, k, perm), hk = rho_hat_lin(n, k, perm);
      V a = ratio({1L + rj + rk}, {1L - g + rj + rk}, N);
      V b = ratio({1L + g - hj - hk}, {1L - hj - hk}, -N);
      out.line1 *= a;
      out.line2 *= b;
      out.squared *= a * b;
    }
    V c = ratio({1L + 2L * rj, 1L + hb - hj}, {1L - gc + rj, 1L - gd + rj}, N);
    V d = ratio({1L + hc - hj, 1L + hd - hj}, {1L - 2L * hj, 1L - gb + rj}, -N);
    out.line1 *= c;
    out.line2 *= d;
    V top = ring.factorial(1L + 2L * rj, N) * ring.factorial(1L + hb - hj, N) * ring.factorial(1L + hc - hj, -N) *
            ring.factorial(1L + hd - hj, -N);
    V bottom = ring.factorial(1L - 2L * hj, -N) * ring.factorial(1L - gb + rj, -N) * ring.factorial(1L - gc + rj, N) *
               ring.factorial(1L - gd + rj, N);
    out.squared *= checked_divide<Ring>(top, bottom, "terminating norm");
    const long a1 = 2L * n - j - 1, a0 = n - j;
    out.simple1 *= ratio({1L + a1 * g + 2L * ga, 1L - a0 * g - gc - gd}, {1L + a0 * g + ga - gc, 1L + a0 * g + ga - gd}, N);
    out.simple2 *= ratio({1L - a0 * g - ha + hc, 1L - a0 * g - ha + hd}, {1L - a1 * g - 2L * ha, 1L + a0 * g + hc + hd}, -N);
  }
  return out;
}

/// Float evaluation of the terminating norm (first line). Throws
/// TruncationViolated unless (n-1)g + g_a + g_b + N = 0.
Complex terminating_rhs(const ParameterSet& params, long N, const PrecisionContext& ctx);
TerminatingForms<Complex> terminating_rhs_forms(const ParameterSet& params, long N, const PrecisionContext& ctx);

// ---------------------------------------------------------------------------
// Exact rational points of the terminating identity.

struct RationalPoint {
  int n = 1;
  long N = 0;
  Permutation perm{0, 1, 2, 3};
  mpq_class q, t;              // q and q^g
  std::array<mpq_class, 4> x;  // q^{g_r}

  RationalRing ring() const { return RationalRing(q, t, x); }
  /// x_a x_b t^{n-1} q^N == 1.
  bool truncation_holds() const;
};

/// Draws q, t, x_a, x_c, x_d from small random rationals and solves the
/// truncation constraint for x_b.
RationalPoint random_rational_point(int n, long N, const Permutation& perm, std::mt19937_64& rng);

// ---------------------------------------------------------------------------

enum class Mode { Float, Rational };
const char* to_string(Mode mode);

/// A secondary comparison folded into the verdict (dual representations,
/// the multiple-sum machinery at n=1, ...).
struct Check {
  std::string name;
  Real rel_err;
};

struct VerificationReport {
  IdentityKind kind = IdentityKind::Macdonald;
  Mode mode = Mode::Float;
  int n = 1;
  std::string q, g;
  std::array<std::string, 4> gr;
  std::vector<std::string> couplings;
  Permutation perm{0, 1, 2, 3};
  std::vector<std::string> z;
  std::optional<long> N;
  Precision precision_bits = 256;
  long radius_used = 0;
  long terms_evaluated = 0;
  Complex lhs, rhs;
  /// Exact values in rational mode.
  std::string lhs_exact, rhs_exact;
  Real abs_err, rel_err, tail_bound, tolerance;
  std::vector<Check> checks;
  double wall_time_ms = 0;
  bool pass = false;
  std::optional<ErrorKind> error;
  std::string error_detail;

  /// Stable JSON text (keys in schema order).
  std::string to_json(bool include_timing = true) const;
};

/// ConvergenceViolated, GenericityViolated, TruncationViolated,
/// InvalidParameters, NomeOutOfRange and the pole kinds.
bool is_precondition_error(ErrorKind kind);

struct VerifyOptions {
  /// Default 10^{-(bits/8)}.
  std::optional<Real> tolerance;
  long max_radius = 200;
  int threads = 1;
  TermOptions term_options;
  /// Skip the genericity predicates.
  bool skip_genericity = false;
};

Real default_tolerance(Precision bits);

/// Sums the left-hand side of the identity, evaluates the right-hand side
/// and compares. Errors are caught and recorded with a failing verdict.
VerificationReport verify(IdentityKind kind, const ParameterSet& params, const std::vector<Complex>& z,
                          std::optional<long> N, const PrecisionContext& ctx, const VerifyOptions& options = {});

/// Exact verification of the terminating identity at a rational point: the
/// alcove sum against all representations of the norm.
VerificationReport verify_rational(const RationalPoint& point);

/// Compares the Macdonald sums at two evaluation points.
VerificationReport z_independence_check(const ParameterSet& params, const std::vector<Complex>& z1,
                                        const std::vector<Complex>& z2, const PrecisionContext& ctx,
                                        const VerifyOptions& options = {});

/// S_n(g, g_r) / S_{n-1}(g, g_r + g/2) against the printed factor, with S_0 = 1.
VerificationReport recurrence_check(const ParameterSet& params, const std::vector<Complex>& z,
                                    const PrecisionContext& ctx, const VerifyOptions& options = {});

/// The one-variable series summed from its hypergeometric definition and
/// compared with the classical closed form and with the multiple-sum
/// machinery at n = 1. kind selects the bilateral (BaileyDougall),
/// nonterminating (RogersNonterminating) or terminating (Terminating) sum.
VerificationReport classical_n1(IdentityKind kind, const ParameterSet& params, const Complex& z,
                                std::optional<long> N, const PrecisionContext& ctx, const VerifyOptions& options = {});
VerificationReport classical_n1_rational(const RationalPoint& point);

/// verify_rational at a random point, redrawing when a factor of the norm vanishes.
VerificationReport verify_random_rational(int n, long N, const Permutation& perm, std::mt19937_64& rng,
                                          int attempts = 100);

/// Summand of the one-variable very-well-poised unilateral series.
template <class Ring>
typename Ring::Value classical_unilateral_summand(const Ring& ring, const Permutation& perm, long l) {
  using V = typename Ring::Value;
  const Lin ga = Lin::role(perm, 0);
  V num = ring.pow(l * (1L - Lin::coupling_sum())) * ring.bracket(2L * ga + 2L * l);
  V den = ring.bracket(2L * ga);
  for (int r = 0; r < 4; ++r) {
    num *= ring.factorial(Lin::coupling(r) + ga, l);
    den *= ring.factorial(1L - Lin::coupling(r) + ga, l);
  }
  return checked_divide<Ring>(num, den, "classical summand");
}

}  // namespace vwp
