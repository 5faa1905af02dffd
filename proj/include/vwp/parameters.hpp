#pragma once

// Parameter space: couplings, the hat transform, the shift vectors rho and
// rho-hat, the period lattice and the validity predicates of the identities.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "vwp/kernel.hpp"

namespace vwp {

enum class IdentityKind {
  Macdonald,
  AomotoIto,
  BaileyDougall,
  RogersNonterminating,
  Terminating,
  Gustafson,
  Recurrence,
};

const char* to_string(IdentityKind kind);
IdentityKind identity_kind_from_string(const std::string& name);

/// Role permutation (a,b,c,d): role r of the construction uses coupling
/// index perm[r] (0-based). Identity by default.
using Permutation = std::array<int, 4>;

bool is_permutation(const Permutation& perm);
/// All 24 permutations of {0,1,2,3} in lexicographic order.
std::vector<Permutation> all_permutations();

struct ParameterSet {
  int n = 1;
  Real q = Real(0.5, 256);
  bool degenerate = false;  // q == 1
  Complex g = Complex(256);
  std::array<Complex, 4> gr{Complex(256), Complex(256), Complex(256), Complex(256)};
  Permutation perm{0, 1, 2, 3};
  /// The 2n+2 couplings of the Gustafson sum; empty unless that identity is used.
  std::vector<Complex> couplings;

  /// Throws InvalidParameters on n < 1, q outside (0,1], degenerate flag not
  /// matching q, or a non-bijective perm.
  void validate() const;

  const Complex& role(int r) const { return gr[static_cast<std::size_t>(perm[static_cast<std::size_t>(r)])]; }
  const Complex& ga() const { return role(0); }
  const Complex& gb() const { return role(1); }
  const Complex& gc() const { return role(2); }
  const Complex& gd() const { return role(3); }
  Complex coupling_sum() const;
  Precision precision() const { return q.precision(); }
};

/// Builds a parameter set from decimal/rational text at the given precision.
ParameterSet make_parameters(int n, const std::string& q, const std::string& g,
                             const std::array<std::string, 4>& gr, Precision bits);

/// Hat couplings by role (a,b,c,d).
struct HatParameters {
  std::array<Complex, 4> hat;
  const Complex& a() const { return hat[0]; }
  const Complex& b() const { return hat[1]; }
  const Complex& c() const { return hat[2]; }
  const Complex& d() const { return hat[3]; }
};

/// Half-sum transform of four values given by role.
std::array<Complex, 4> hat_transform(const std::array<Complex, 4>& by_role);
HatParameters hat_transform(const ParameterSet& params);

struct RhoVectors {
  std::vector<Complex> rho;
  std::vector<Complex> rho_hat;
};

RhoVectors rho_vectors(const ParameterSet& params);

/// Linear exponent c0 + c_g g + sum_r c_r g_r with half-integer coefficients,
/// stored doubled. Every exponent of the Rogers weights and of the terminating
/// norms has this form, which lets the same formula be evaluated numerically
/// or as an exact rational function of q, q^g and q^{g_r}.
struct Lin {
  // twice[0]: constant, twice[1]: g, twice[2+r]: g_r (r = 0..3)
  std::array<long, 6> twice{};

  static Lin constant(long c) { Lin l; l.twice[0] = 2 * c; return l; }
  static Lin g() { Lin l; l.twice[1] = 2; return l; }
  static Lin coupling(int index) { Lin l; l.twice[static_cast<std::size_t>(2 + index)] = 2; return l; }
  /// g_{perm[role]}
  static Lin role(const Permutation& perm, int role) { return coupling(perm[static_cast<std::size_t>(role)]); }
  /// hat coupling of the given role under perm.
  static Lin hat(const Permutation& perm, int role);
  static Lin coupling_sum();

  bool is_constant() const;
  /// True when all coefficients are integers (needed for rational evaluation).
  bool integral() const;

  Lin operator-() const;
  Lin& operator+=(const Lin& rhs);
  Lin& operator-=(const Lin& rhs);
  friend Lin operator+(Lin a, const Lin& b) { return a += b; }
  friend Lin operator-(Lin a, const Lin& b) { return a -= b; }
  friend Lin operator+(Lin a, long c) { a.twice[0] += 2 * c; return a; }
  friend Lin operator-(Lin a, long c) { a.twice[0] -= 2 * c; return a; }
  friend Lin operator+(long c, Lin a) { a.twice[0] += 2 * c; return a; }
  friend Lin operator-(long c, const Lin& a) { return -a + c; }
  friend Lin operator*(long k, Lin a);
  friend bool operator==(const Lin& a, const Lin& b) { return a.twice == b.twice; }

  Complex evaluate(const ParameterSet& params) const;
  std::string str() const;
};

/// rho_j = (n-j) g + g_a and rho-hat_j = (n-j) g + ghat_a, j = 1..n (1-based).
Lin rho_lin(int n, int j, const Permutation& perm);
Lin rho_hat_lin(int n, int j, const Permutation& perm);

/// Omega_q = Z + (2 pi / (i log q)) Z for 0<q<1 and Z for q = 1.
class PeriodLattice {
 public:
  PeriodLattice(const Real& q, bool degenerate);
  /// Distance from w to the nearest lattice point.
  Real distance(const Complex& w) const;
  /// Distance to the set {-1,-2,...} + imaginary periods.
  Real distance_to_negative_integers(const Complex& w) const;
  /// Distance to the imaginary periods (2 pi / (i log q)) Z only.
  Real distance_to_imaginary_periods(const Complex& w) const;
  bool contains(const Complex& w, const Real& threshold) const { return scaled(distance(w)) <= threshold; }
  /// Converts a distance to the units the genericity threshold is expressed in
  /// (|log q| times the distance, or the distance itself for q = 1).
  Real scaled(const Real& distance) const;
  bool degenerate() const { return degenerate_; }
  /// Imaginary period 2 pi / |log q| (zero when degenerate).
  const Real& period() const { return period_; }

 private:
  Complex snap_imaginary(const Complex& w) const;
  bool degenerate_;
  Real log_q_abs_;
  Real period_;
};

struct ConvergenceCheck {
  bool ok = false;
  Real margin;      // min over j of the real part
  int worst_j = 1;  // 1-based
};

/// Re(1 + 2(n-j) g + g1+g2+g3+g4) > 0 for all j.
ConvergenceCheck check_convergence_bilateral(const ParameterSet& params);
/// Re(1 - 2(n-j) g - g1-g2-g3-g4) > 0 for all j.
ConvergenceCheck check_convergence_unilateral(const ParameterSet& params);
/// Re(1 + sum of the Gustafson couplings) > 0.
ConvergenceCheck check_convergence_gustafson(const ParameterSet& params);

struct Violation {
  std::string what;
  Complex value;
  Real distance;
};

/// Default lattice-proximity threshold.
Real default_genericity_threshold();

std::vector<Violation> check_genericity(const std::vector<Complex>& z, const ParameterSet& params, IdentityKind kind,
                                        const Real& threshold = default_genericity_threshold());

/// (n-1) g + g_a + g_b + N == 0, to 2^{-bits/2}.
bool check_truncation(const ParameterSet& params, long N);

/// A fixed generic evaluation point of length n.
std::vector<Complex> default_z(int n, Precision bits);

}  // namespace vwp
