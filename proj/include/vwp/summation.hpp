#pragma once

// Lattice enumeration and adaptive summation with tail bounds.
//
// Bilateral sums run over l-infinity shells of Z^n, unilateral sums over the
// dominant cone sliced by l_1, and terminating sums over the alcove. After
// each shell the omitted mass is bounded by C * W(r), where W is the mass of a
// model weight outside radius r and C is 4 times the largest ratio
// |term|/weight seen on the outermost shell.

#include <functional>
#include <span>
#include <vector>

#include "vwp/terms.hpp"

namespace vwp {

enum class RegionKind { Bilateral, Cone, Alcove };

struct Region {
  RegionKind kind = RegionKind::Bilateral;
  int n = 1;
  long N = 0;  // alcove only

  void validate() const;
};

/// Points with max_j |l_j| = r in lexicographic order.
std::vector<LatticePoint> enumerate_shell(int n, long r);
/// Weakly decreasing nonnegative tuples with l_1 = r, in lexicographic order.
std::vector<LatticePoint> enumerate_cone_slice(int n, long r);
/// Weakly decreasing nonnegative tuples with l_1 <= up_to.
std::vector<LatticePoint> enumerate_cone(int n, long up_to);
std::vector<LatticePoint> enumerate_alcove(int n, long N);
long shell_size(int n, long r);

/// Model weight the terms are dominated by, up to a constant: x^{sum |l_j|}
/// for 0<q<1 and prod_j (1+|l_j|)^{-p} for q = 1.
class DecayModel {
 public:
  enum class Shape { Geometric, PowerLaw };

  static DecayModel geometric(const Real& rate);
  static DecayModel power_law(const Real& exponent);

  Shape shape() const { return shape_; }
  /// x for the geometric model, p for the power law.
  const Real& parameter() const { return parameter_; }
  Real weight(std::span<const long> lambda) const;
  /// Model mass outside radius r over Z^n (bilateral) or over the cone.
  Real tail(int n, long r, RegionKind region) const;

 private:
  Real one_dimensional(long l) const;
  Shape shape_ = Shape::Geometric;
  Real parameter_;
};

/// Decay model of the term of an identity. Throws ConvergenceViolated when
/// the relevant margin is not positive.
DecayModel decay_model(IdentityKind kind, const ParameterSet& params);

/// Power-law exponent p of the q=1 terms (the decay is l^{-p}).
Real power_law_exponent(IdentityKind kind, const ParameterSet& params);

/// Neumaier compensated accumulation of complex values.
class CompensatedSum {
 public:
  explicit CompensatedSum(Precision bits);
  void add(const Complex& x);
  Complex value() const;

 private:
  static void add_component(Real& sum, Real& carry, const Real& x);
  Real sum_re_, sum_im_, carry_re_, carry_im_;
};

struct SumOptions {
  long max_radius = 60;
  /// Stop once tail <= tolerance * |partial sum|.
  Real tolerance = Real(1e-30, 64);
  int threads = 1;
  /// Radius below which the sum never stops (the constant needs one shell).
  long min_radius = 1;
};

struct SumResult {
  Complex value;
  Real tail_bound;
  long terms_evaluated = 0;
  long radius_used = 0;
  /// Constant C of the tail bound, estimated from the outermost shell.
  Real constant;
  bool converged = false;
};

/// Carries the partial result when the radius limit is reached.
class RadiusExhausted : public Error {
 public:
  RadiusExhausted(SumResult partial, const std::string& detail)
      : Error(ErrorKind::RadiusExhausted, detail), partial_(std::move(partial)) {}
  const SumResult& partial() const { return partial_; }

 private:
  SumResult partial_;
};

SumResult sum_bilateral(const LatticeTerm& term, const DecayModel& model, const SumOptions& options,
                        const PrecisionContext& ctx);
SumResult sum_cone(const LatticeTerm& term, const DecayModel& model, const SumOptions& options,
                   const PrecisionContext& ctx);
/// Finite sum over the alcove; tail_bound is zero.
SumResult sum_alcove(const LatticeTerm& term, long N, const SumOptions& options, const PrecisionContext& ctx);

/// Sum of term over a fixed list of points in the given order.
Complex sum_points(const LatticeTerm& term, const std::vector<LatticePoint>& points, int threads,
                   const PrecisionContext& ctx);

/// Certified tail of the sum of `term` beyond radius r: C * W(r) with C from
/// shell r.
Real tail_bound(const LatticeTerm& term, const DecayModel& model, long r, RegionKind region,
                const PrecisionContext& ctx);
Real tail_bound(const DecayModel& model, const Real& constant, int n, long r, RegionKind region);

}  // namespace vwp
