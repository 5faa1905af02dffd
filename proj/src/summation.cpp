#include "vwp/summation.hpp"

#include <exception>
#include <thread>

namespace vwp {

namespace {

constexpr Precision kBoundBits = 128;

void shell_rec(int n, long r, LatticePoint& prefix, bool hit, std::vector<LatticePoint>& out) {
  const int i = static_cast<int>(prefix.size());
  if (i == n) {
    out.push_back(prefix);
    return;
  }
  const bool last = i == n - 1;
  for (long v = -r; v <= r; ++v) {
    bool h = hit || v == r || v == -r;
    if (last && !h) continue;
    prefix.push_back(v);
    shell_rec(n, r, prefix, h, out);
    prefix.pop_back();
  }
}

void cone_rec(int n, long bound, LatticePoint& prefix, std::vector<LatticePoint>& out) {
  if (static_cast<int>(prefix.size()) == n) {
    out.push_back(prefix);
    return;
  }
  for (long v = 0; v <= bound; ++v) {
    prefix.push_back(v);
    cone_rec(n, v, prefix, out);
    prefix.pop_back();
  }
}

Real binomial(int n, int k) {
  Real out(1L, kBoundBits);
  for (int i = 1; i <= k; ++i) out = out * static_cast<long>(n - k + i) / static_cast<long>(i);
  return out;
}

// Values of term at points, computed on up to `threads` threads. The result
// does not depend on the thread count; the first failure in point order is
// rethrown.
std::vector<Complex> evaluate_points(const LatticeTerm& term, const std::vector<LatticePoint>& points, int threads,
                                     Precision bits) {
  std::vector<Complex> values(points.size(), Complex(bits));
  const std::size_t count = points.size();
  std::size_t workers = static_cast<std::size_t>(std::max(1, threads));
  workers = std::min(workers, std::max<std::size_t>(1, count / 16));
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](std::size_t w) {
    std::size_t begin = count * w / workers, end = count * (w + 1) / workers;
    try {
      for (std::size_t i = begin; i < end; ++i) values[i] = term(points[i]);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return values;
}

struct ShellStats {
  Real ratio_max;  // max |term| / weight
  Real abs_max;    // max |term|
};

ShellStats shell_stats(const std::vector<LatticePoint>& points, const std::vector<Complex>& values,
                       const DecayModel& model) {
  ShellStats s{Real(0L, kBoundBits), Real(0L, kBoundBits)};
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (values[i].is_zero()) continue;
    Real a = round_up(abs(values[i]), kBoundBits);
    Real ratio = round_up(a / model.weight(points[i]), kBoundBits);
    if (ratio > s.ratio_max) s.ratio_max = ratio;
    if (a > s.abs_max) s.abs_max = a;
  }
  return s;
}

SumResult adaptive_sum(const LatticeTerm& term, const DecayModel& model, const SumOptions& options,
                       const PrecisionContext& ctx, RegionKind region) {
  const int n = term.rank();
  SumResult result{Complex(ctx.bits), Real(0L, kBoundBits), 0, 0, Real(0L, kBoundBits), false};
  CompensatedSum acc(ctx.bits);
  Real previous_max = Real::infinity(kBoundBits);
  for (long r = 0; r <= options.max_radius; ++r) {
    auto points = region == RegionKind::Bilateral ? enumerate_shell(n, r) : enumerate_cone_slice(n, r);
    auto values = evaluate_points(term, points, options.threads, ctx.bits);
    for (const auto& v : values) acc.add(v);
    ShellStats stats = shell_stats(points, values, model);
    result.value = acc.value();
    result.terms_evaluated += static_cast<long>(points.size());
    result.radius_used = r;
    result.constant = stats.ratio_max * 4L;
    result.tail_bound = tail_bound(model, result.constant, n, r, region);
    bool decreasing = stats.abs_max <= previous_max;
    previous_max = stats.abs_max;
    if (r >= options.min_radius && decreasing && result.tail_bound <= options.tolerance * abs(result.value)) {
      result.converged = true;
      return result;
    }
  }
  throw RadiusExhausted(result, "tail bound " + result.tail_bound.str(6) + " above tolerance at radius " +
                                    std::to_string(options.max_radius));
}

}  // namespace

void Region::validate() const {
  if (n < 1) throw Error(ErrorKind::InvalidParameters, "region rank must be positive");
  if (kind == RegionKind::Alcove && N < 0) throw Error(ErrorKind::InvalidParameters, "alcove requires N >= 0");
}

std::vector<LatticePoint> enumerate_shell(int n, long r) {
  if (n < 1 || r < 0) throw Error(ErrorKind::InvalidParameters, "shell requires n >= 1 and r >= 0");
  std::vector<LatticePoint> out;
  if (r == 0) {
    out.emplace_back(static_cast<std::size_t>(n), 0L);
    return out;
  }
  out.reserve(static_cast<std::size_t>(shell_size(n, r)));
  LatticePoint prefix;
  shell_rec(n, r, prefix, false, out);
  return out;
}

std::vector<LatticePoint> enumerate_cone_slice(int n, long r) {
  if (n < 1 || r < 0) throw Error(ErrorKind::InvalidParameters, "cone slice requires n >= 1 and r >= 0");
  std::vector<LatticePoint> out;
  LatticePoint prefix{r};
  cone_rec(n, r, prefix, out);
  return out;
}

std::vector<LatticePoint> enumerate_cone(int n, long up_to) {
  if (n < 1 || up_to < 0) throw Error(ErrorKind::InvalidParameters, "cone requires n >= 1 and a bound >= 0");
  std::vector<LatticePoint> out;
  for (long r = 0; r <= up_to; ++r) {
    auto slice = enumerate_cone_slice(n, r);
    out.insert(out.end(), slice.begin(), slice.end());
  }
  return out;
}

std::vector<LatticePoint> enumerate_alcove(int n, long N) { return enumerate_cone(n, N); }

long shell_size(int n, long r) {
  if (r == 0) return 1;
  long outer = 1, inner = 1;
  for (int i = 0; i < n; ++i) {
    outer *= 2 * r + 1;
    inner *= 2 * r - 1;
  }
  return outer - inner;
}

// ---------------------------------------------------------------------------

DecayModel DecayModel::geometric(const Real& rate) {
  if (!(rate.sign() > 0 && rate < Real(1L, rate.precision())))
    throw Error(ErrorKind::ConvergenceViolated, "geometric decay rate must lie in (0,1)");
  DecayModel m;
  m.shape_ = Shape::Geometric;
  m.parameter_ = rate.with_precision(kBoundBits);
  return m;
}

DecayModel DecayModel::power_law(const Real& exponent) {
  if (!(exponent > Real(1L, exponent.precision())))
    throw Error(ErrorKind::ConvergenceViolated, "power-law exponent must exceed 1");
  DecayModel m;
  m.shape_ = Shape::PowerLaw;
  m.parameter_ = exponent.with_precision(kBoundBits);
  return m;
}

Real DecayModel::one_dimensional(long l) const {
  if (shape_ == Shape::Geometric) return pow(parameter_, std::labs(l));
  return pow(Real(1L + std::labs(l), kBoundBits), -parameter_);
}

Real DecayModel::weight(std::span<const long> lambda) const {
  if (shape_ == Shape::Geometric) {
    long total = 0;
    for (long l : lambda) total += std::labs(l);
    return pow(parameter_, total);
  }
  Real out(1L, kBoundBits);
  for (long l : lambda) out *= one_dimensional(l);
  return out;
}

Real DecayModel::tail(int n, long r, RegionKind region) const {
  const Real one(1L, kBoundBits);
  const Real& x = parameter_;
  if (region == RegionKind::Alcove) return Real(0L, kBoundBits);
  if (shape_ == Shape::Geometric) {
    Real xr1 = pow(x, r + 1);
    if (region == RegionKind::Cone) {
      Real out = xr1 / (one - x);
      for (int i = 1; i < n; ++i) out /= one - pow(x, static_cast<long>(i));
      return round_up(out, kBoundBits);
    }
    Real inner = one + x * 2L * (one - pow(x, r)) / (one - x);
    Real outer = xr1 * 2L / (one - x);
    Real out(0L, kBoundBits);
    for (int i = 1; i <= n; ++i) out += binomial(n, i) * pow(outer, static_cast<long>(i)) * pow(inner, static_cast<long>(n - i));
    return round_up(out, kBoundBits);
  }
  const Real& p = parameter_;
  Real beyond = pow(Real(1L + r, kBoundBits), one - p) / (p - one);
  if (region == RegionKind::Cone) {
    Real z = one + one / (p - one);
    return round_up(beyond * pow(z, static_cast<long>(n - 1)), kBoundBits);
  }
  Real inner = one;
  for (long l = 1; l <= r; ++l) inner += one_dimensional(l) * 2L;
  Real outer = beyond * 2L;
  Real out(0L, kBoundBits);
  for (int i = 1; i <= n; ++i) out += binomial(n, i) * pow(outer, static_cast<long>(i)) * pow(inner, static_cast<long>(n - i));
  return round_up(out, kBoundBits);
}

Real power_law_exponent(IdentityKind kind, const ParameterSet& params) {
  const Real three(3L, kBoundBits);
  if (kind == IdentityKind::Gustafson) {
    Real sum(0L, kBoundBits);
    for (const auto& c : params.couplings) sum += c.re;
    return three + sum * 2L;
  }
  const bool reflected = kind == IdentityKind::RogersNonterminating || kind == IdentityKind::Terminating;
  Real g = params.g.re.with_precision(kBoundBits);
  Real sum = params.coupling_sum().re.with_precision(kBoundBits);
  if (reflected) {
    g = -g;
    sum = -sum;
  }
  const long eps = g.sign() >= 0 ? 1 : -1;
  Real best = Real::infinity(kBoundBits);
  for (int j = 1; j <= params.n; ++j) {
    Real p = three + g * static_cast<long>((3 - eps) * (params.n - j)) + sum * 2L;
    if (p < best) best = p;
  }
  return best;
}

DecayModel decay_model(IdentityKind kind, const ParameterSet& params) {
  ConvergenceCheck check;
  switch (kind) {
    case IdentityKind::RogersNonterminating:
    case IdentityKind::Terminating: check = check_convergence_unilateral(params); break;
    case IdentityKind::Gustafson: check = check_convergence_gustafson(params); break;
    default: check = check_convergence_bilateral(params); break;
  }
  if (!check.ok)
    throw Error(ErrorKind::ConvergenceViolated,
                "margin " + check.margin.str(6) + " at j = " + std::to_string(check.worst_j));
  if (params.degenerate) return DecayModel::power_law(power_law_exponent(kind, params));
  Real q = params.q.with_precision(kBoundBits);
  return DecayModel::geometric(pow(q, check.margin.with_precision(kBoundBits)));
}

// ---------------------------------------------------------------------------

CompensatedSum::CompensatedSum(Precision bits)
    : sum_re_(0L, bits), sum_im_(0L, bits), carry_re_(0L, bits), carry_im_(0L, bits) {}

void CompensatedSum::add_component(Real& sum, Real& carry, const Real& x) {
  Real t = sum + x;
  if (abs(sum) >= abs(x)) carry += (sum - t) + x;
  else carry += (x - t) + sum;
  sum = std::move(t);
}

void CompensatedSum::add(const Complex& x) {
  add_component(sum_re_, carry_re_, x.re);
  add_component(sum_im_, carry_im_, x.im);
}

Complex CompensatedSum::value() const { return Complex(sum_re_ + carry_re_, sum_im_ + carry_im_); }

// ---------------------------------------------------------------------------

Complex sum_points(const LatticeTerm& term, const std::vector<LatticePoint>& points, int threads,
                   const PrecisionContext& ctx) {
  CompensatedSum acc(ctx.bits);
  for (const auto& v : evaluate_points(term, points, threads, ctx.bits)) acc.add(v);
  return acc.value();
}

SumResult sum_bilateral(const LatticeTerm& term, const DecayModel& model, const SumOptions& options,
                        const PrecisionContext& ctx) {
  return adaptive_sum(term, model, options, ctx, RegionKind::Bilateral);
}

SumResult sum_cone(const LatticeTerm& term, const DecayModel& model, const SumOptions& options,
                   const PrecisionContext& ctx) {
  return adaptive_sum(term, model, options, ctx, RegionKind::Cone);
}

SumResult sum_alcove(const LatticeTerm& term, long N, const SumOptions& options, const PrecisionContext& ctx) {
  Region{RegionKind::Alcove, term.rank(), N}.validate();
  auto points = enumerate_alcove(term.rank(), N);
  SumResult result{sum_points(term, points, options.threads, ctx), Real(0L, kBoundBits),
                   static_cast<long>(points.size()), N, Real(0L, kBoundBits), true};
  return result;
}

Real tail_bound(const DecayModel& model, const Real& constant, int n, long r, RegionKind region) {
  if (constant.is_zero()) return Real(0L, kBoundBits);
  return round_up(constant * model.tail(n, r, region), kBoundBits);
}

Real tail_bound(const LatticeTerm& term, const DecayModel& model, long r, RegionKind region,
                const PrecisionContext& ctx) {
  const int n = term.rank();
  auto points = region == RegionKind::Bilateral ? enumerate_shell(n, r) : enumerate_cone_slice(n, r);
  auto values = evaluate_points(term, points, 1, ctx.bits);
  return tail_bound(model, shell_stats(points, values, model).ratio_max * 4L, n, r, region);
}

}  // namespace vwp
