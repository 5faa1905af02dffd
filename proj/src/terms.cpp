#include "vwp/terms.hpp"

#include <numbers>

namespace vwp {

namespace {

Complex one(Precision bits) { return Complex(1L, bits); }

std::string describe(const char* what, const Complex& w) { return std::string(what) + " at w = " + w.str(20); }

}  // namespace

Nome::Nome(const Real& q, bool degenerate, const PrecisionContext& ctx)
    : degenerate_(degenerate),
      ctx_(ctx),
      q_(q.with_precision(ctx.bits)),
      log_q_(0L, ctx.bits),
      period_(0L, ctx.bits),
      threshold_(ldexp(Real(1L, 64), -static_cast<long>(ctx.bits) / 2)),
      q_inf_(1L, ctx.bits) {
  if (!degenerate_) {
    log_q_ = log(q_);
    period_ = Real::pi(ctx.bits) * 2L / abs(log_q_);
    q_inf_ = qpoch_infinite(Complex(q_), Complex(q_), ctx_).value;
  }
}

Complex Nome::reduce(const Complex& w) const {
  Complex s = w.with_precision(ctx_.bits);
  if (!degenerate_) s.im -= period_ * round(s.im / period_);
  return s;
}

bool Nome::integer_hit(const Complex& w, long& k) const {
  Complex s = reduce(w);
  Real nearest = round(s.re);
  if (abs(s.re - nearest) > threshold_ || abs(s.im) > threshold_) return false;
  k = -nearest.to_long();
  return true;
}

Complex Nome::pow(const Complex& w) const {
  if (degenerate_) return one(ctx_.bits);
  return exp(w.with_precision(ctx_.bits) * log_q_);
}

Complex Nome::bracket(const Complex& w) const {
  long k = 0;
  if (integer_hit(w, k) && k == 0) return Complex(ctx_.bits);
  if (degenerate_) return w.with_precision(ctx_.bits);
  return 1L - pow(w);
}

Complex Nome::factorial(const Complex& w, long m) const {
  long k = 0;
  bool hit = integer_hit(w, k);
  if (m >= 0) {
    // factors w, w+1, ..., w+m-1
    if (hit && k >= 0 && k < m) return Complex(ctx_.bits);
  } else if (hit && k <= -1 && k >= m) {
    // factors w-1, ..., w+m: one of them vanishes
    throw Error(ErrorKind::DivisionByVanishingFactor, describe("finite q-shifted factorial with negative length", w));
  }
  if (degenerate_) return pochhammer(w.with_precision(ctx_.bits), m);
  return qpoch_finite(pow(w), Complex(q_), m);
}

Complex Nome::inv_factorial(const Complex& w, long m) const {
  long k = 0;
  bool hit = integer_hit(w, k);
  if (m >= 0) {
    if (hit && k >= 0 && k < m)
      throw Error(ErrorKind::DivisionByVanishingFactor, describe("finite q-shifted factorial in a denominator", w));
  } else if (hit && k <= -1 && k >= m) {
    return Complex(ctx_.bits);
  }
  return reciprocal(factorial(w, m));
}

Complex Nome::infinite(const Complex& w) const {
  long k = 0;
  if (integer_hit(w, k) && k >= 0) return Complex(ctx_.bits);
  if (degenerate_) return rgamma(w.with_precision(ctx_.bits), ctx_);
  return qpoch_infinite(pow(w), Complex(q_), ctx_).value;
}

Complex Nome::inv_infinite(const Complex& w) const {
  Complex v = infinite(w);
  if (v.is_zero()) throw Error(ErrorKind::PoleHit, describe(degenerate_ ? "Gamma" : "1/(q^w;q)_inf", w));
  return reciprocal(v);
}

Complex Nome::theta(const Complex& w) const {
  long k = 0;
  if (integer_hit(w, k)) return Complex(ctx_.bits);
  if (degenerate_) return sin_reflection(w.with_precision(ctx_.bits));
  return theta_series(pow(w), Complex(q_), ctx_).value;
}

// ---------------------------------------------------------------------------

RationalRing::RationalRing(mpq_class q, mpq_class t, std::array<mpq_class, 4> x)
    : q_(std::move(q)), t_(std::move(t)), x_(std::move(x)) {
  if (sgn(q_) == 0 || sgn(t_) == 0) throw Error(ErrorKind::InvalidParameters, "rational generators must be nonzero");
  for (const auto& v : x_)
    if (sgn(v) == 0) throw Error(ErrorKind::InvalidParameters, "rational generators must be nonzero");
}

namespace {

mpq_class power(const mpq_class& base, long e) {
  mpq_class out(1);
  if (e == 0) return out;
  mpz_class num, den;
  unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), a);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), a);
  out = e > 0 ? mpq_class(num, den) : mpq_class(den, num);
  out.canonicalize();
  return out;
}

}  // namespace

mpq_class RationalRing::pow(const Lin& e) const {
  if (!e.integral()) throw Error(ErrorKind::InvalidParameters, "half-integral exponent " + e.str() + " in rational mode");
  mpq_class out = power(q_, e.twice[0] / 2) * power(t_, e.twice[1] / 2);
  for (std::size_t r = 0; r < 4; ++r) out *= power(x_[r], e.twice[2 + r] / 2);
  return out;
}

mpq_class RationalRing::factorial(const Lin& e, long m) const {
  mpq_class base = pow(e);
  mpq_class out(1);
  if (m >= 0) {
    mpq_class p = base;
    for (long k = 0; k < m; ++k) {
      out *= 1 - p;
      p *= q_;
    }
    return out;
  }
  mpq_class qinv = 1 / q_;
  mpq_class p = base * qinv;
  for (long k = 1; k <= -m; ++k) {
    mpq_class f = 1 - p;
    if (sgn(f) == 0) throw Error(ErrorKind::DivisionByVanishingFactor, "factor 1 - q^{" + e.str() + "-" + std::to_string(k) + "}");
    out *= f;
    p *= qinv;
  }
  return 1 / out;
}

mpq_class DegenerateRationalRing::evaluate(const Lin& e) const {
  mpq_class out(e.twice[0]);
  out += g_ * e.twice[1];
  for (std::size_t r = 0; r < 4; ++r) out += gr_[r] * e.twice[2 + r];
  out /= 2;
  return out;
}

mpq_class DegenerateRationalRing::factorial(const Lin& e, long m) const {
  mpq_class a = evaluate(e);
  mpq_class out(1);
  if (m >= 0) {
    for (long k = 0; k < m; ++k) out *= a + k;
    return out;
  }
  for (long k = 1; k <= -m; ++k) {
    mpq_class f = a - k;
    if (sgn(f) == 0) throw Error(ErrorKind::DivisionByVanishingFactor, "Pochhammer factor (" + e.str() + ")-" + std::to_string(k));
    out *= f;
  }
  return 1 / out;
}

// ---------------------------------------------------------------------------

TermValue TermValue::make(const Complex& v, long factors, const PrecisionContext& ctx) {
  return {LogComplex::from(v), ctx.unit_roundoff() * factors};
}

namespace {

using Vec = std::vector<Complex>;

std::vector<Complex> rho_hat_values(const ParameterSet& params) { return rho_vectors(params).rho_hat; }

void check_rank(const Vec& x, const ParameterSet& params) {
  if (static_cast<int>(x.size()) != params.n)
    throw Error(ErrorKind::InvalidParameters, "vector length " + std::to_string(x.size()) + " differs from n");
}

Vec shifted(const Vec& z, std::span<const long> lambda) {
  Vec x;
  x.reserve(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) x.push_back(z[j] + lambda[j]);
  return x;
}

Vec negated(const Vec& x) {
  Vec out;
  for (const auto& v : x) out.push_back(-v);
  return out;
}

// Shared shape of C+, C+hat and C-hat: pair (q^{a+s},q^{a+d})/(q^{b+s},q^{b+d}),
// single prod_r (q^{c+e_r x})... written out per function below.
long c_factor_count(int n) { return 4L * n * (n - 1) / 2 + 5L * n; }

Complex c_plus_value(const Vec& x, const std::array<Complex, 4>& couplings, const ParameterSet& params,
                     const Nome& nome) {
  const Precision bits = nome.bits();
  Complex out = one(bits);
  const int n = params.n;
  for (int j = 0; j < n; ++j) {
    const Complex& xj = x[static_cast<std::size_t>(j)];
    for (int k = j + 1; k < n; ++k) {
      const Complex& xk = x[static_cast<std::size_t>(k)];
      Complex s = xj + xk, d = xj - xk;
      out *= nome.infinite(1L + s) * nome.infinite(1L + d);
      out *= nome.inv_infinite(params.g + 1L + s) * nome.inv_infinite(params.g + 1L + d);
    }
    out *= nome.infinite(xj * 2L + 1L);
    for (const auto& c : couplings) out *= nome.inv_infinite(c + 1L + xj);
  }
  return out;
}

}  // namespace

TermValue c_plus(const Vec& x, const ParameterSet& params, const PrecisionContext& ctx) {
  check_rank(x, params);
  Nome nome(params, ctx);
  return TermValue::make(c_plus_value(x, params.gr, params, nome), c_factor_count(params.n), ctx);
}

TermValue c_plus_hat(const Vec& x, const ParameterSet& params, const PrecisionContext& ctx) {
  check_rank(x, params);
  Nome nome(params, ctx);
  return TermValue::make(c_plus_value(x, hat_transform(params).hat, params, nome), c_factor_count(params.n), ctx);
}

TermValue c_minus(const Vec& x, const ParameterSet& params, const PrecisionContext& ctx) {
  check_rank(x, params);
  Nome nome(params, ctx);
  const Precision bits = ctx.bits;
  const int n = params.n;
  Vec rho_hat = rho_hat_values(params);
  Complex exponent(bits);
  for (int j = 0; j < n; ++j) exponent += (rho_hat[static_cast<std::size_t>(j)] * 2L + 1L) * x[static_cast<std::size_t>(j)];
  Complex out = nome.pow(-exponent);
  for (int j = 0; j < n; ++j) {
    const Complex& xj = x[static_cast<std::size_t>(j)];
    for (int k = j + 1; k < n; ++k) {
      const Complex& xk = x[static_cast<std::size_t>(k)];
      Complex s = xj + xk, d = xj - xk;
      out *= nome.infinite(s - params.g) * nome.infinite(d - params.g);
      out *= nome.inv_infinite(s) * nome.inv_infinite(d);
    }
    for (const auto& c : params.gr) out *= nome.infinite(xj - c);
    out *= nome.inv_infinite(xj * 2L);
  }
  return TermValue::make(out, c_factor_count(n) + 1, ctx);
}

TermValue c_minus_hat(const Vec& x, const ParameterSet& params, const PrecisionContext& ctx) {
  check_rank(x, params);
  Nome nome(params, ctx);
  const int n = params.n;
  HatParameters hat = hat_transform(params);
  Complex out = one(ctx.bits);
  for (int j = 0; j < n; ++j) {
    const Complex& xj = x[static_cast<std::size_t>(j)];
    for (int k = j + 1; k < n; ++k) {
      const Complex& xk = x[static_cast<std::size_t>(k)];
      Complex s = xj + xk, d = xj - xk;
      out *= nome.infinite(1L - params.g + s) * nome.infinite(1L - params.g + d);
      out *= nome.inv_infinite(1L + s) * nome.inv_infinite(1L + d);
    }
    for (const auto& c : hat.hat) out *= nome.infinite(1L - c + xj);
    out *= nome.inv_infinite(xj * 2L + 1L);
  }
  return TermValue::make(out, c_factor_count(n), ctx);
}

TermValue macdonald_term(const Vec& z, std::span<const long> lambda, const ParameterSet& params,
                         const PrecisionContext& ctx) {
  check_rank(z, params);
  Vec x = shifted(z, lambda);
  Complex den = c_plus(x, params, ctx).to_complex() * c_plus(negated(x), params, ctx).to_complex();
  if (den.is_zero()) throw Error(ErrorKind::PoleHit, "C+(x) C+(-x) vanishes");
  return TermValue::make(reciprocal(den), 2 * c_factor_count(params.n) + 1, ctx);
}

// ---------------------------------------------------------------------------
// One-dimensional factors of the bilateral terms. `y` is the full argument
// (z_j +- z_k + m or z_j + m).

namespace {

Complex macdonald_pair(const Nome& nome, const Complex& g, const Complex& y) {
  Complex num = nome.infinite(g + 1L + y) * nome.infinite(g + 1L - y);
  if (num.is_zero()) return num;
  return num * nome.inv_infinite(1L + y) * nome.inv_infinite(1L - y);
}

Complex macdonald_single(const Nome& nome, const std::array<Complex, 4>& gr, const Complex& y) {
  Complex num = one(nome.bits());
  for (const auto& c : gr) {
    num *= nome.infinite(c + 1L + y) * nome.infinite(c + 1L - y);
    if (num.is_zero()) return num;
  }
  return num * nome.inv_infinite(y * 2L + 1L) * nome.inv_infinite(1L - y * 2L);
}

Complex aomoto_pair(const Nome& nome, const Complex& g, const Complex& y) {
  Complex num = nome.bracket(y) * nome.infinite(g + 1L + y);
  if (num.is_zero()) return num;
  return num * nome.inv_infinite(y - g);
}

// The four couplings entering the q=1 Gamma(-g_r + x) factors.
std::array<Complex, 4> aomoto_lower(const ParameterSet& params, const TermOptions& options) {
  if (options.literal_aomoto_q1_typo && params.degenerate) return {params.gr[0], params.gr[2], params.gr[2], params.gr[3]};
  return params.gr;
}

Complex aomoto_single(const Nome& nome, const ParameterSet& params, const std::array<Complex, 4>& lower,
                      const Complex& rho_hat, const Complex& y) {
  Complex num = nome.pow((rho_hat * 2L + 1L) * y) * nome.bracket(y * 2L);
  if (num.is_zero()) return num;
  for (const auto& c : params.gr) num *= nome.infinite(c + 1L + y);
  if (num.is_zero()) return num;
  for (const auto& c : lower) num *= nome.inv_infinite(y - c);
  return num;
}

Complex bailey_pair(const Nome& nome, const Complex& g, const Complex& base, long m) {
  if (m == 0) return one(nome.bits());
  Complex den = nome.inv_factorial(g + 1L + base, m);
  if (den.is_zero()) return den;
  Complex num = nome.bracket(base + m) * nome.factorial(base - g, m);
  if (num.is_zero()) return num;
  Complex b = nome.bracket(base);
  if (b.is_zero()) throw Error(ErrorKind::DivisionByVanishingFactor, describe("1-q^{z_j+-z_k}", base));
  return num * den / b;
}

Complex bailey_single(const Nome& nome, const ParameterSet& params, const Complex& rho_hat, const Complex& z, long m) {
  if (m == 0) return one(nome.bits());
  Complex out = one(nome.bits());
  for (const auto& c : params.gr) {
    out *= nome.inv_factorial(c + 1L + z, m);
    if (out.is_zero()) return out;
  }
  for (const auto& c : params.gr) out *= nome.factorial(z - c, m);
  if (out.is_zero()) return out;
  Complex b = nome.bracket(z * 2L);
  if (b.is_zero()) throw Error(ErrorKind::DivisionByVanishingFactor, describe("1-q^{2z_j}", z));
  return out * nome.pow((rho_hat * 2L + 1L) * m) * nome.bracket((z + m) * 2L) / b;
}

Complex gustafson_pair(const Nome& nome, const Complex& y) {
  return nome.inv_infinite(1L + y) * nome.inv_infinite(1L - y);
}

Complex gustafson_single(const Nome& nome, const std::vector<Complex>& couplings, const Complex& y) {
  Complex num = one(nome.bits());
  for (const auto& c : couplings) {
    num *= nome.infinite(c + 1L + y) * nome.infinite(c + 1L - y);
    if (num.is_zero()) return num;
  }
  return num * nome.inv_infinite(y * 2L + 1L) * nome.inv_infinite(1L - y * 2L);
}

void check_gustafson(const ParameterSet& params) {
  if (static_cast<int>(params.couplings.size()) != 2 * params.n + 2)
    throw Error(ErrorKind::InvalidParameters, "the Gustafson sum needs 2n+2 = " + std::to_string(2 * params.n + 2) + " couplings");
}

}  // namespace

TermValue aomoto_term(const Vec& z, std::span<const long> lambda, const ParameterSet& params, const PrecisionContext& ctx,
                      const TermOptions& options) {
  check_rank(z, params);
  Nome nome(params, ctx);
  Vec x = shifted(z, lambda);
  Vec rho_hat = rho_hat_values(params);
  auto lower = aomoto_lower(params, options);
  Complex out = one(ctx.bits);
  for (int j = 0; j < params.n; ++j) {
    const Complex& xj = x[static_cast<std::size_t>(j)];
    out *= aomoto_single(nome, params, lower, rho_hat[static_cast<std::size_t>(j)], xj);
    for (int k = j + 1; k < params.n; ++k) {
      const Complex& xk = x[static_cast<std::size_t>(k)];
      out *= aomoto_pair(nome, params.g, xj + xk) * aomoto_pair(nome, params.g, xj - xk);
    }
  }
  return TermValue::make(out, c_factor_count(params.n) * 2, ctx);
}

TermValue aomoto_factor(const Vec& z, const ParameterSet& params, const PrecisionContext& ctx) {
  check_rank(z, params);
  Nome nome(params, ctx);
  Vec rho_hat = rho_hat_values(params);
  const Precision bits = ctx.bits;
  Complex exponent(bits);
  for (int j = 0; j < params.n; ++j) exponent += (rho_hat[static_cast<std::size_t>(j)] * 2L + 1L) * z[static_cast<std::size_t>(j)];
  Complex cube = nome.degenerate() ? Complex(pow(Real::pi(bits), 3)) : pow(nome.q_infinity(), 3);
  auto denominator = [&](const Complex& w) {
    Complex t = nome.theta(w);
    if (t.is_zero()) throw Error(ErrorKind::ThetaZeroHit, describe("theta denominator", w));
    return t;
  };
  Complex out = nome.pow(exponent);
  for (int j = 0; j < params.n; ++j) {
    const Complex& zj = z[static_cast<std::size_t>(j)];
    for (int k = j + 1; k < params.n; ++k) {
      const Complex& zk = z[static_cast<std::size_t>(k)];
      Complex s = zj + zk, d = zj - zk;
      out *= nome.theta(s) * nome.theta(d) / (denominator(s - params.g) * denominator(d - params.g));
    }
    Complex den = one(bits);
    for (const auto& c : params.gr) den *= denominator(zj - c);
    out *= cube * nome.theta(zj * 2L) / den;
  }
  return TermValue::make(out, 6L * params.n * params.n, ctx);
}

TermValue bailey_term(const Vec& z, std::span<const long> lambda, const ParameterSet& params, const PrecisionContext& ctx) {
  check_rank(z, params);
  Nome nome(params, ctx);
  Vec rho_hat = rho_hat_values(params);
  Complex out = one(ctx.bits);
  for (int j = 0; j < params.n && !out.is_zero(); ++j) {
    const Complex& zj = z[static_cast<std::size_t>(j)];
    out *= bailey_single(nome, params, rho_hat[static_cast<std::size_t>(j)], zj, lambda[static_cast<std::size_t>(j)]);
    for (int k = j + 1; k < params.n && !out.is_zero(); ++k) {
      const Complex& zk = z[static_cast<std::size_t>(k)];
      long lj = lambda[static_cast<std::size_t>(j)], lk = lambda[static_cast<std::size_t>(k)];
      out *= bailey_pair(nome, params.g, zj + zk, lj + lk);
      out *= bailey_pair(nome, params.g, zj - zk, lj - lk);
    }
  }
  return TermValue::make(out, c_factor_count(params.n) * 2, ctx);
}

TermValue rogers_term(std::span<const long> lambda, const ParameterSet& params, const PrecisionContext& ctx) {
  FloatRing ring(params, ctx);
  return TermValue::make(rogers_weight(ring, params.n, params.perm, lambda), c_factor_count(params.n) * 2, ctx);
}

TermValue gustafson_term(const Vec& x, const ParameterSet& params, const PrecisionContext& ctx) {
  check_rank(x, params);
  check_gustafson(params);
  Nome nome(params, ctx);
  Complex out = one(ctx.bits);
  for (int j = 0; j < params.n; ++j) {
    const Complex& xj = x[static_cast<std::size_t>(j)];
    out *= gustafson_single(nome, params.couplings, xj);
    for (int k = j + 1; k < params.n; ++k) {
      const Complex& xk = x[static_cast<std::size_t>(k)];
      out *= gustafson_pair(nome, xj + xk) * gustafson_pair(nome, xj - xk);
    }
  }
  return TermValue::make(out, static_cast<long>(params.couplings.size()) * 2 * params.n + 4L * params.n * params.n, ctx);
}

// ---------------------------------------------------------------------------

const Complex& FactorizedTerm::Table::at(long m) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(m); it != memo_.end()) return it->second;
  }
  Complex v = fn_(m);
  std::lock_guard lock(mutex_);
  // Another thread may have inserted the same (identical) value meanwhile.
  return memo_.emplace(m, std::move(v)).first->second;
}

FactorizedTerm::FactorizedTerm(int n, Complex prefactor) : n_(n), prefactor_(std::move(prefactor)) {
  pair_sum_.resize(static_cast<std::size_t>(n * (n - 1) / 2));
  pair_diff_.resize(pair_sum_.size());
  single_.resize(static_cast<std::size_t>(n));
}

std::size_t FactorizedTerm::pair_index(int j, int k) const {
  return static_cast<std::size_t>(j * n_ - j * (j + 1) / 2 + (k - j - 1));
}

void FactorizedTerm::set_pair(int j, int k, Factor sum, Factor diff) {
  pair_sum_[pair_index(j, k)] = std::make_unique<Table>(std::move(sum));
  pair_diff_[pair_index(j, k)] = std::make_unique<Table>(std::move(diff));
}

void FactorizedTerm::set_single(int j, Factor single) {
  single_[static_cast<std::size_t>(j)] = std::make_unique<Table>(std::move(single));
}

Complex FactorizedTerm::operator()(std::span<const long> lambda) const {
  Complex out = prefactor_;
  for (int j = 0; j < n_; ++j) {
    const Complex& f = single_[static_cast<std::size_t>(j)]->at(lambda[static_cast<std::size_t>(j)]);
    if (f.is_zero()) return f;
    out *= f;
  }
  for (int j = 0; j < n_; ++j)
    for (int k = j + 1; k < n_; ++k) {
      long lj = lambda[static_cast<std::size_t>(j)], lk = lambda[static_cast<std::size_t>(k)];
      const Complex& a = pair_sum_[pair_index(j, k)]->at(lj + lk);
      if (a.is_zero()) return a;
      const Complex& b = pair_diff_[pair_index(j, k)]->at(lj - lk);
      if (b.is_zero()) return b;
      out *= a;
      out *= b;
    }
  return out;
}

Complex FactorizedTerm::ratio(std::span<const long> lambda, int j) const {
  auto step = [](const Complex& next, const Complex& prev) {
    if (prev.is_zero()) throw Error(ErrorKind::DivisionByVanishingFactor, "term ratio from a vanishing term");
    return next / prev;
  };
  const long lj = lambda[static_cast<std::size_t>(j)];
  const Table& s = *single_[static_cast<std::size_t>(j)];
  Complex out = step(s.at(lj + 1), s.at(lj));
  for (int k = 0; k < n_; ++k) {
    if (k == j) continue;
    const long lk = lambda[static_cast<std::size_t>(k)];
    int a = std::min(j, k), b = std::max(j, k);
    const Table& ps = *pair_sum_[pair_index(a, b)];
    const Table& pd = *pair_diff_[pair_index(a, b)];
    long sum = lj + lk;
    long diff = a == j ? lj - lk : lk - lj;  // lambda_a - lambda_b
    long shift = a == j ? 1 : -1;
    out *= step(ps.at(sum + 1), ps.at(sum));
    out *= step(pd.at(diff + shift), pd.at(diff));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Context {
  ParameterSet params;
  PrecisionContext ctx;
  Nome nome;
  std::vector<Complex> z;
  std::vector<Complex> rho_hat;
  Context(const ParameterSet& p, const PrecisionContext& c, std::vector<Complex> zz)
      : params(p), ctx(c), nome(params, ctx), z(std::move(zz)), rho_hat(rho_vectors(params).rho_hat) {}
};

}  // namespace

std::unique_ptr<FactorizedTerm> make_macdonald_term(const Vec& z, const ParameterSet& params, const PrecisionContext& ctx) {
  check_rank(z, params);
  auto c = std::make_shared<Context>(params, ctx, z);
  auto term = std::make_unique<FactorizedTerm>(params.n, one(ctx.bits));
  for (int j = 0; j < params.n; ++j) {
    Complex zj = z[static_cast<std::size_t>(j)];
    term->set_single(j, [c, zj](long m) { return macdonald_single(c->nome, c->params.gr, zj + m); });
    for (int k = j + 1; k < params.n; ++k) {
      Complex s = zj + z[static_cast<std::size_t>(k)], d = zj - z[static_cast<std::size_t>(k)];
      term->set_pair(j, k, [c, s](long m) { return macdonald_pair(c->nome, c->params.g, s + m); },
                     [c, d](long m) { return macdonald_pair(c->nome, c->params.g, d + m); });
    }
  }
  return term;
}

std::unique_ptr<FactorizedTerm> make_aomoto_term(const Vec& z, const ParameterSet& params, const PrecisionContext& ctx,
                                                 const TermOptions& options) {
  check_rank(z, params);
  auto c = std::make_shared<Context>(params, ctx, z);
  auto lower = aomoto_lower(params, options);
  auto term = std::make_unique<FactorizedTerm>(params.n, one(ctx.bits));
  for (int j = 0; j < params.n; ++j) {
    Complex zj = z[static_cast<std::size_t>(j)];
    Complex rh = c->rho_hat[static_cast<std::size_t>(j)];
    term->set_single(j, [c, zj, rh, lower](long m) { return aomoto_single(c->nome, c->params, lower, rh, zj + m); });
    for (int k = j + 1; k < params.n; ++k) {
      Complex s = zj + z[static_cast<std::size_t>(k)], d = zj - z[static_cast<std::size_t>(k)];
      term->set_pair(j, k, [c, s](long m) { return aomoto_pair(c->nome, c->params.g, s + m); },
                     [c, d](long m) { return aomoto_pair(c->nome, c->params.g, d + m); });
    }
  }
  return term;
}

std::unique_ptr<FactorizedTerm> make_bailey_term(const Vec& z, const ParameterSet& params, const PrecisionContext& ctx) {
  check_rank(z, params);
  auto c = std::make_shared<Context>(params, ctx, z);
  auto term = std::make_unique<FactorizedTerm>(params.n, one(ctx.bits));
  for (int j = 0; j < params.n; ++j) {
    Complex zj = z[static_cast<std::size_t>(j)];
    Complex rh = c->rho_hat[static_cast<std::size_t>(j)];
    term->set_single(j, [c, zj, rh](long m) { return bailey_single(c->nome, c->params, rh, zj, m); });
    for (int k = j + 1; k < params.n; ++k) {
      Complex s = zj + z[static_cast<std::size_t>(k)], d = zj - z[static_cast<std::size_t>(k)];
      term->set_pair(j, k, [c, s](long m) { return bailey_pair(c->nome, c->params.g, s, m); },
                     [c, d](long m) { return bailey_pair(c->nome, c->params.g, d, m); });
    }
  }
  return term;
}

namespace {

struct RingContext {
  ParameterSet params;
  FloatRing ring;
  RingContext(const ParameterSet& p, const PrecisionContext& ctx) : params(p), ring(params, ctx) {}
};

}  // namespace

std::unique_ptr<FactorizedTerm> make_rogers_term(const ParameterSet& params, const PrecisionContext& ctx) {
  auto c = std::make_shared<RingContext>(params, ctx);
  const int n = params.n;
  const Permutation perm = params.perm;
  auto term = std::make_unique<FactorizedTerm>(n, one(ctx.bits));
  for (int j = 0; j < n; ++j) {
    term->set_single(j, [c, n, j, perm](long m) { return rogers_single(c->ring, n, j + 1, perm, m); });
    for (int k = j + 1; k < n; ++k) {
      Lin rj = rho_lin(n, j + 1, perm), rk = rho_lin(n, k + 1, perm);
      Lin s = rj + rk, d = rj - rk;
      term->set_pair(j, k, [c, s](long m) { return rogers_pair(c->ring, s, Lin::g(), m); },
                     [c, d](long m) { return rogers_pair(c->ring, d, Lin::g(), m); });
    }
  }
  return term;
}

std::unique_ptr<FactorizedTerm> make_gustafson_term(const Vec& z, const ParameterSet& params, const PrecisionContext& ctx) {
  check_rank(z, params);
  check_gustafson(params);
  auto c = std::make_shared<Context>(params, ctx, z);
  auto term = std::make_unique<FactorizedTerm>(params.n, one(ctx.bits));
  for (int j = 0; j < params.n; ++j) {
    Complex zj = z[static_cast<std::size_t>(j)];
    term->set_single(j, [c, zj](long m) { return gustafson_single(c->nome, c->params.couplings, zj + m); });
    for (int k = j + 1; k < params.n; ++k) {
      Complex s = zj + z[static_cast<std::size_t>(k)], d = zj - z[static_cast<std::size_t>(k)];
      term->set_pair(j, k, [c, s](long m) { return gustafson_pair(c->nome, s + m); },
                     [c, d](long m) { return gustafson_pair(c->nome, d + m); });
    }
  }
  return term;
}

TermValue term_ratio(IdentityKind kind, std::span<const long> lambda, int j, const Vec& z, const ParameterSet& params,
                     const PrecisionContext& ctx) {
  std::unique_ptr<FactorizedTerm> term;
  switch (kind) {
    case IdentityKind::Macdonald:
    case IdentityKind::Recurrence: term = make_macdonald_term(z, params, ctx); break;
    case IdentityKind::AomotoIto: term = make_aomoto_term(z, params, ctx); break;
    case IdentityKind::BaileyDougall: term = make_bailey_term(z, params, ctx); break;
    case IdentityKind::RogersNonterminating:
    case IdentityKind::Terminating: term = make_rogers_term(params, ctx); break;
    case IdentityKind::Gustafson: term = make_gustafson_term(z, params, ctx); break;
  }
  if (j < 0 || j >= params.n) throw Error(ErrorKind::InvalidParameters, "direction index out of range");
  return TermValue::make(term->ratio(lambda, j), 4L * params.n + 2, ctx);
}

}  // namespace vwp
