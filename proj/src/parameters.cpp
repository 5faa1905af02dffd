#include "vwp/parameters.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace vwp {

const char* to_string(IdentityKind kind) {
  switch (kind) {
    case IdentityKind::Macdonald: return "Macdonald";
    case IdentityKind::AomotoIto: return "AomotoIto";
    case IdentityKind::BaileyDougall: return "BaileyDougall";
    case IdentityKind::RogersNonterminating: return "RogersNonterminating";
    case IdentityKind::Terminating: return "Terminating";
    case IdentityKind::Gustafson: return "Gustafson";
    case IdentityKind::Recurrence: return "Recurrence";
  }
  return "Unknown";
}

IdentityKind identity_kind_from_string(const std::string& name) {
  std::string key;
  for (char ch : name)
    if (ch != '-' && ch != '_') key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (key == "macdonald") return IdentityKind::Macdonald;
  if (key == "aomotoito" || key == "aomoto") return IdentityKind::AomotoIto;
  if (key == "baileydougall" || key == "bailey" || key == "dougall") return IdentityKind::BaileyDougall;
  if (key == "rogersnonterminating" || key == "rogers") return IdentityKind::RogersNonterminating;
  if (key == "terminating") return IdentityKind::Terminating;
  if (key == "gustafson") return IdentityKind::Gustafson;
  if (key == "recurrence") return IdentityKind::Recurrence;
  throw Error(ErrorKind::InvalidParameters, "unknown identity '" + name + "'");
}

bool is_permutation(const Permutation& perm) {
  std::array<bool, 4> seen{};
  for (int p : perm) {
    if (p < 0 || p > 3 || seen[static_cast<std::size_t>(p)]) return false;
    seen[static_cast<std::size_t>(p)] = true;
  }
  return true;
}

std::vector<Permutation> all_permutations() {
  std::vector<Permutation> out;
  Permutation p{0, 1, 2, 3};
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

void ParameterSet::validate() const {
  if (n < 1) throw Error(ErrorKind::InvalidParameters, "n must be >= 1");
  Real one(1L, q.precision());
  if (!(q.sign() > 0) || q > one) throw Error(ErrorKind::InvalidParameters, "q must lie in (0,1]");
  if (degenerate != (q == one)) throw Error(ErrorKind::InvalidParameters, "degenerate flag must equal (q == 1)");
  if (!is_permutation(perm)) throw Error(ErrorKind::InvalidParameters, "perm must be a permutation of (1,2,3,4)");
}

Complex ParameterSet::coupling_sum() const { return gr[0] + gr[1] + gr[2] + gr[3]; }

ParameterSet make_parameters(int n, const std::string& q, const std::string& g,
                             const std::array<std::string, 4>& gr, Precision bits) {
  ParameterSet p;
  p.n = n;
  p.q = Real::parse(q, bits);
  p.degenerate = p.q == Real(1L, bits);
  p.g = Complex(Real::parse(g, bits));
  for (std::size_t r = 0; r < 4; ++r) p.gr[r] = Complex(Real::parse(gr[r], bits));
  p.validate();
  return p;
}

std::array<Complex, 4> hat_transform(const std::array<Complex, 4>& v) {
  return {(v[0] + v[1] + v[2] + v[3]) / 2L, (v[0] + v[1] - v[2] - v[3]) / 2L, (v[0] - v[1] + v[2] - v[3]) / 2L,
          (v[0] - v[1] - v[2] + v[3]) / 2L};
}

HatParameters hat_transform(const ParameterSet& params) {
  return {hat_transform({params.ga(), params.gb(), params.gc(), params.gd()})};
}

RhoVectors rho_vectors(const ParameterSet& params) {
  HatParameters hat = hat_transform(params);
  RhoVectors out;
  for (int j = 1; j <= params.n; ++j) {
    Complex shift = params.g * static_cast<long>(params.n - j);
    out.rho.push_back(shift + params.ga());
    out.rho_hat.push_back(shift + hat.a());
  }
  return out;
}

// ---------------------------------------------------------------------------

Lin Lin::hat(const Permutation& perm, int role) {
  static constexpr int kSigns[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
  Lin l;
  for (int s = 0; s < 4; ++s)
    l.twice[static_cast<std::size_t>(2 + perm[static_cast<std::size_t>(s)])] += kSigns[role][s];
  return l;
}

Lin Lin::coupling_sum() {
  Lin l;
  for (std::size_t r = 0; r < 4; ++r) l.twice[2 + r] = 2;
  return l;
}

bool Lin::is_constant() const {
  return std::all_of(twice.begin() + 1, twice.end(), [](long c) { return c == 0; });
}

bool Lin::integral() const {
  return std::all_of(twice.begin(), twice.end(), [](long c) { return c % 2 == 0; });
}

Lin Lin::operator-() const {
  Lin l;
  for (std::size_t i = 0; i < twice.size(); ++i) l.twice[i] = -twice[i];
  return l;
}

Lin& Lin::operator+=(const Lin& rhs) {
  for (std::size_t i = 0; i < twice.size(); ++i) twice[i] += rhs.twice[i];
  return *this;
}

Lin& Lin::operator-=(const Lin& rhs) {
  for (std::size_t i = 0; i < twice.size(); ++i) twice[i] -= rhs.twice[i];
  return *this;
}

Lin operator*(long k, Lin a) {
  for (long& c : a.twice) c *= k;
  return a;
}

Complex Lin::evaluate(const ParameterSet& params) const {
  const Precision bits = params.precision();
  Complex out(Real(twice[0], bits));
  if (twice[1] != 0) out += params.g * twice[1];
  for (std::size_t r = 0; r < 4; ++r)
    if (twice[2 + r] != 0) out += params.gr[r] * twice[2 + r];
  return out / 2L;
}

std::string Lin::str() const {
  static const char* names[] = {"", "g", "g1", "g2", "g3", "g4"};
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < twice.size(); ++i) {
    if (twice[i] == 0) continue;
    long c = twice[i];
    os << (c < 0 ? "-" : (first ? "" : "+"));
    long a = c < 0 ? -c : c;
    bool unit = a == 2 && i > 0;
    if (!unit) os << (a % 2 == 0 ? std::to_string(a / 2) : std::to_string(a) + "/2");
    os << names[i];
    first = false;
  }
  return first ? "0" : os.str();
}

Lin rho_lin(int n, int j, const Permutation& perm) { return static_cast<long>(n - j) * Lin::g() + Lin::role(perm, 0); }

Lin rho_hat_lin(int n, int j, const Permutation& perm) {
  return static_cast<long>(n - j) * Lin::g() + Lin::hat(perm, 0);
}

// ---------------------------------------------------------------------------

PeriodLattice::PeriodLattice(const Real& q, bool degenerate)
    : degenerate_(degenerate), log_q_abs_(q.precision()), period_(0L, q.precision()) {
  if (!degenerate_) {
    log_q_abs_ = -log(q);
    period_ = Real::pi(q.precision()) * 2L / log_q_abs_;
  }
}

Complex PeriodLattice::snap_imaginary(const Complex& w) const {
  if (degenerate_) return w;
  return Complex(w.re, w.im - period_ * round(w.im / period_));
}

Real PeriodLattice::distance(const Complex& w) const {
  Complex s = snap_imaginary(w);
  return hypot(s.re - round(s.re), s.im);
}

Real PeriodLattice::distance_to_negative_integers(const Complex& w) const {
  Complex s = snap_imaginary(w);
  Real k = round(s.re);
  if (k.sign() >= 0) k = Real(-1L, w.precision());
  return hypot(s.re - k, s.im);
}

Real PeriodLattice::distance_to_imaginary_periods(const Complex& w) const {
  Complex s = snap_imaginary(w);
  return hypot(s.re, s.im);
}

Real PeriodLattice::scaled(const Real& distance) const { return degenerate_ ? distance : distance * log_q_abs_; }

// ---------------------------------------------------------------------------

namespace {

ConvergenceCheck min_margin(const ParameterSet& params, long sign) {
  ConvergenceCheck out;
  Real sum = params.coupling_sum().re;
  for (int j = 1; j <= params.n; ++j) {
    Real m = Real(1L, params.precision()) + (params.g.re * static_cast<long>(2 * (params.n - j)) + sum) * sign;
    if (j == 1 || m < out.margin) {
      out.margin = m;
      out.worst_j = j;
    }
  }
  out.ok = out.margin.sign() > 0;
  return out;
}

}  // namespace

ConvergenceCheck check_convergence_bilateral(const ParameterSet& params) { return min_margin(params, 1); }
ConvergenceCheck check_convergence_unilateral(const ParameterSet& params) { return min_margin(params, -1); }

ConvergenceCheck check_convergence_gustafson(const ParameterSet& params) {
  ConvergenceCheck out;
  Real m(1L, params.precision());
  for (const auto& c : params.couplings) m += c.re;
  out.margin = m;
  out.ok = m.sign() > 0;
  return out;
}

Real default_genericity_threshold() { return Real(1e-8, 64); }

std::vector<Violation> check_genericity(const std::vector<Complex>& z, const ParameterSet& params, IdentityKind kind,
                                        const Real& threshold) {
  PeriodLattice lattice(params.q, params.degenerate);
  std::vector<Violation> out;
  const int n = static_cast<int>(z.size());
  auto test = [&](const std::string& what, const Complex& w, Real d) {
    if (lattice.scaled(d) <= threshold) out.push_back({what, w, std::move(d)});
  };
  auto in_lattice = [&](const std::string& what, const Complex& w) { test(what, w, lattice.distance(w)); };
  auto negative_integer = [&](const std::string& what, const Complex& w) {
    test(what, w, lattice.distance_to_negative_integers(w));
  };
  auto imaginary_period = [&](const std::string& what, const Complex& w) {
    test(what, w, lattice.distance_to_imaginary_periods(w));
  };
  auto idx = [](int j) { return std::to_string(j + 1); };

  switch (kind) {
    case IdentityKind::Macdonald:
    case IdentityKind::AomotoIto:
    case IdentityKind::Gustafson:
    case IdentityKind::Recurrence:
      for (int j = 0; j < n; ++j) {
        in_lattice("2z_" + idx(j), z[static_cast<std::size_t>(j)] * 2L);
        for (int k = j + 1; k < n; ++k) {
          in_lattice("z_" + idx(j) + "+z_" + idx(k), z[static_cast<std::size_t>(j)] + z[static_cast<std::size_t>(k)]);
          in_lattice("z_" + idx(j) + "-z_" + idx(k), z[static_cast<std::size_t>(j)] - z[static_cast<std::size_t>(k)]);
        }
      }
      if (kind == IdentityKind::AomotoIto) {
        for (int j = 0; j < n; ++j) {
          const Complex& zj = z[static_cast<std::size_t>(j)];
          for (int r = 0; r < 4; ++r) in_lattice("-g_" + idx(r) + "+z_" + idx(j), zj - params.gr[static_cast<std::size_t>(r)]);
          for (int k = j + 1; k < n; ++k) {
            const Complex& zk = z[static_cast<std::size_t>(k)];
            in_lattice("-g+z_" + idx(j) + "+z_" + idx(k), zj + zk - params.g);
            in_lattice("-g+z_" + idx(j) + "-z_" + idx(k), zj - zk - params.g);
          }
        }
      }
      break;
    case IdentityKind::BaileyDougall:
      for (int j = 0; j < n; ++j) {
        const Complex& zj = z[static_cast<std::size_t>(j)];
        imaginary_period("z_" + idx(j), zj);
        for (int r = 0; r < 4; ++r) {
          const Complex& gr = params.gr[static_cast<std::size_t>(r)];
          negative_integer("g_" + idx(r) + "+z_" + idx(j), gr + zj);
          negative_integer("g_" + idx(r) + "-z_" + idx(j), gr - zj);
        }
        for (int k = j + 1; k < n; ++k) {
          const Complex& zk = z[static_cast<std::size_t>(k)];
          imaginary_period("z_" + idx(j) + "+z_" + idx(k), zj + zk);
          imaginary_period("z_" + idx(j) + "-z_" + idx(k), zj - zk);
          for (int s1 : {1, -1})
            for (int s2 : {1, -1}) {
              Complex w = params.g + zj * static_cast<long>(s1) + zk * static_cast<long>(s2);
              negative_integer(std::string("g") + (s1 > 0 ? "+" : "-") + "z_" + idx(j) + (s2 > 0 ? "+" : "-") + "z_" + idx(k), w);
            }
        }
      }
      break;
    case IdentityKind::RogersNonterminating:
    case IdentityKind::Terminating:
      break;
  }
  return out;
}

bool check_truncation(const ParameterSet& params, long N) {
  Complex v = params.g * static_cast<long>(params.n - 1) + params.ga() + params.gb() + N;
  Real thresh = ldexp(Real(1L, 64), -static_cast<long>(params.precision()) / 2);
  return abs(v) <= thresh;
}

std::vector<Complex> default_z(int n, Precision bits) {
  static const char* base[] = {"0.37", "0.11", "-0.23", "0.29", "-0.17", "0.41", "0.07", "-0.31"};
  std::vector<Complex> z;
  for (int j = 0; j < n; ++j) {
    Real v = Real::parse(base[j % 8], bits) + Real(static_cast<long>(j / 8), bits) / 97L;
    z.emplace_back(v);
  }
  return z;
}

}  // namespace vwp
