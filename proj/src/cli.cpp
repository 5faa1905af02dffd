#include "vwp/cli.hpp"

#include <sstream>

#include "json.hpp"

namespace vwp {

namespace {

using nlohmann::json;

Error invalid(const std::string& what) { return Error(ErrorKind::InvalidParameters, what); }

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// JSON scalars and lists are accepted as strings or numbers; numbers keep
// their textual form.
std::string text_of(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long>());
  if (v.is_number()) return v.dump();
  throw invalid("'" + key + "' must be a number or string");
}

std::vector<std::string> list_of(const json& v, const std::string& key) {
  if (v.is_string()) return split_list(v.get<std::string>());
  if (!v.is_array()) throw invalid("'" + key + "' must be a list or comma-separated string");
  std::vector<std::string> out;
  for (const auto& item : v) out.push_back(text_of(item, key));
  return out;
}

long integer_of(const json& v, const std::string& key) {
  if (v.is_number_integer()) return v.get<long>();
  if (v.is_string()) {
    try {
      std::size_t used = 0;
      long out = std::stol(v.get<std::string>(), &used);
      if (used == v.get<std::string>().size()) return out;
    } catch (const std::exception&) {
    }
  }
  throw invalid("'" + key + "' must be an integer");
}

std::array<int, 4> parse_perm(const std::vector<std::string>& items) {
  if (items.size() != 4) throw invalid("perm needs four entries");
  std::array<int, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    try {
      out[i] = std::stoi(items[i]);
    } catch (const std::exception&) {
      throw invalid("perm entries must be integers 1..4");
    }
  }
  return out;
}

VerificationReport blank_report(const JobSpec& spec) {
  VerificationReport r;
  try {
    r.kind = identity_kind_from_string(spec.identity);
  } catch (const Error&) {
  }
  r.mode = spec.mode == "rational" ? Mode::Rational : Mode::Float;
  r.n = spec.n;
  r.q = spec.q;
  r.g = spec.g;
  r.gr = spec.gr;
  r.couplings = spec.gs;
  for (std::size_t i = 0; i < 4; ++i) r.perm[i] = spec.perm[i] - 1;
  r.z = spec.z;
  r.N = spec.N;
  r.precision_bits = spec.precision_bits;
  r.lhs = r.rhs = Complex(64);
  r.abs_err = r.rel_err = r.tail_bound = r.tolerance = Real(0L, 64);
  return r;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

std::string sci(const Real& x) {
  std::ostringstream out;
  out.precision(6);
  out << std::scientific << x.to_double();
  return out.str();
}

void apply_object(JobSpec& spec, const json& doc);

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Complex parse_complex(const std::string& raw, Precision bits) {
  std::string s = trim(raw);
  try {
    if (s.empty()) throw invalid("empty number");
    if (s.back() != 'i') return Complex(Real::parse(s, bits));
    s.pop_back();
    // split at the last sign that is not an exponent sign
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;)
      if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
        split = k;
        break;
      }
    auto imag = [&](std::string t) {
      if (t.empty() || t == "+") return Real(1L, bits);
      if (t == "-") return Real(-1L, bits);
      if (t[0] == '+') t.erase(0, 1);
      return Real::parse(t, bits);
    };
    if (split == std::string::npos) return Complex(Real(0L, bits), imag(s));
    return Complex(Real::parse(s.substr(0, split), bits), imag(s.substr(split)));
  } catch (const std::invalid_argument& e) {
    throw invalid(e.what());
  }
}

void apply_json(JobSpec& spec, const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw invalid(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw invalid("config must be a JSON object");
  try {
    apply_object(spec, doc);
  } catch (const json::exception& e) {
    throw invalid(std::string("malformed config value: ") + e.what());
  }
}

namespace {

void apply_object(JobSpec& spec, const json& doc) {
  for (const auto& [key, v] : doc.items()) {
    if (key == "identity") spec.identity = text_of(v, key);
    else if (key == "n") spec.n = static_cast<int>(integer_of(v, key));
    else if (key == "q") spec.q = text_of(v, key);
    else if (key == "g") spec.g = text_of(v, key);
    else if (key.size() == 2 && key[0] == 'g' && key[1] >= '1' && key[1] <= '4')
      spec.gr[static_cast<std::size_t>(key[1] - '1')] = text_of(v, key);
    else if (key == "gs") spec.gs = list_of(v, key);
    else if (key == "perm") spec.perm = parse_perm(list_of(v, key));
    else if (key == "z") spec.z = list_of(v, key);
    else if (key == "N") spec.N = v.is_null() ? std::nullopt : std::optional<long>(integer_of(v, key));
    else if (key == "mode") spec.mode = text_of(v, key);
    else if (key == "precision_bits") spec.precision_bits = integer_of(v, key);
    else if (key == "tol") spec.tol = text_of(v, key);
    else if (key == "max_radius") spec.max_radius = integer_of(v, key);
    else if (key == "seed") spec.seed = static_cast<std::uint64_t>(integer_of(v, key));
    else if (key == "threads") spec.threads = static_cast<int>(integer_of(v, key));
    else if (key == "literal_aomoto_typo") spec.literal_aomoto_typo = v.get<bool>();
    else if (key == "skip_genericity") spec.skip_genericity = v.get<bool>();
    else throw invalid("unknown config key '" + key + "'");
  }
}

}  // namespace

ParameterSet build_parameters(const JobSpec& spec) {
  const Precision bits = spec.precision_bits;
  if (bits < 64) throw invalid("precision_bits must be at least 64");
  ParameterSet p;
  p.n = spec.n;
  p.q = parse_complex(spec.q, bits).re;
  if (!parse_complex(spec.q, bits).im.is_zero()) throw Error(ErrorKind::NomeOutOfRange, "q must be real");
  if (!(p.q > Real(0L, bits)) || p.q > Real(1L, bits))
    throw Error(ErrorKind::NomeOutOfRange, "q must lie in (0, 1]");
  p.degenerate = p.q == Real(1L, bits);
  p.g = parse_complex(spec.g, bits);
  for (std::size_t r = 0; r < 4; ++r) p.gr[r] = parse_complex(spec.gr[r], bits);
  for (std::size_t r = 0; r < 4; ++r) p.perm[r] = spec.perm[r] - 1;
  for (const auto& c : spec.gs) p.couplings.push_back(parse_complex(c, bits));
  p.validate();
  return p;
}

std::vector<Complex> build_z(const JobSpec& spec) {
  std::vector<Complex> z;
  for (const auto& v : spec.z) z.push_back(parse_complex(v, spec.precision_bits));
  return z;
}

VerificationReport run_job(const JobSpec& spec) {
  try {
    IdentityKind kind = identity_kind_from_string(spec.identity);
    if (spec.n < 1) throw invalid("n must be positive");
    if (spec.threads < 1) throw invalid("threads must be positive");
    if (spec.mode == "rational") {
      if (kind != IdentityKind::Terminating) throw invalid("rational mode is only defined for the terminating identity");
      if (!spec.N) throw invalid("the terminating identity needs N");
      Permutation perm;
      for (std::size_t i = 0; i < 4; ++i) perm[i] = spec.perm[i] - 1;
      if (!is_permutation(perm)) throw invalid("perm is not a permutation of 1..4");
      std::mt19937_64 rng(spec.seed);
      return verify_random_rational(spec.n, *spec.N, perm, rng);
    }
    if (spec.mode != "float") throw invalid("mode must be float or rational");
    ParameterSet params = build_parameters(spec);
    PrecisionContext ctx = PrecisionContext::with_bits(spec.precision_bits);
    VerifyOptions options;
    if (spec.tol) options.tolerance = parse_complex(*spec.tol, 64).re;
    options.max_radius = spec.max_radius;
    options.threads = spec.threads;
    options.term_options.literal_aomoto_q1_typo = spec.literal_aomoto_typo;
    options.skip_genericity = spec.skip_genericity;
    return verify(kind, params, build_z(spec), spec.N, ctx, options);
  } catch (const Error& e) {
    VerificationReport r = blank_report(spec);
    r.error = e.kind();
    r.error_detail = e.detail();
    return r;
  }
}

int exit_code(const VerificationReport& report) {
  if (report.pass) return 0;
  if (report.error && is_precondition_error(*report.error)) return 2;
  return 1;
}

std::optional<std::string> decay_warning(const JobSpec& spec) {
  try {
    IdentityKind kind = identity_kind_from_string(spec.identity);
    if (kind == IdentityKind::Terminating || spec.mode == "rational") return std::nullopt;
    ParameterSet params = build_parameters(spec);
    if (!params.degenerate) return std::nullopt;
    Real p = power_law_exponent(kind == IdentityKind::Recurrence ? IdentityKind::Macdonald : kind, params);
    if (p < Real(6L, 64)) {
      std::ostringstream out;
      out.precision(4);
      out << "q=1 terms decay like l^-" << p.to_double() << ", slower than l^-6; expect large radii";
      return out.str();
    }
  } catch (const Error&) {
  }
  return std::nullopt;
}

std::string run_sweep(const JobSpec& base, const std::string& axis, const std::vector<std::string>& values,
                      bool include_timing) {
  auto set = [&](JobSpec& spec, const std::string& v) {
    if (axis == "q") spec.q = v;
    else if (axis == "g") spec.g = v;
    else if (axis.size() == 2 && axis[0] == 'g' && axis[1] >= '1' && axis[1] <= '4')
      spec.gr[static_cast<std::size_t>(axis[1] - '1')] = v;
    else if (axis == "N") spec.N = std::stol(v);
    else if (axis.size() >= 2 && axis[0] == 'z') {
      std::size_t j = std::stoul(axis.substr(1));
      if (j < 1 || j > static_cast<std::size_t>(spec.n)) throw invalid("sweep axis " + axis + " is out of range");
      if (spec.z.empty()) {
        for (const auto& c : default_z(spec.n, 64)) {
          std::ostringstream out;
          out.precision(17);
          out << c.re.to_double();
          spec.z.push_back(out.str());
        }
      }
      spec.z[j - 1] = v;
    } else {
      throw invalid("unknown sweep axis '" + axis + "'");
    }
  };
  const bool coupling_axis = axis.size() == 2 && axis[0] == 'g' && axis[1] >= '1' && axis[1] <= '4';
  const bool z_axis = axis.size() >= 2 && axis[0] == 'z' && axis.find_first_not_of("0123456789", 1) == std::string::npos &&
                      std::stol(axis.substr(1)) >= 1 && std::stol(axis.substr(1)) <= base.n;
  if (!(axis == "q" || axis == "g" || axis == "N" || coupling_axis || z_axis))
    throw invalid("unknown sweep axis '" + axis + "'");

  std::ostringstream csv;
  csv << axis << ",verdict,rel_err,tail_bound,radius_used,terms_evaluated";
  if (include_timing) csv << ",wall_time_ms";
  csv << ",error\n";
  for (const auto& v : values) {
    JobSpec spec = base;
    VerificationReport r;
    try {
      set(spec, v);
      r = run_job(spec);
    } catch (const std::exception& e) {
      r = blank_report(spec);
      r.error = ErrorKind::InvalidParameters;
      r.error_detail = e.what();
    }
    csv << csv_field(v) << ',' << (r.pass ? "pass" : "fail") << ',' << sci(r.rel_err) << ',' << sci(r.tail_bound)
        << ',' << r.radius_used << ',' << r.terms_evaluated;
    if (include_timing) csv << ',' << static_cast<long>(r.wall_time_ms + 0.5);
    csv << ',' << (r.error ? csv_field(std::string(to_string(*r.error)) + ": " + r.error_detail) : "") << '\n';
  }
  return csv.str();
}

}  // namespace vwp
