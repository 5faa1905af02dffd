#pragma once

// Job specifications for the command-line tool and the Python module: parse
// a JSON document or flag values into a verification job, run it, and map
// the verdict to an exit code.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vwp/identities.hpp"

namespace vwp {

struct JobSpec {
  std::string identity = "macdonald";
  int n = 1;
  std::string q = "0.5";
  std::string g = "0";
  std::array<std::string, 4> gr{"0.1", "0.2", "0.3", "0.4"};
  /// Gustafson couplings (2n+2 values).
  std::vector<std::string> gs;
  /// 1-based role permutation (a,b,c,d).
  std::array<int, 4> perm{1, 2, 3, 4};
  /// Evaluation point; empty selects the built-in generic point.
  std::vector<std::string> z;
  std::optional<long> N;
  std::string mode = "float";
  Precision precision_bits = 256;
  std::optional<std::string> tol;
  long max_radius = 200;
  std::uint64_t seed = 1;
  int threads = 1;
  bool literal_aomoto_typo = false;
  bool skip_genericity = false;
};

/// Overlays the keys of a JSON object onto spec. Keys match the long flag
/// names without dashes (identity, n, q, g, g1..g4, gs, perm, z, N, mode,
/// precision_bits, tol, max_radius, seed, threads). Throws InvalidParameters
/// on unknown keys or malformed values.
void apply_json(JobSpec& spec, const std::string& json_text);

/// "a", "a+bi", "a-bi", "bi"; components are decimals or p/q rationals.
Complex parse_complex(const std::string& text, Precision bits);
/// Comma-separated list, surrounding blanks ignored.
std::vector<std::string> split_list(const std::string& text);

ParameterSet build_parameters(const JobSpec& spec);
std::vector<Complex> build_z(const JobSpec& spec);

/// Runs the job. Never throws: malformed input becomes an InvalidParameters
/// report.
VerificationReport run_job(const JobSpec& spec);

/// 0 pass, 1 fail, 2 precondition error.
int exit_code(const VerificationReport& report);

/// Warning text when a q=1 job decays more slowly than l^{-6}.
std::optional<std::string> decay_warning(const JobSpec& spec);

/// CSV sweep over one axis (q, g, g1..g4, z1..zn, N). One row per value;
/// per-point errors are recorded in the row.
std::string run_sweep(const JobSpec& base, const std::string& axis, const std::vector<std::string>& values,
                      bool include_timing = true);

}  // namespace vwp
