#pragma once

// Fixed verification suites. Each case carries a verdict, a short detail
// string and, for sum verifications, the full report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vwp/identities.hpp"

namespace vwp {

struct CaseResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
  std::optional<VerificationReport> report;
  double wall_time_ms = 0;

  std::string to_json(bool include_timing = true) const;
};

struct BatteryOptions {
  std::uint64_t seed = 1;
  int threads = 1;
  Precision bits = 256;
};

/// classical-n1, theorems, properties, rational-terminating, recurrence.
const std::vector<std::string>& suite_names();

/// Throws InvalidParameters for an unknown suite.
std::vector<CaseResult> run_suite(const std::string& name, const BatteryOptions& options = {});

std::vector<CaseResult> suite_classical_n1(const BatteryOptions& options);
std::vector<CaseResult> suite_theorems(const BatteryOptions& options);
std::vector<CaseResult> suite_properties(const BatteryOptions& options);
std::vector<CaseResult> suite_rational_terminating(const BatteryOptions& options);
std::vector<CaseResult> suite_recurrence(const BatteryOptions& options);

/// JSON summary of a suite run: counts and one line per case.
std::string summary_json(const std::string& suite, const std::vector<CaseResult>& cases, bool include_timing = true);

}  // namespace vwp
