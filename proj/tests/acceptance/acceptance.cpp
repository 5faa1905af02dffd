// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

#include "vwp/battery.hpp"

using namespace vwp;

namespace {

using Clock = std::chrono::steady_clock;

struct Limits {
  double rel_err = 0;      // strict upper bound; 0 means exact
  long max_radius = -1;    // -1: unchecked
  double max_ms = -1;      // -1: unchecked
};

class Cases {
 public:
  void add(const std::vector<CaseResult>& cases) {
    for (const auto& c : cases) by_name_[c.suite + "/" + c.name] = c;
  }
  const CaseResult* find(const std::string& key) const {
    auto it = by_name_.find(key);
    return it == by_name_.end() ? nullptr : &it->second;
  }
  std::vector<const CaseResult*> suite(const std::string& name) const {
    std::vector<const CaseResult*> out;
    for (const auto& [key, c] : by_name_)
      if (c.suite == name) out.push_back(&c);
    return out;
  }

 private:
  std::map<std::string, CaseResult> by_name_;
};

// Checks a report-backed case against the pinned limits; appends the reason on failure.
bool within(const Cases& cases, const std::string& key, const Limits& limits, std::string& why) {
  const CaseResult* c = cases.find(key);
  if (!c) {
    why += key + " missing; ";
    return false;
  }
  bool ok = c->pass;
  if (c->report) {
    const auto& r = *c->report;
    double rel = r.rel_err.to_double();
    if (limits.rel_err == 0 ? rel != 0 : !(rel < limits.rel_err)) ok = false;
    if (limits.max_radius >= 0 && r.radius_used > limits.max_radius) ok = false;
  }
  if (limits.max_ms >= 0 && c->wall_time_ms > limits.max_ms) ok = false;
  if (!ok) why += key + " (" + c->detail + ", " + std::to_string(static_cast<long>(c->wall_time_ms)) + " ms); ";
  return ok;
}

bool report(int number, const std::string& title, bool ok, const std::string& detail) {
  std::printf("Criterion %2d: %s  %s%s%s\n", number, ok ? "PASS" : "FAIL", title.c_str(), detail.empty() ? "" : "  ",
              detail.c_str());
  std::fflush(stdout);
  return ok;
}

double timed(const std::function<void()>& fn) {
  auto start = Clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

int main() {
  BatteryOptions options;
  options.seed = 1;
  options.bits = 256;
  Cases cases;
  std::map<std::string, double> suite_ms;
  for (const auto& name : suite_names())
    suite_ms[name] = timed([&] { cases.add(run_suite(name, options)); });

  bool all = true;
  std::string why;

  why.clear();
  all &= report(1, "Jacobi triple product, 1000 samples", within(cases, "properties/triple-product", {0, -1, 10e3}, why),
                why);

  why.clear();
  bool c2 = within(cases, "classical-n1/bailey", {1e-25, 120, 5e3}, why);
  c2 &= within(cases, "classical-n1/rogers-cone", {1e-25, -1, 5e3}, why);
  for (const char* n : {"1", "2", "3"}) {
    c2 &= within(cases, std::string("classical-n1/terminating-N") + n, {1e-40, -1, -1}, why);
    c2 &= within(cases, std::string("classical-n1/terminating-q1-N") + n, {1e-40, -1, -1}, why);
    c2 &= within(cases, std::string("classical-n1/terminating-rational-N") + n, {0, -1, -1}, why);
  }
  all &= report(2, "classical n=1 bilateral, unilateral and terminating sums", c2, why);

  why.clear();
  all &= report(3, "classical n=1 gamma-function bilateral sum at q=1",
                within(cases, "classical-n1/dougall-q1", {1e-8, 500, 30e3}, why), why);

  why.clear();
  bool c4 = within(cases, "theorems/macdonald-n2", {1e-15, 30, 60e3}, why);
  c4 &= within(cases, "theorems/macdonald-n3", {1e-8, 15, 600e3}, why);
  all &= report(4, "bilateral multiple sum at n=2 and n=3", c4, why);

  why.clear();
  all &= report(5, "independence of the evaluation point",
                within(cases, "theorems/z-independence-n2", {1e-12, -1, -1}, why), why);

  why.clear();
  bool c6 = suite_ms["rational-terminating"] < 300e3;
  long rational = 0;
  for (const CaseResult* c : cases.suite("rational-terminating")) {
    ++rational;
    c6 &= within(cases, c->suite + "/" + c->name, {0, -1, -1}, why);
  }
  c6 &= rational == 3 * 4 * 25;
  all &= report(6, "terminating identity in exact rational arithmetic (" + std::to_string(rational) + " points)", c6,
                why);

  why.clear();
  bool c7 = within(cases, "recurrence/n2", {1e-12, -1, -1}, why);
  c7 &= within(cases, "recurrence/q1-n2", {1e-6, -1, -1}, why);
  all &= report(7, "rank recurrence, 0<q<1 and q=1", c7, why);

  why.clear();
  all &= report(8, "Gustafson sum at n=2", within(cases, "theorems/gustafson-n2", {1e-12, 30, -1}, why), why);

  why.clear();
  bool c9 = true;
  double c9_ms = 0;
  for (const char* name : {"reflection", "quasi-periodicity", "aomoto-periodicity", "bailey-termwise", "cone-vanishing",
                           "alcove-vanishing", "hat-involution", "permutation-invariance"}) {
    c9 &= within(cases, std::string("properties/") + name, {0, -1, -1}, why);
    if (const CaseResult* c = cases.find(std::string("properties/") + name)) c9_ms += c->wall_time_ms;
  }
  c9 &= c9_ms < 60e3;
  all &= report(9, "structural property suite", c9, why);

  why.clear();
  all &= report(10, "tail-bound soundness on 20 configurations",
                within(cases, "properties/tail-soundness", {0, -1, -1}, why), why);

  return all ? 0 : 1;
}
