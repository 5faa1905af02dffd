// vwpsum: verify very-well-poised summation identities from the command line.
//
//   vwpsum verify  --identity macdonald --n 2 --q 0.5 --g 0.35 --z 0.37,0.11
//   vwpsum battery --suite properties --out reports/
//   vwpsum sweep   --identity macdonald --axis q --values 0.3,0.5,0.7
//
// Exit codes: 0 pass, 1 fail, 2 precondition or usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vwp/battery.hpp"
#include "vwp/cli.hpp"

namespace fs = std::filesystem;
using namespace vwp;

namespace {

struct Flags {
  std::string config, identity, q, g, gs, perm, z, mode, tol, out;
  std::array<std::string, 4> gr;
  int n = 0, threads = 1;
  long N = 0, max_radius = 0;
  Precision bits = 256;
  std::uint64_t seed = 1;
  bool literal_typo = false, skip_genericity = false, no_timing = false;
  std::map<std::string, CLI::Option*> opts;

  bool given(const std::string& name) const {
    auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  }
};

void add_job_flags(CLI::App& app, Flags& f) {
  f.opts["config"] = app.add_option("--config", f.config, "JSON job document; flags override its keys");
  f.opts["identity"] = app.add_option(
      "--identity", f.identity, "macdonald | aomoto-ito | bailey-dougall | rogers | terminating | gustafson | recurrence");
  f.opts["n"] = app.add_option("--n", f.n, "Rank");
  f.opts["q"] = app.add_option("--q", f.q, "Nome in (0,1]; 1 selects the gamma-function branch");
  f.opts["g"] = app.add_option("--g", f.g, "Coupling g");
  for (int r = 0; r < 4; ++r) {
    std::string name = "g" + std::to_string(r + 1);
    f.opts[name] = app.add_option("--" + name, f.gr[static_cast<std::size_t>(r)], "Coupling " + name);
  }
  f.opts["gs"] = app.add_option("--gs", f.gs, "Gustafson couplings, comma-separated (2n+2 values)");
  f.opts["perm"] = app.add_option("--perm", f.perm, "Role permutation (a,b,c,d), e.g. 3,1,4,2");
  f.opts["z"] = app.add_option("--z", f.z, "Evaluation point, comma-separated; complex entries as a+bi");
  f.opts["N"] = app.add_option("--N", f.N, "Truncation order of the terminating identity");
  f.opts["mode"] = app.add_option("--mode", f.mode, "float | rational");
  f.opts["precision_bits"] = app.add_option("--precision-bits", f.bits, "Working precision in bits");
  f.opts["tol"] = app.add_option("--tol", f.tol, "Relative tolerance (default 10^-(bits/8))");
  f.opts["max_radius"] = app.add_option("--max-radius", f.max_radius, "Largest summation radius");
  f.opts["seed"] = app.add_option("--seed", f.seed, "Seed for sampled rational points");
  f.opts["threads"] = app.add_option("--threads", f.threads, "Worker threads for term evaluation");
  f.opts["literal_typo"] =
      app.add_flag("--literal-aomoto-typo", f.literal_typo, "Use the q=1 Aomoto-Ito coupling list as printed");
  f.opts["skip_genericity"] = app.add_flag("--skip-genericity", f.skip_genericity, "Do not check the evaluation point");
  f.opts["out"] = app.add_option("--out", f.out, "Output file (verify, sweep) or directory (battery)");
  f.opts["no_timing"] = app.add_flag("--no-timing", f.no_timing, "Omit wall-clock fields for byte-stable output");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidParameters, "cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

JobSpec job_from(const Flags& f) {
  JobSpec spec;
  if (f.given("config")) apply_json(spec, read_file(f.config));
  if (f.given("identity")) spec.identity = f.identity;
  if (f.given("n")) spec.n = f.n;
  if (f.given("q")) spec.q = f.q;
  if (f.given("g")) spec.g = f.g;
  for (std::size_t r = 0; r < 4; ++r)
    if (f.given("g" + std::to_string(r + 1))) spec.gr[r] = f.gr[r];
  if (f.given("gs")) spec.gs = split_list(f.gs);
  if (f.given("perm")) {
    auto items = split_list(f.perm);
    nlohmann::json list = nlohmann::json::array();
    for (const auto& i : items) list.push_back(i);
    apply_json(spec, nlohmann::json{{"perm", list}}.dump());
  }
  if (f.given("z")) spec.z = split_list(f.z);
  if (f.given("N")) spec.N = f.N;
  if (f.given("mode")) spec.mode = f.mode;
  if (f.given("precision_bits")) spec.precision_bits = f.bits;
  if (f.given("tol")) spec.tol = f.tol;
  if (f.given("max_radius")) spec.max_radius = f.max_radius;
  if (f.given("seed")) spec.seed = f.seed;
  if (f.given("threads")) spec.threads = f.threads;
  if (f.given("literal_typo")) spec.literal_aomoto_typo = true;
  if (f.given("skip_genericity")) spec.skip_genericity = true;
  return spec;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorKind::InvalidParameters, "cannot write " + path);
}

int usage_error(const std::string& what) {
  nlohmann::ordered_json j;
  j["verdict"] = "fail";
  j["error"] = {{"kind", "InvalidParameters"}, {"detail", what}};
  std::cout << j.dump(2) << "\n";
  return 2;
}

int cmd_verify(const Flags& f) {
  JobSpec spec = job_from(f);
  if (auto warning = decay_warning(spec)) std::cerr << "warning: " << *warning << "\n";
  VerificationReport report = run_job(spec);
  write_text(f.out, report.to_json(!f.no_timing) + "\n");
  if (!f.out.empty())
    std::cerr << to_string(report.kind) << ": " << (report.pass ? "pass" : "fail") << " (rel_err "
              << report.rel_err.to_double() << ")\n";
  return exit_code(report);
}

int cmd_battery(const Flags& f, const std::string& suite) {
  if (suite.empty()) return usage_error("battery needs --suite (one of classical-n1, theorems, properties, "
                                        "rational-terminating, recurrence)");
  BatteryOptions options;
  options.seed = f.seed;
  options.threads = f.threads;
  options.bits = f.bits;
  std::vector<CaseResult> cases;
  try {
    cases = run_suite(suite, options);
  } catch (const Error& e) {
    return usage_error(e.detail());
  }
  bool all = true;
  for (const auto& c : cases) {
    all = all && c.pass;
    std::cout << (c.pass ? "PASS " : "FAIL ") << suite << "/" << c.name << "  " << c.detail << "\n";
  }
  if (!f.out.empty()) {
    fs::path dir = fs::path(f.out) / suite;
    fs::create_directories(dir);
    for (const auto& c : cases) write_text((dir / (c.name + ".json")).string(), c.to_json(!f.no_timing) + "\n");
    write_text((dir / "summary.json").string(), summary_json(suite, cases, !f.no_timing) + "\n");
  }
  return all ? 0 : 1;
}

int cmd_sweep(const Flags& f, const std::string& axis, const std::string& values) {
  if (axis.empty() || values.empty()) return usage_error("sweep needs --axis and --values");
  JobSpec spec = job_from(f);
  if (auto warning = decay_warning(spec)) std::cerr << "warning: " << *warning << "\n";
  try {
    write_text(f.out, run_sweep(spec, axis, split_list(values), !f.no_timing));
  } catch (const Error& e) {
    return usage_error(e.detail());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate and verify very-well-poised hypergeometric summation identities"};
  app.require_subcommand(1);

  Flags verify_flags, battery_flags, sweep_flags;
  auto* verify = app.add_subcommand("verify", "Verify one identity at one parameter point");
  add_job_flags(*verify, verify_flags);

  std::string suite;
  auto* battery = app.add_subcommand("battery", "Run a fixed verification suite");
  battery->add_option("--suite", suite, "classical-n1 | theorems | properties | rational-terminating | recurrence");
  battery->add_option("--seed", battery_flags.seed, "Seed for the sampled cases");
  battery->add_option("--threads", battery_flags.threads, "Worker threads");
  battery->add_option("--precision-bits", battery_flags.bits, "Working precision in bits");
  battery->add_option("--out", battery_flags.out, "Directory for per-case reports and the summary");
  battery->add_flag("--no-timing", battery_flags.no_timing, "Omit wall-clock fields");

  std::string axis, values;
  auto* sweep = app.add_subcommand("sweep", "Verify along one parameter axis and write CSV");
  add_job_flags(*sweep, sweep_flags);
  sweep->add_option("--axis", axis, "q | g | g1..g4 | z1..zn | N");
  sweep->add_option("--values", values, "Comma-separated grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) return cmd_verify(verify_flags);
    if (*battery) return cmd_battery(battery_flags, suite);
    if (*sweep) return cmd_sweep(sweep_flags, axis, values);
  } catch (const Error& e) {
    return usage_error(e.detail());
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
  return 2;
}
