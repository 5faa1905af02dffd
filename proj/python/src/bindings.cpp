// Python bindings: jobs and reports cross the boundary as JSON text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vwp/battery.hpp"
#include "vwp/cli.hpp"

namespace py = pybind11;
using namespace vwp;

namespace {

JobSpec job(const std::string& json_text) {
  JobSpec spec;
  apply_json(spec, json_text);
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Verification engine for very-well-poised summation identities";

  py::register_exception<Error>(m, "VwpError", PyExc_ValueError);

  m.def(
      "verify_json",
      [](const std::string& job_json, bool include_timing) {
        JobSpec spec = job(job_json);
        VerificationReport report;
        {
          py::gil_scoped_release release;
          report = run_job(spec);
        }
        return py::make_tuple(report.to_json(include_timing), exit_code(report));
      },
      py::arg("job_json"), py::arg("include_timing") = true,
      "Run a job given as JSON; returns (report JSON, exit code).");

  m.def(
      "battery_json",
      [](const std::string& suite, std::uint64_t seed, int threads, Precision bits, bool include_timing) {
        BatteryOptions options{seed, threads, bits};
        std::vector<CaseResult> cases;
        {
          py::gil_scoped_release release;
          cases = run_suite(suite, options);
        }
        std::vector<std::string> out;
        for (const auto& c : cases) out.push_back(c.to_json(include_timing));
        return out;
      },
      py::arg("suite"), py::arg("seed") = 1, py::arg("threads") = 1, py::arg("precision_bits") = 256,
      py::arg("include_timing") = true, "Run a fixed suite; returns one JSON document per case.");

  m.def(
      "sweep_csv",
      [](const std::string& job_json, const std::string& axis, const std::vector<std::string>& values,
         bool include_timing) {
        JobSpec spec = job(job_json);
        py::gil_scoped_release release;
        return run_sweep(spec, axis, values, include_timing);
      },
      py::arg("job_json"), py::arg("axis"), py::arg("values"), py::arg("include_timing") = true);

  m.def("suite_names", &suite_names);
}
