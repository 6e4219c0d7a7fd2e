#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "prerep/cli.hpp"
#include "prerep/errors.hpp"
#include "prerep/qsim.hpp"

namespace py = pybind11;
namespace cli = prerep::cli;

namespace {

cli::RunConfig parse_config(const std::string& config_json) {
  return config_json.empty() ? cli::RunConfig{} : cli::config_from_json(nlohmann::json::parse(config_json));
}

// Same document the command line writes, minus the summary table.
std::string document(const std::string& command, const std::vector<cli::SuiteResult>& suites,
                     const cli::RunConfig& cfg) {
  nlohmann::json doc;
  doc["schema_version"] = cli::kSchemaVersion;
  doc["command"] = command;
  doc["config"] = cli::config_to_json(cfg);
  doc["suites"] = nlohmann::json::array();
  for (const auto& s : suites) doc["suites"].push_back(cli::suite_to_json(s));
  return doc.dump();
}

template <class F>
std::string drive(const std::string& verb, const std::string& what, const std::string& config_json, F f) {
  const cli::RunConfig cfg = parse_config(config_json);
  std::vector<cli::SuiteResult> suites;
  {
    py::gil_scoped_release release;
    suites = f(what, cfg);
  }
  return document(verb + " " + what, suites, cfg);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bindings for the prerep verification workbench";
  m.attr("schema_version") = cli::kSchemaVersion;

  py::register_exception<prerep::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<prerep::CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<prerep::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("run", [](std::vector<std::string> args) {
    args.insert(args.begin(), "prerep");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Run the command line driver in-process; returns (exit_code, stdout, stderr).");

  m.def("check", [](const std::string& suite, const std::string& cfg) { return drive("check", suite, cfg, cli::cmd_check); },
        py::arg("suite"), py::arg("config_json") = "");
  m.def("solve", [](const std::string& what, const std::string& cfg) { return drive("solve", what, cfg, cli::cmd_solve); },
        py::arg("what"), py::arg("config_json") = "");
  m.def("sim", [](const std::string& what, const std::string& cfg) { return drive("sim", what, cfg, cli::cmd_sim); },
        py::arg("what"), py::arg("config_json") = "");

  m.def("bell_probabilities", &prerep::qsim::bell_probabilities, py::arg("theta"));
  m.def("singlet_correlation", &prerep::qsim::singlet_correlation, py::arg("a"), py::arg("b"));
  m.def("chsh", &prerep::qsim::chsh, py::arg("a"), py::arg("a_prime"), py::arg("b"), py::arg("b_prime"));
  m.def("chsh_classical_bound", &prerep::qsim::chsh_classical_bound);
}
