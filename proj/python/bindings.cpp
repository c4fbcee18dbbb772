#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "alcqi/engine.hpp"
#include "alcqi/errors.hpp"
#include "alcqi/oracle.hpp"
#include "alcqi/parser.hpp"
#include "alcqi/problem.hpp"
#include "alcqi/problem_file.hpp"

namespace py = pybind11;
using namespace alcqi;

namespace {

py::dict stats_dict(const Stats& s) {
  py::dict d;
  d["restarts"] = s.restarts;
  d["nodes"] = s.nodes;
  d["nogoods"] = s.nogoods;
  d["lii_solves"] = s.lii_solves;
  d["max_lambda"] = s.max_lambda;
  d["wall_ms"] = s.wall_ms;
  d["nogoods_at_restart"] = s.nogoods_at_restart;
  return d;
}

struct Result {
  bool satisfiable;
  py::dict stats;
  std::vector<std::string> trace;
};

Result run(const Concept& query, const std::vector<Axiom>& tbox, const Limits& limits,
           bool trace) {
  std::vector<std::string> lines;
  Observers obs;
  if (trace) obs.trace = [&](const std::string& line) { lines.push_back(line); };
  Verdict v = [&] {
    py::gil_scoped_release release;
    return decide(make_problem(query, tbox), limits, obs);
  }();
  return {v.satisfiable(), stats_dict(v.stats), std::move(lines)};
}

}  // namespace

PYBIND11_MODULE(_alcqi, m) {
  m.doc() = "ALCQI concept satisfiability with respect to general TBoxes";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError", PyExc_RuntimeError);
  py::register_exception<OracleRefusal>(m, "OracleRefusal", PyExc_RuntimeError);

  py::class_<Concept>(m, "Concept")
      .def(py::init([](const std::string& text) { return parse_concept(text); }), py::arg("text"))
      .def("__str__", [](const Concept& c) { return to_string(c); })
      .def("__repr__", [](const Concept& c) { return "Concept('" + to_string(c) + "')"; })
      .def("__eq__", [](const Concept& a, const Concept& b) { return a == b; })
      .def("__hash__", &Concept::hash)
      .def("nnf", [](const Concept& c) { return to_nnf(c); })
      .def("negate", [](const Concept& c) { return negate(c); });

  py::class_<Axiom>(m, "Axiom")
      .def(py::init<Concept, Concept>(), py::arg("lhs"), py::arg("rhs"))
      .def_readonly("lhs", &Axiom::lhs)
      .def_readonly("rhs", &Axiom::rhs);

  py::class_<Limits>(m, "Limits")
      .def(py::init<>())
      .def_readwrite("lambda_max", &Limits::lambda_max)
      .def_readwrite("node_budget", &Limits::node_budget)
      .def_readwrite("solver_node_limit", &Limits::solver_node_limit)
      .def_readwrite("nogood_capacity", &Limits::nogood_capacity)
      .def_readwrite("strict_blocking", &Limits::strict_blocking);

  py::class_<Result>(m, "Result")
      .def_readonly("satisfiable", &Result::satisfiable)
      .def_readonly("stats", &Result::stats)
      .def_readonly("trace", &Result::trace)
      .def("__bool__", [](const Result& r) { return r.satisfiable; });

  py::class_<ProblemFile>(m, "ProblemFile")
      .def_readonly("tbox", &ProblemFile::tbox)
      .def_readonly("query", &ProblemFile::query)
      .def("__str__", [](const ProblemFile& p) { return print_problem_file(p); });

  m.def("parse_problem", [](const std::string& text) { return parse_problem_file(text); },
        py::arg("text"));
  m.def("parse_tbox", [](const std::string& text) { return parse_tbox_file(text); },
        py::arg("text"));

  m.def(
      "decide",
      [](const Concept& query, const std::vector<Axiom>& tbox, std::optional<Limits> limits,
         bool trace) { return run(query, tbox, limits.value_or(Limits{}), trace); },
      py::arg("query"), py::arg("tbox") = std::vector<Axiom>{}, py::arg("limits") = py::none(),
      py::arg("trace") = false);
  m.def(
      "decide_problem",
      [](const std::string& text, std::optional<Limits> limits, bool trace) {
        const auto p = parse_problem_file(text);
        return run(p.query, p.tbox, limits.value_or(Limits{}), trace);
      },
      py::arg("text"), py::arg("limits") = py::none(), py::arg("trace") = false);

  m.def(
      "find_model",
      [](const Concept& goal, const std::vector<Axiom>& tbox, int max_domain) -> py::object {
        const auto search = find_model(to_nnf(goal), internalize(tbox), max_domain);
        if (!search.found()) return py::none();
        return py::str(dump(*search.model));
      },
      py::arg("goal"), py::arg("tbox") = std::vector<Axiom>{}, py::arg("max_domain") = 3,
      "Dump of the smallest model found, or None.");

  m.def(
      "generate_corpus",
      [](std::uint64_t seed, std::size_t count) {
        std::vector<std::string> out;
        for (const auto& p : generate_corpus(seed, count)) out.push_back(print_problem_file(p));
        return out;
      },
      py::arg("seed"), py::arg("count"));
}
