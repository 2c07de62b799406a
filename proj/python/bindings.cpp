// Python module: theories are passed as text, structured results as JSON
// strings that the package decodes.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fil/ai.hpp"
#include "fil/cli.hpp"
#include "fil/engine.hpp"
#include "fil/io.hpp"

namespace py = pybind11;
using namespace fil;

namespace {

TermUniverse universe_for(const Theory& th, std::size_t depth, const std::vector<Inequality>& queries) {
  std::vector<Term> extra;
  for (const auto& q : queries) {
    extra.push_back(q.lhs);
    extra.push_back(q.rhs);
  }
  for (const auto& [e, d] : th.assumptions.entries()) {
    extra.push_back(e.lhs);
    extra.push_back(e.rhs);
  }
  return TermUniverse::generate(th.signature, th.variables, depth).with_terms(extra);
}

std::size_t depth_of(const Theory& th, std::optional<std::size_t> depth) {
  return depth.value_or(th.options.depth.value_or(3));
}

std::string prove(const std::string& text, const std::string& query, std::optional<std::size_t> depth) {
  Theory th = parse_theory(text);
  Inequality e = th.parse_inequality(query);
  return provability_degree(th.assumptions, e, universe_for(th, depth_of(th, depth), {e})).to_string();
}

std::string proof(const std::string& text, const std::string& query, std::optional<std::size_t> depth) {
  Theory th = parse_theory(text);
  Inequality e = th.parse_inequality(query);
  auto st = syntactic_closure(universe_for(th, depth_of(th, depth), {e}), th.assumptions);
  return proof_to_json(extract_proof(st, e), theory_syntax(th)).dump();
}

std::string certify(const std::string& text, const std::string& query, std::optional<std::size_t> depth,
                    std::size_t model_size, std::uint64_t budget) {
  Theory th = parse_theory(text);
  Inequality e = th.parse_inequality(query);
  CertifyOptions o;
  o.max_model_size = model_size;
  o.budget = budget;
  auto c = certify_degree(th.assumptions, e, universe_for(th, depth_of(th, depth), {e}), o);
  Json j;
  j["lower"] = c.lower.to_string();
  j["upper"] = c.upper ? Json(c.upper->to_string()) : Json();
  j["certified"] = c.certified;
  j["models"] = c.models;
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j.dump();
}

std::string check(const std::string& text, const std::string& proof_json, bool strict) {
  Theory th = parse_theory(text);
  auto v = check_proof(parse_proof(proof_json, theory_syntax(th), th.lattice), th.assumptions, strict);
  Json j;
  j["accepted"] = v.ok;
  if (!v.ok) {
    j["step"] = *v.failed_step;
    j["reason"] = v.message;
  }
  return j.dump();
}

std::uint64_t count_models(const std::string& text, std::size_t size) {
  Theory th = parse_theory(text);
  EnumerationOptions o;
  o.min_size = o.max_size = size;
  auto r = enumerate_models(th.signature, th.lattice, th.assumptions, o, [](const FuzzyOrderedAlgebra&) { return true; });
  if (r.status == EnumerationStatus::budget_exceeded) throw BudgetExceeded("enumeration budget exceeded");
  return r.models;
}

std::string ai_prove(const std::string& text, const std::string& query, std::optional<std::size_t> cap) {
  AiTheory th = parse_ai_theory(text);
  return ai_prove_degree(th, th.parse_inequality(query), cap.value_or(default_cap(th.attributes))).to_string();
}

bool ai_equivalent(const std::string& text, std::optional<std::size_t> cap) {
  AiTheory th = parse_ai_theory(text);
  return compare_rule_systems(th, cap.value_or(default_cap(th.attributes))).equal;
}

py::tuple cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_fil, m) {
  m.doc() = "Graded inequational logic over finite residuated chains";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  auto semantic = py::register_exception<SemanticError>(m, "SemanticError", error.ptr());
  py::register_exception<LatticeMismatch>(m, "LatticeMismatch", semantic.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error.ptr());

  py::class_<ResiduatedLattice>(m, "Lattice")
      .def(py::init([](const std::string& decl) { return ResiduatedLattice::parse(decl); }), py::arg("declaration"))
      .def_property_readonly("name", &ResiduatedLattice::name)
      .def_property_readonly("denominator", &ResiduatedLattice::denominator)
      .def("elements", [](const ResiduatedLattice& l) {
        std::vector<std::string> out;
        for (const auto& d : l.elements()) out.push_back(d.to_string());
        return out;
      })
      .def("otimes", [](const ResiduatedLattice& l, const std::string& a, const std::string& b) {
        return l.otimes(l.parse_degree(a), l.parse_degree(b)).to_string();
      })
      .def("residuum", [](const ResiduatedLattice& l, const std::string& a, const std::string& b) {
        return l.residuum(l.parse_degree(a), l.parse_degree(b)).to_string();
      })
      .def("__repr__", [](const ResiduatedLattice& l) { return "Lattice('" + l.name() + "')"; });

  m.def("prove", &prove, py::arg("theory"), py::arg("query"), py::arg("depth") = py::none());
  m.def("proof_json", &proof, py::arg("theory"), py::arg("query"), py::arg("depth") = py::none());
  m.def("certify_json", &certify, py::arg("theory"), py::arg("query"), py::arg("depth") = py::none(),
        py::arg("model_size") = 3, py::arg("budget") = EnumerationOptions::default_budget);
  m.def("check_proof_json", &check, py::arg("theory"), py::arg("proof"), py::arg("strict") = false);
  m.def("count_models", &count_models, py::arg("theory"), py::arg("size"));
  m.def("ai_prove", &ai_prove, py::arg("theory"), py::arg("query"), py::arg("cap") = py::none());
  m.def("ai_equivalent", &ai_equivalent, py::arg("theory"), py::arg("cap") = py::none());
  m.def("run_cli", &cli, py::arg("args"));
}
