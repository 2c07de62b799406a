#include "fil/io.hpp"

#include <fstream>
#include <sstream>

namespace fil {

namespace {

ParseError malformed(const std::string& what, const std::string& detail) {
  return ParseError("malformed " + what + ": " + detail, 0, 0);
}

Json parse_json(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw malformed(what, e.what());
  }
}

std::size_t infer_arity(const Json& v, const std::string& symbol) {
  if (v.is_string()) return 0;
  if (!v.is_object()) throw malformed("model file", "table of '" + symbol + "' is neither a name nor an object");
  if (v.empty())
    throw malformed("model file", "cannot infer the arity of '" + symbol + "'; add a signature entry");
  return 1 + infer_arity(v.begin().value(), symbol);
}

}  // namespace

TermSyntax theory_syntax(const Theory& theory) {
  return {[&theory](std::string_view s) { return theory.parse_term(s); },
          [&theory](std::string_view s) { return theory.parse_inequality(s); },
          [](const Term& t) { return t.to_string(); }};
}

TermSyntax ai_syntax(const AiTheory& theory) {
  return {[&theory](std::string_view s) { return theory.parse_side(s); },
          [&theory](std::string_view s) { return theory.parse_inequality(s); },
          [&theory](const Term& t) { return theory.format(t); }};
}

// ------------------------------------------------------------------ models

FuzzyOrderedAlgebra model_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw malformed("model file", "top level is not an object");
    const auto lattice = ResiduatedLattice::parse(j.at("lattice").get<std::string>());
    std::vector<std::string> universe = j.at("universe").get<std::vector<std::string>>();
    std::map<std::string, std::size_t> index;
    for (const auto& e : universe)
      if (!index.emplace(e, index.size()).second) throw SemanticError("duplicate element '" + e + "'");
    auto element = [&](const std::string& name) {
      auto it = index.find(name);
      if (it == index.end()) throw SemanticError("unknown element '" + name + "'");
      return it->second;
    };

    const Json ops = j.value("ops", Json::object());
    Signature sig;
    if (j.contains("signature")) {
      for (const auto& [name, arity] : j.at("signature").items()) sig.add(name, arity.get<std::size_t>());
    } else {
      for (const auto& [name, table] : ops.items()) sig.add(name, infer_arity(table, name));
    }
    FuzzyOrderedAlgebra m(lattice, sig, std::move(universe));

    for (const auto& [name, table] : ops.items()) {
      auto sym = sig.find(name);
      if (!sym) throw SemanticError("operation '" + name + "' is not in the signature");
      const std::size_t arity = sig.symbols()[*sym].arity;
      std::vector<std::size_t> args;
      std::function<void(const Json&)> walk = [&](const Json& v) {
        if (args.size() == arity) {
          if (!v.is_string()) throw SemanticError("table of '" + name + "' is nested too deeply");
          m.define(*sym, args, element(v.get<std::string>()));
          return;
        }
        if (!v.is_object()) throw SemanticError("table of '" + name + "' is not nested " + std::to_string(arity) + " deep");
        for (const auto& [arg, rest] : v.items()) {
          args.push_back(element(arg));
          walk(rest);
          args.pop_back();
        }
      };
      walk(table);
    }

    for (const auto& entry : j.value("order", Json::array())) {
      if (!entry.is_array() || entry.size() != 3) throw SemanticError("order entries are [a, b, degree]");
      m.order.set(element(entry[0].get<std::string>()), element(entry[1].get<std::string>()),
                  lattice.parse_degree(entry[2].get<std::string>()));
    }
    return m;
  } catch (const Json::exception& e) {
    throw malformed("model file", e.what());
  }
}

FuzzyOrderedAlgebra parse_model(std::string_view text) { return model_from_json(parse_json(text, "model file")); }

Json model_to_json(const FuzzyOrderedAlgebra& m) {
  Json j;
  j["lattice"] = m.lattice.name();
  j["universe"] = m.elements;
  Json sig = Json::object();
  for (const auto& s : m.signature.symbols()) sig[s.name] = s.arity;
  j["signature"] = sig;
  Json ops = Json::object();
  for (std::size_t s = 0; s < m.ops.size(); ++s) {
    const auto& table = m.ops[s];
    Json t = table.arity == 0 ? Json() : Json::object();
    std::vector<std::size_t> args(table.arity);
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
      if (table.entries[i] == OperationTable::undefined) continue;
      std::size_t idx = i;
      for (std::size_t k = table.arity; k-- > 0;) {
        args[k] = idx % m.size();
        idx /= m.size();
      }
      Json* cell = &t;
      for (std::size_t a : args) cell = &(*cell)[m.elements[a]];
      *cell = m.elements[static_cast<std::size_t>(table.entries[i])];
    }
    if (!t.is_null()) ops[m.signature.symbols()[s].name] = t;
  }
  j["ops"] = ops;
  Json order = Json::array();
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = 0; b < m.size(); ++b) {
      const unsigned v = m.order.num(a, b);
      if (v != (a == b ? m.lattice.denominator() : 0u))
        order.push_back({m.elements[a], m.elements[b], m.order.at(a, b).to_string()});
    }
  j["order"] = order;
  return j;
}

// ------------------------------------------------------------------ proofs

Proof proof_from_json(const Json& j, const TermSyntax& syntax, const ResiduatedLattice& lattice) {
  try {
    const Json& steps = j.is_object() ? j.at("steps") : j;
    if (!steps.is_array()) throw malformed("proof file", "steps are not a list");
    Proof proof;
    for (const auto& s : steps) {
      ProofStep step{syntax.parse_inequality(s.at("ineq").get<std::string>()),
                     lattice.parse_degree(s.at("degree").get<std::string>()),
                     ProofStep::Kind::axiom, Rule::tra, {}, std::nullopt, std::nullopt};
      const Json& by = s.at("by");
      if (by.is_string()) {
        const auto kind = by.get<std::string>();
        if (kind == "assumption") step.kind = ProofStep::Kind::assumption;
        else if (kind == "axiom") step.kind = ProofStep::Kind::axiom;
        else throw malformed("proof file", "unknown justification '" + kind + "'");
      } else {
        step.kind = ProofStep::Kind::rule;
        const auto name = by.at("rule").get<std::string>();
        auto rule = parse_rule_name(name);
        if (!rule) throw malformed("proof file", "unknown rule '" + name + "'");
        step.rule = *rule;
        step.premises = by.value("premises", std::vector<std::size_t>{});
        if (by.contains("subst")) {
          Substitution sigma;
          for (const auto& [x, t] : by.at("subst").items()) sigma.bind(x, syntax.parse_term(t.get<std::string>()));
          step.subst = sigma;
        }
        if (by.contains("s")) step.context = syntax.parse_term(by.at("s").get<std::string>());
      }
      proof.steps.push_back(std::move(step));
    }
    return proof;
  } catch (const Json::exception& e) {
    throw malformed("proof file", e.what());
  }
}

Proof parse_proof(std::string_view text, const TermSyntax& syntax, const ResiduatedLattice& lattice) {
  return proof_from_json(parse_json(text, "proof file"), syntax, lattice);
}

Json proof_to_json(const Proof& proof, const TermSyntax& syntax) {
  Json steps = Json::array();
  for (const auto& s : proof.steps) {
    Json j;
    j["ineq"] = syntax.format_inequality(s.ineq);
    j["degree"] = s.degree.to_string();
    switch (s.kind) {
      case ProofStep::Kind::assumption: j["by"] = "assumption"; break;
      case ProofStep::Kind::axiom: j["by"] = "axiom"; break;
      case ProofStep::Kind::rule: {
        Json by;
        by["rule"] = rule_name(s.rule);
        by["premises"] = s.premises;
        if (s.subst) {
          Json sub = Json::object();
          for (const auto& [x, t] : s.subst->bindings()) sub[x] = syntax.format(t);
          by["subst"] = sub;
        }
        if (s.context) by["s"] = syntax.format(*s.context);
        j["by"] = by;
        break;
      }
    }
    steps.push_back(j);
  }
  return steps;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SemanticError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace fil
