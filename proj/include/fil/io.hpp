#pragma once

#include <functional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "fil/ai.hpp"
#include "fil/engine.hpp"
#include "fil/semantics.hpp"
#include "fil/syntax.hpp"

namespace fil {

using Json = nlohmann::ordered_json;

/// How terms of one language are read and written.
struct TermSyntax {
  std::function<Term(std::string_view)> parse_term;
  std::function<Inequality(std::string_view)> parse_inequality;
  std::function<std::string(const Term&)> format;

  std::string format_inequality(const Inequality& e) const {
    return format(e.lhs) + " <= " + format(e.rhs);
  }
};

TermSyntax theory_syntax(const Theory& theory);
TermSyntax ai_syntax(const AiTheory& theory);

// Model files:
//   {"lattice": "lukasiewicz 4", "universe": ["a0", ...],
//    "signature": {"g": 1, ...},             optional, inferred from ops
//    "ops": {"c": "a0", "g": {"a0": "a1"}},   nested by argument; missing = undefined
//    "order": [["a0", "a1", "3/4"], ...]}     unlisted pairs: 1 on the diagonal, else 0
// Throws ParseError for malformed JSON and SemanticError for bad contents.
FuzzyOrderedAlgebra model_from_json(const Json& j);
FuzzyOrderedAlgebra parse_model(std::string_view text);
Json model_to_json(const FuzzyOrderedAlgebra& m);

// Proof files: a list of steps, or {"steps": [...]}, each
//   {"ineq": "l <= r", "degree": "k/n",
//    "by": "assumption" | "axiom" | {"rule": "Tra", "premises": [0, 1],
//                                    "subst": {"x": "t"}, "s": "t"}}
Proof proof_from_json(const Json& j, const TermSyntax& syntax, const ResiduatedLattice& lattice);
Proof parse_proof(std::string_view text, const TermSyntax& syntax, const ResiduatedLattice& lattice);
Json proof_to_json(const Proof& proof, const TermSyntax& syntax);

std::string read_file(const std::string& path);

}  // namespace fil
