#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fil/engine.hpp"
#include "fil/lattice.hpp"
#include "fil/semantics.hpp"
#include "fil/syntax.hpp"

namespace fil {

// Names of the composition and identity symbols of the attribute signature.
inline constexpr std::string_view composition_symbol = "\xC2\xB7";  // U+00B7
inline constexpr std::string_view top_symbol = "\xE2\x8A\xA4";      // U+22A4

/// A finite, non-empty list of distinct attribute names.
class AttributeSet {
 public:
  // Throws SemanticError on an empty list, duplicates, or a name that
  // clashes with the composition or identity symbol.
  explicit AttributeSet(std::vector<std::string> names);

  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t size() const noexcept { return names_.size(); }
  bool contains(std::string_view name) const;

  friend bool operator==(const AttributeSet&, const AttributeSet&) = default;

 private:
  std::vector<std::string> names_;
};

// {composition:2, f1:0, ..., fn:0, top:0}.
Signature build_ai_signature(const AttributeSet& y);

struct AiMode {
  bool commutative = true;
  bool idempotent = false;

  friend bool operator==(const AiMode&, const AiMode&) = default;
};

/// Normal form of a ground term modulo the unit, associativity and (if on)
/// commutativity and idempotence laws. Commutative forms are sorted
/// multisets (sets when idempotent); non-commutative forms are words, where
/// a leading identity cannot be absorbed.
struct GroundNormalForm {
  std::vector<std::string> letters;
  bool leading_top = false;

  std::size_t multiplicity(std::string_view attribute) const;
  std::size_t length() const noexcept { return letters.size(); }
  // "{p:2, q:1}" for multisets, "[p q]" for words, "{}" for the identity.
  std::string to_string(const AiMode& mode = {}) const;

  friend bool operator==(const GroundNormalForm&, const GroundNormalForm&) = default;
  friend auto operator<=>(const GroundNormalForm&, const GroundNormalForm&) = default;
};

// Throws SemanticError when t is not a ground term over the attribute
// signature, or for the unsupported idempotent non-commutative mode.
GroundNormalForm normalize_ac(const Term& t, const AiMode& mode = {});

// The representative: right-nested composition of the letters, top for the
// empty form.
Term normal_form_term(const GroundNormalForm& nf);
Term canonical_ai_term(const Term& t, const AiMode& mode = {});

/// A graded theory of attribute implications.
struct AiTheory {
  AttributeSet attributes{{"p"}};
  ResiduatedLattice lattice = ResiduatedLattice::boolean();
  AiMode mode;
  GradedTheory assumptions = make_graded_theory(ResiduatedLattice::boolean());

  Signature signature() const { return build_ai_signature(attributes); }

  // Juxtaposition syntax: "p q r", with an empty side or the identity
  // symbol standing for top.
  Term parse_side(std::string_view text) const;
  Inequality parse_inequality(std::string_view text) const;
  std::string format(const Term& t) const;
  std::string format(const Inequality& e) const;

  std::string to_string() const;
};

// Statements: attributes {..}, lattice .., idempotent true|false,
// commutative true|false, assume SIDE <= SIDE @ DEGREE.
AiTheory parse_ai_theory(std::string_view text);

// Default multiplicity cap: |Y| + 1.
std::size_t default_cap(const AttributeSet& y);

// All normal forms of total length <= cap; in idempotent mode every subset
// of Y, regardless of cap.
std::vector<GroundNormalForm> ai_normal_forms(const AttributeSet& y, const AiMode& mode,
                                              std::size_t cap);

// The canonical representatives as a carrier for the engine.
std::shared_ptr<const Carrier> ai_carrier(const AttributeSet& y, const AiMode& mode,
                                          std::size_t cap);

// Instances of the attribute laws inside a raw universe over the attribute
// signature, each at degree 1.
GradedTheory sigma_ai(const TermUniverse& u, const AiMode& mode, const ResiduatedLattice& lattice);

// The same laws on a normalized carrier: only t <= top survives off the
// diagonal.
GradedTheory sigma_ai(const Carrier& carrier, const ResiduatedLattice& lattice);

enum class RuleSystem { tra_com, tra_aug, cut };

std::string rule_system_name(RuleSystem s);
RuleSet rules_of(RuleSystem s);

// Closure of the theory plus the attribute laws on the normalized carrier.
// Throws SemanticError when an assumption exceeds the cap.
ClosureState ai_closure(const AiTheory& theory, std::size_t cap,
                        RuleSystem system = RuleSystem::tra_com,
                        std::optional<std::uint64_t> shuffle_seed = std::nullopt);

Degree ai_prove_degree(const AiTheory& theory, const Inequality& e, std::size_t cap);

// The proof context for proofs over the normalized carrier.
ProofContext ai_proof_context(const AiTheory& theory, std::size_t cap);

struct RuleSystemReport {
  bool equal = true;
  std::string detail;  // first differing pair
};

RuleSystemReport compare_rule_systems(const AiTheory& theory, std::size_t cap);

using AttributeImplication = std::pair<std::set<std::string>, std::set<std::string>>;

// Classical closure of a under the implications. Throws SemanticError for
// attributes outside y.
std::set<std::string> armstrong_crisp_closure(const AttributeSet& y,
                                              const std::vector<AttributeImplication>& fds,
                                              const std::set<std::string>& a);

// a subset of m implies b subset of m.
bool classical_satisfaction(const std::set<std::string>& m, const AttributeImplication& fd);

// The carrier of the lattice with a <= b := a -> b, composition the
// product (or the meet when idempotent), top = 1 and the given attribute
// values. Elements are named by their degrees.
FuzzyOrderedAlgebra build_l_structure_example(const ResiduatedLattice& lattice,
                                              const AttributeSet& y,
                                              const std::map<std::string, Degree>& values,
                                              bool idempotent = false);

struct LawVerdict {
  std::string law;
  Degree degree;  // infimum over all elements
};

// The six attribute laws (plus the two idempotence laws when asked),
// evaluated over every element of m.
std::vector<LawVerdict> ai_law_report(const FuzzyOrderedAlgebra& m, bool idempotent = false);

}  // namespace fil
