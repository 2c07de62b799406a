#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fil/lattice.hpp"
#include "fil/semantics.hpp"
#include "fil/syntax.hpp"

namespace fil {

enum class Rule : std::uint8_t { tra, com, inv, rep, aug, cut };

std::string rule_name(Rule r);
std::optional<Rule> parse_rule_name(std::string_view name);

struct RuleSet {
  bool tra = false;
  bool com = false;
  bool inv = false;
  bool rep = false;
  bool aug = false;
  bool cut = false;

  static RuleSet standard() { return {true, true, true, false, false, false}; }
  static RuleSet tra_com() { return {true, true, false, false, false, false}; }
  static RuleSet tra_rep_inv() { return {true, false, true, true, false, false}; }
  static RuleSet tra_aug() { return {true, false, false, false, true, false}; }
  static RuleSet cut_only() { return {false, false, false, false, false, true}; }

  bool needs_composition() const { return aug || cut; }
  std::string to_string() const;
};

/// The finite set of terms a closure lives on, with the operation graph the
/// rules need. Either a subterm-closed term universe, or a set of canonical
/// representatives closed under a normalizing map.
class Carrier {
 public:
  struct Application {
    std::size_t symbol;
    std::vector<std::size_t> args;
    std::size_t result;
  };

  using Canonicalizer = std::function<Term(const Term&)>;

  // Applications are the compound terms of u. If composition names a binary
  // symbol, Aug and Cut compose via in-universe applications of it.
  static Carrier from_universe(const TermUniverse& u,
                               std::optional<std::string> composition = std::nullopt);

  // Every pair of elements is composed and canonicalized; the result is an
  // application when it is an element. All elements must be ground and
  // canonical.
  static Carrier normalized(Signature signature, std::vector<Term> elements,
                            Canonicalizer canonicalize, std::string composition);

  std::size_t size() const noexcept { return terms_.size(); }
  const Term& operator[](std::size_t i) const { return terms_[i]; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  const Signature& signature() const noexcept { return signature_; }
  bool ground() const noexcept { return ground_; }

  Term canonical(const Term& t) const { return canonicalize_ ? canonicalize_(t) : t; }
  const Canonicalizer& canonicalizer() const noexcept { return canonicalize_; }
  std::optional<std::size_t> locate(const Term& t) const;

  const std::vector<Application>& applications() const noexcept { return apps_; }
  // Applications with the given element at the given argument position.
  const std::vector<std::size_t>& applications_at(std::size_t symbol, std::size_t position,
                                                  std::size_t element) const;

  const std::optional<std::string>& composition() const noexcept { return composition_; }
  // Index of a.s, when composition is set and the result is an element.
  std::optional<std::size_t> compose(std::size_t a, std::size_t s) const;
  // Every (t, s) with compose(t, s) == x.
  const std::vector<std::pair<std::size_t, std::size_t>>& decompositions(std::size_t x) const;

 private:
  Carrier() = default;
  void index_applications();
  void index_composition();

  Signature signature_;
  std::vector<Term> terms_;
  std::unordered_map<Term, std::size_t, TermHash> index_;
  Canonicalizer canonicalize_;
  bool ground_ = true;
  std::vector<Application> apps_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_position_;
  std::optional<std::string> composition_;
  std::vector<std::int32_t> compose_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> decompose_;
};

// A(t, t) = 1 and 0 elsewhere, over u.
LRelation<Term> axiom_lset(const TermUniverse& u);

/// Why a cell reached one of its degrees.
struct Justification {
  enum class Kind : std::uint8_t { axiom, assumption, rule };

  struct Premise {
    std::size_t lhs;
    std::size_t rhs;
    std::size_t version;
  };

  Kind kind = Kind::axiom;
  Rule rule = Rule::tra;
  std::vector<Premise> premises;
  Substitution subst;                   // Inv
  std::optional<std::size_t> context;   // Aug/Cut: the element s
};

struct ClosureOptions {
  RuleSet rules = RuleSet::standard();
  // Processes the worklist in a pseudo-random order; final degrees do not
  // depend on it.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Least fixpoint of a rule set over a carrier. Every off-diagonal cell
/// keeps the history of its strictly increasing degrees; each version's
/// justification cites earlier versions only, so proofs are acyclic.
class ClosureState {
 public:
  struct Version {
    unsigned degree;
    Justification why;
  };

  const Carrier& carrier() const noexcept { return *carrier_; }
  const ResiduatedLattice& lattice() const noexcept { return degrees_.lattice(); }
  const DegreeMatrix& degrees() const noexcept { return degrees_; }
  const RuleSet& rules() const noexcept { return rules_; }
  std::uint64_t iterations() const noexcept { return iterations_; }

  // Throws SemanticError when a side is outside the carrier.
  Degree degree(const Inequality& e) const;
  Degree degree(std::size_t lhs, std::size_t rhs) const { return degrees_.at(lhs, rhs); }

  // History of (lhs, rhs); the diagonal has the single axiom version.
  std::vector<Version> history(std::size_t lhs, std::size_t rhs) const;

  LRelation<Term> to_lrelation() const;

 private:
  friend class ClosureRun;

  ClosureState(std::shared_ptr<const Carrier> carrier, DegreeMatrix degrees, RuleSet rules)
      : carrier_(std::move(carrier)), degrees_(std::move(degrees)), rules_(rules) {}

  std::shared_ptr<const Carrier> carrier_;
  DegreeMatrix degrees_;
  RuleSet rules_;
  std::uint64_t iterations_ = 0;
  std::unordered_map<std::uint64_t, std::vector<Version>> provenance_;
};

// Throws SemanticError for an assumption outside the carrier (or with a
// non-zero degree in a different lattice), and when the rule set needs a
// composition the carrier lacks.
ClosureState syntactic_closure(std::shared_ptr<const Carrier> carrier, const GradedTheory& sigma,
                               const ClosureOptions& options = {});
ClosureState syntactic_closure(const TermUniverse& u, const GradedTheory& sigma,
                               const ClosureOptions& options = {});

Degree provability_degree(const GradedTheory& sigma, const Inequality& e, const TermUniverse& u,
                          const ClosureOptions& options = {});

/// An annotated proof: a sequence of weighted inequalities, each an
/// assumption, an axiom, or a rule application to earlier steps.
struct ProofStep {
  enum class Kind : std::uint8_t { assumption, axiom, rule };

  Inequality ineq;
  Degree degree;
  Kind kind = Kind::axiom;
  Rule rule = Rule::tra;
  std::vector<std::size_t> premises;
  std::optional<Substitution> subst;  // Inv
  std::optional<Term> context;        // Aug/Cut: the term s
};

struct Proof {
  std::vector<ProofStep> steps;
};

// Throws SemanticError when the pair has degree 0 off the diagonal.
Proof extract_proof(const ClosureState& state, const Inequality& e);

/// What check_proof compares against. Terms are compared after
/// canonicalization; the assumptions are looked up canonically too.
struct ProofContext {
  ProofContext(const GradedTheory& sigma, Carrier::Canonicalizer canonicalize = {},
               std::optional<std::string> composition = std::nullopt);

  ResiduatedLattice lattice;
  Carrier::Canonicalizer canonicalize;
  std::optional<std::string> composition;
  std::map<Inequality, unsigned> assumptions;

  Term canonical(const Term& t) const { return canonicalize ? canonicalize(t) : t; }
  unsigned assumption(const Inequality& e) const;
};

struct ProofVerdict {
  bool ok = true;
  std::optional<std::size_t> failed_step;
  std::string message;
};

// Assumption steps may carry any degree up to the assumed one unless strict.
ProofVerdict check_proof(const Proof& proof, const ProofContext& context, bool strict = false);
ProofVerdict check_proof(const Proof& proof, const GradedTheory& sigma, bool strict = false);

/// Direct, non-incremental check that a closure is a fixpoint: the
/// diagonal is 1, Σ is contained, and no enabled rule instance inside the
/// carrier raises any cell.
struct FixpointCheck {
  bool ok = true;
  std::string violation;
};

FixpointCheck verify_closed(const ClosureState& state, const GradedTheory& sigma);

struct DerivedRuleReport {
  bool replacement_matches = true;  // {Tra,Com,Inv} == {Tra,Rep,Inv}
  bool substitution_included = true;  // every Sub instance is an Inv instance
  std::size_t substitution_instances = 0;
  std::string detail;
};

DerivedRuleReport derived_rule_check(const TermUniverse& u, const GradedTheory& sigma);

struct CertifyOptions {
  std::size_t max_model_size = 3;
  std::uint64_t budget = EnumerationOptions::default_budget;
  ClosureOptions closure;
};

struct Certificate {
  Degree lower;
  std::optional<Degree> upper;  // absent when the model search ran out of budget
  bool certified = false;
  bool no_model = false;
  std::uint64_t models = 0;
  std::uint64_t iterations = 0;
  std::string reason;  // why certified is false
};

Certificate certify_degree(const GradedTheory& sigma, const Inequality& e, const TermUniverse& u,
                           const CertifyOptions& options = {});

}  // namespace fil
