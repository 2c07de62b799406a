#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fil/lattice.hpp"
#include "fil/syntax.hpp"

namespace fil {

/// Operation table of one symbol: entries[i] is the result for the
/// argument tuple with mixed-radix index i (first argument most significant),
/// or `undefined` in a partial algebra.
struct OperationTable {
  static constexpr std::int32_t undefined = -1;

  std::size_t arity = 0;
  std::vector<std::int32_t> entries;
};

/// Finite algebra with an L-order. Element i is named elements[i]; ops[k]
/// interprets signature.symbols()[k]; order(a, b) is the degree of a <= b.
struct FuzzyOrderedAlgebra {
  FuzzyOrderedAlgebra(ResiduatedLattice lattice, Signature signature,
                      std::vector<std::string> elements);

  ResiduatedLattice lattice;
  Signature signature;
  std::vector<std::string> elements;
  DegreeMatrix order;
  std::vector<OperationTable> ops;

  std::size_t size() const noexcept { return elements.size(); }
  std::optional<std::size_t> element(std::string_view name) const;

  std::size_t tuple_index(std::span<const std::size_t> args) const;
  std::optional<std::size_t> apply(std::size_t symbol, std::span<const std::size_t> args) const;
  void define(std::size_t symbol, std::span<const std::size_t> args, std::size_t result);
  bool is_partial() const;
};

using Valuation = std::map<std::string, std::size_t>;

// Raised when a partial algebra has no entry for a needed application.
class EvaluationOutOfBounds : public SemanticError {
 public:
  using SemanticError::SemanticError;
};

struct ConditionVerdict {
  std::string name;
  bool holds = true;
  std::string witness;  // counterexample when !holds
};

/// Verdicts for (1) reflexivity/antisymmetry at degree 1, (2) transitivity
/// and (3) compatibility of every operation. Undefined entries of a partial
/// algebra are skipped in (3).
struct AlgebraReport {
  ConditionVerdict reflexive_antisymmetric{"reflexive-antisymmetric", true, {}};
  ConditionVerdict transitive{"transitive", true, {}};
  ConditionVerdict compatible{"compatible", true, {}};

  bool ok() const {
    return reflexive_antisymmetric.holds && transitive.holds && compatible.holds;
  }
};

AlgebraReport check_fuzzy_ordered_algebra(const FuzzyOrderedAlgebra& m);

/// Verdicts for a compatible L-preorder: it contains the order of the
/// algebra, is transitive, and is compatible with every defined operation.
struct PreorderReport {
  ConditionVerdict contains_order{"contains-order", true, {}};
  ConditionVerdict transitive{"transitive", true, {}};
  ConditionVerdict compatible{"compatible", true, {}};

  bool ok() const { return contains_order.holds && transitive.holds && compatible.holds; }
};

PreorderReport check_compatible_preorder(const FuzzyOrderedAlgebra& m, const DegreeMatrix& q);

std::size_t eval_term(const FuzzyOrderedAlgebra& m, const Valuation& v, const Term& t);
Degree truth_degree_at(const FuzzyOrderedAlgebra& m, const Valuation& v, const Inequality& e);
// Infimum over all valuations of the variables occurring in e.
Degree truth_degree(const FuzzyOrderedAlgebra& m, const Inequality& e);

// Q_M restricted to U x U, indexed like U.
DegreeMatrix model_preorder(const FuzzyOrderedAlgebra& m, const TermUniverse& u);

bool is_model(const FuzzyOrderedAlgebra& m, const GradedTheory& sigma);

enum class EnumerationStatus { complete, budget_exceeded, stopped };

struct EnumerationOptions {
  static constexpr std::uint64_t default_budget = 10'000'000;

  std::size_t min_size = 1;
  std::size_t max_size = 1;
  // Cap on search nodes: every partial order-cell or table-entry assignment
  // counts as one candidate.
  std::uint64_t budget = default_budget;
};

struct EnumerationResult {
  EnumerationStatus status = EnumerationStatus::complete;
  std::uint64_t candidates = 0;
  std::uint64_t models = 0;
  std::map<std::size_t, std::uint64_t> models_by_size;
};

// Visits every algebra with L-order of universe size in
// [min_size, max_size] that is a model of sigma. Elements are named
// "a0", "a1", ...; isomorphic copies are all visited. Returning false from
// the visitor stops the enumeration.
EnumerationResult enumerate_models(const Signature& signature, const ResiduatedLattice& lattice,
                                   const GradedTheory& sigma, const EnumerationOptions& options,
                                   const std::function<bool(const FuzzyOrderedAlgebra&)>& visit);

struct BoundedDegree {
  Degree degree;
  bool no_model = false;  // empty infimum: degree is 1
  EnumerationStatus status = EnumerationStatus::complete;
  std::uint64_t models = 0;
  std::uint64_t candidates = 0;
};

// Infimum of truth_degree(M, e) over the enumerated models of sigma. If
// stop_at is given, the search ends as soon as the infimum reaches it.
BoundedDegree semantic_degree_bounded(const Signature& signature, const ResiduatedLattice& lattice,
                                      const GradedTheory& sigma, const Inequality& e,
                                      const EnumerationOptions& options,
                                      std::optional<Degree> stop_at = std::nullopt);

struct BoundedClosure {
  DegreeMatrix degrees;
  bool no_model = false;
  EnumerationStatus status = EnumerationStatus::complete;
  std::uint64_t models = 0;
};

BoundedClosure semantic_closure_bounded(const Signature& signature,
                                        const ResiduatedLattice& lattice,
                                        const GradedTheory& sigma, const TermUniverse& u,
                                        const EnumerationOptions& options);

struct HomomorphismReport {
  bool ok = true;
  std::string witness;
};

// h maps elements of m to elements of n.
HomomorphismReport check_homomorphism(std::span<const std::size_t> h, const FuzzyOrderedAlgebra& m,
                                      const FuzzyOrderedAlgebra& n);

// Q_h(a, b) = h(a) <= h(b) in n. Throws SemanticError unless h is a
// surjective homomorphism.
DegreeMatrix preorder_from_hom(std::span<const std::size_t> h, const FuzzyOrderedAlgebra& m,
                               const FuzzyOrderedAlgebra& n);

struct FactorAlgebra {
  FuzzyOrderedAlgebra algebra;
  std::vector<std::size_t> natural_map;        // element -> class
  std::vector<std::vector<std::size_t>> classes;  // class -> members
};

// Quotient of m by a compatible L-preorder q. Throws SemanticError naming
// the violated condition when q is not one.
FactorAlgebra factor_algebra(const FuzzyOrderedAlgebra& m, const DegreeMatrix& q);

// The term algebra restricted to u: identity order, and f(t1..tn) defined
// exactly when the application lies in u.
FuzzyOrderedAlgebra term_algebra(const TermUniverse& u, const ResiduatedLattice& lattice);

}  // namespace fil
