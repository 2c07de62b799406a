#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fil/lattice.hpp"

namespace fil {

struct Symbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

class Signature {
 public:
  Signature() = default;
  Signature(std::initializer_list<Symbol> symbols);

  // Throws SemanticError on a duplicate name.
  void add(std::string name, std::size_t arity);

  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  std::optional<std::size_t> find(std::string_view name) const;
  bool has_constant() const;

  friend bool operator==(const Signature& a, const Signature& b) { return a.symbols_ == b.symbols_; }

 private:
  std::vector<Symbol> symbols_;
};

/// Immutable first-order term with shared subterms. Copies are cheap.
///
/// Terms are ordered canonically: by depth, then variables before
/// applications, then by head name, then argument-wise. This order fixes the
/// layout of term universes and therefore every report built on them.
class Term {
 public:
  static Term variable(std::string name);
  static Term apply(std::string symbol, std::vector<Term> args = {});

  bool is_variable() const noexcept;
  bool is_ground() const noexcept;
  const std::string& head() const noexcept;
  const std::vector<Term>& args() const noexcept;
  std::size_t depth() const noexcept;
  std::size_t hash() const noexcept;

  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b) noexcept;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

// Variable names occurring in t, sorted.
std::set<std::string> variables_of(const Term& t);
void collect_subterms(const Term& t, std::set<Term>& out);

struct Inequality {
  Term lhs;
  Term rhs;

  std::string to_string() const { return lhs.to_string() + " <= " + rhs.to_string(); }
  friend bool operator==(const Inequality&, const Inequality&) = default;
  friend std::strong_ordering operator<=>(const Inequality& a, const Inequality& b) noexcept {
    if (auto c = a.lhs <=> b.lhs; c != 0) return c;
    return a.rhs <=> b.rhs;
  }
};

/// Simultaneous substitution; unmapped variables stay fixed.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const std::string, Term>> bindings)
      : bindings_(bindings) {}

  void bind(std::string variable, Term image);
  const std::map<std::string, Term>& bindings() const noexcept { return bindings_; }
  bool empty() const noexcept { return bindings_.empty(); }
  const Term* find(const std::string& variable) const;

  Term apply(const Term& t) const;
  Inequality apply(const Inequality& e) const { return {apply(e.lhs), apply(e.rhs)}; }

  // (this . inner)(t) == this->apply(inner.apply(t)).
  Substitution after(const Substitution& inner) const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<std::string, Term> bindings_;
};

Term apply_substitution(const Substitution& sigma, const Term& t);

// One-way matching: a substitution s with s(pattern) == target, if any.
std::optional<Substitution> match(const Term& pattern, const Term& target);
std::optional<Substitution> match(const Inequality& pattern, const Inequality& target);

using TermPath = std::vector<std::size_t>;

// Throws SemanticError when the path does not address a subterm.
const Term& subterm_at(const Term& s, std::span<const std::size_t> path);
Term replace_subterm(const Term& s, std::span<const std::size_t> path, const Term& replacement);

/// Finite, subterm-closed set of terms in canonical order.
class TermUniverse {
 public:
  static constexpr std::size_t default_max_terms = 20000;

  // Every term of depth <= depth over the symbols and variables.
  static TermUniverse generate(const Signature& signature, std::vector<std::string> variables,
                               std::size_t depth, std::size_t max_terms = default_max_terms);

  // This universe plus the given terms and all their subterms.
  TermUniverse with_terms(std::span<const Term> extra) const;

  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  const Term& operator[](std::size_t i) const { return terms_[i]; }
  std::optional<std::size_t> index_of(const Term& t) const;
  bool contains(const Term& t) const { return index_of(t).has_value(); }

  const Signature& signature() const noexcept { return signature_; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  std::size_t depth_bound() const noexcept { return depth_; }

 private:
  TermUniverse(Signature signature, std::vector<std::string> variables, std::size_t depth,
               std::vector<Term> terms);

  Signature signature_;
  std::vector<std::string> variables_;
  std::size_t depth_ = 0;
  std::vector<Term> terms_;
  std::unordered_map<Term, std::size_t, TermHash> index_;
};

TermUniverse generate_universe(const Signature& signature, std::vector<std::string> variables,
                               std::size_t depth);

/// An L-set of inequalities: the prescribed lower bounds of validity.
using GradedTheory = LSet<Inequality>;

inline GradedTheory make_graded_theory(const ResiduatedLattice& lattice) {
  return GradedTheory(lattice, "Fml");
}

struct TheoryOptions {
  std::optional<std::size_t> depth;
  std::optional<std::size_t> model_size;
};

/// A parsed theory file.
struct Theory {
  ResiduatedLattice lattice = ResiduatedLattice::boolean();
  Signature signature;
  std::vector<std::string> variables;
  GradedTheory assumptions = make_graded_theory(ResiduatedLattice::boolean());
  TheoryOptions options;

  bool is_variable(std::string_view name) const;

  // Terms and queries in the theory's language.
  Term parse_term(std::string_view text) const;
  Inequality parse_inequality(std::string_view text) const;

  // Pretty-prints in the theory DSL; parse_theory(to_string()) reproduces it.
  std::string to_string() const;
};

Theory parse_theory(std::string_view text);

// Checks that t is well formed over the signature and variables.
void check_term(const Term& t, const Signature& signature,
                std::span<const std::string> variables);

}  // namespace fil
