// Independent reference implementations used only by the tests. They are
// deliberately naive: full sweeps, brute-force substitution and model
// enumeration, no indexing, no provenance.
#pragma once

#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fil/lattice.hpp"
#include "fil/semantics.hpp"
#include "fil/syntax.hpp"

namespace oracle {

using fil::Degree;
using fil::DegreeMatrix;
using fil::GradedTheory;
using fil::ResiduatedLattice;
using fil::Signature;
using fil::Term;
using fil::TermUniverse;

// max{c : a (x) c <= b}, scanning the carrier with otimes only.
inline Degree search_residuum(const ResiduatedLattice& l, const Degree& a, const Degree& b) {
  Degree best = l.zero();
  for (const auto& c : l.elements())
    if (l.otimes(a, c) <= b) best = c;
  return best;
}

// Every map from vars to universe elements.
inline void for_each_assignment(const std::vector<std::string>& vars, const TermUniverse& u,
                                const std::function<void(const fil::Substitution&)>& f) {
  std::vector<std::size_t> pick(vars.size(), 0);
  while (true) {
    fil::Substitution s;
    for (std::size_t i = 0; i < vars.size(); ++i) s.bind(vars[i], u[pick[i]]);
    f(s);
    std::size_t k = 0;
    while (k < vars.size() && ++pick[k] == u.size()) pick[k++] = 0;
    if (k == vars.size()) return;
  }
}

// Kleene iteration of reflexivity, transitivity, compatibility and (when
// inv) invariance over u, every instance confined to u.
inline DegreeMatrix naive_closure(const TermUniverse& u, const GradedTheory& sigma, bool inv = true) {
  const auto& l = sigma.lattice();
  const std::size_t n = u.size();
  DegreeMatrix s(l, n);
  for (std::size_t i = 0; i < n; ++i) s.set_num(i, i, l.denominator());
  for (const auto& [e, d] : sigma.entries()) {
    std::size_t a = *u.index_of(e.lhs), b = *u.index_of(e.rhs);
    s.set_num(a, b, std::max(s.num(a, b), d.numerator()));
  }
  auto raise = [&](std::size_t a, std::size_t b, unsigned v, bool& changed) {
    if (v > s.num(a, b)) {
      s.set_num(a, b, v);
      changed = true;
    }
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) raise(a, c, l.mul(s.num(a, b), s.num(b, c)), changed);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const Term& tx = u[x];
        const Term& ty = u[y];
        if (tx.is_variable() || ty.is_variable() || tx.head() != ty.head() || tx.args().empty()) continue;
        unsigned v = l.denominator();
        for (std::size_t k = 0; k < tx.args().size(); ++k)
          v = l.mul(v, s.num(*u.index_of(tx.args()[k]), *u.index_of(ty.args()[k])));
        raise(x, y, v, changed);
      }
    if (!inv) continue;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (s.num(a, b) == 0 || a == b) continue;
        std::set<std::string> vs = fil::variables_of(u[a]);
        for (const auto& v : fil::variables_of(u[b])) vs.insert(v);
        for_each_assignment({vs.begin(), vs.end()}, u, [&](const fil::Substitution& sub) {
          auto l2 = u.index_of(sub.apply(u[a]));
          auto r2 = u.index_of(sub.apply(u[b]));
          if (l2 && r2) raise(*l2, *r2, s.num(a, b), changed);
        });
      }
  }
  return s;
}

// Classical inequational closure for crisp theories: sets of pairs closed
// under reflexivity, transitivity, compatibility and substitution.
inline std::set<std::pair<std::size_t, std::size_t>> classical_closure(
    const TermUniverse& u, const std::vector<std::pair<Term, Term>>& axioms) {
  const std::size_t n = u.size();
  std::set<std::pair<std::size_t, std::size_t>> r;
  for (std::size_t i = 0; i < n; ++i) r.insert({i, i});
  for (const auto& [a, b] : axioms) r.insert({*u.index_of(a), *u.index_of(b)});
  for (std::size_t before = 0; before != r.size();) {
    before = r.size();
    std::vector<std::pair<std::size_t, std::size_t>> now(r.begin(), r.end());
    for (auto [a, b] : now)
      for (auto [c, d] : now)
        if (b == c) r.insert({a, d});
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const Term& tx = u[x];
        const Term& ty = u[y];
        if (tx.is_variable() || ty.is_variable() || tx.head() != ty.head() || tx.args().empty()) continue;
        bool all = true;
        for (std::size_t k = 0; k < tx.args().size() && all; ++k)
          all = r.count({*u.index_of(tx.args()[k]), *u.index_of(ty.args()[k])}) > 0;
        if (all) r.insert({x, y});
      }
    for (auto [a, b] : now) {
      std::set<std::string> vs = fil::variables_of(u[a]);
      for (const auto& v : fil::variables_of(u[b])) vs.insert(v);
      for_each_assignment({vs.begin(), vs.end()}, u, [&](const fil::Substitution& sub) {
        auto l2 = u.index_of(sub.apply(u[a]));
        auto r2 = u.index_of(sub.apply(u[b]));
        if (l2 && r2) r.insert({*l2, *r2});
      });
    }
  }
  return r;
}

// All total algebras of the given size: every order matrix with 1 on the
// diagonal times every table, filtered by the algebra conditions and sigma.
inline std::size_t brute_force_model_count(const Signature& sig, const ResiduatedLattice& l,
                                           const GradedTheory& sigma, std::size_t size) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < size; ++i) names.push_back("a" + std::to_string(i));
  fil::FuzzyOrderedAlgebra m(l, sig, names);
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b)
      if (a != b) cells.emplace_back(a, b);
  std::vector<std::int32_t*> entries;
  for (auto& t : m.ops)
    for (auto& e : t.entries) entries.push_back(&e);

  std::size_t count = 0;
  std::vector<unsigned> order(cells.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < cells.size(); ++i) m.order.set_num(cells[i].first, cells[i].second, order[i]);
    std::vector<std::size_t> table(entries.size(), 0);
    while (true) {
      for (std::size_t i = 0; i < entries.size(); ++i) *entries[i] = static_cast<std::int32_t>(table[i]);
      if (fil::check_fuzzy_ordered_algebra(m).ok() && fil::is_model(m, sigma)) ++count;
      std::size_t k = 0;
      while (k < table.size() && ++table[k] == size) table[k++] = 0;
      if (k == table.size()) break;
    }
    std::size_t k = 0;
    while (k < order.size() && ++order[k] == l.size()) order[k++] = 0;
    if (k == order.size()) break;
  }
  return count;
}

/// Random terms and theories for property tests.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  std::mt19937_64& rng() { return rng_; }

  const Term& pick(const TermUniverse& u) { return u[below(u.size())]; }

  // Up to max_assumptions random pairs of universe terms with random
  // positive degrees (or degree 1 when crisp).
  GradedTheory theory(const TermUniverse& u, const ResiduatedLattice& l, std::size_t max_assumptions,
                      bool crisp = false) {
    GradedTheory sigma = fil::make_graded_theory(l);
    const std::size_t k = 1 + below(max_assumptions);
    for (std::size_t i = 0; i < k; ++i) {
      const unsigned d = crisp ? l.denominator() : 1 + static_cast<unsigned>(below(l.denominator()));
      sigma.raise({pick(u), pick(u)}, l.degree(d));
    }
    return sigma;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
