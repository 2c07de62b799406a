// Exhaustive algebraic-law checks for a finite residuated chain.
#pragma once

#include <string>
#include <vector>

#include "fil/lattice.hpp"
#include "oracles.hpp"

namespace laws {

using fil::Degree;
using fil::ResiduatedLattice;

// Empty when every law holds; otherwise the first counterexample.
inline std::string check_residuated_chain(const ResiduatedLattice& l) {
  const auto els = l.elements();
  auto fail = [&](const std::string& law, const Degree& a, const Degree& b, const Degree& c) {
    return l.name() + ": " + law + " fails at " + a.to_string() + ", " + b.to_string() + ", " +
           c.to_string();
  };
  for (const auto& a : els) {
    if (l.otimes(a, l.one()) != a) return fail("unit", a, a, a);
    if (!l.otimes(a, l.zero()).is_zero()) return fail("annihilator", a, a, a);
    for (const auto& b : els) {
      if (l.otimes(a, b) != l.otimes(b, a)) return fail("commutativity", a, b, b);
      if (l.residuum(a, b) != oracle::search_residuum(l, a, b)) return fail("residuum", a, b, b);
      if ((a <= b) != l.residuum(a, b).is_one()) return fail("order from residuum", a, b, b);
      for (const auto& c : els) {
        if (l.otimes(l.otimes(a, b), c) != l.otimes(a, l.otimes(b, c)))
          return fail("associativity", a, b, c);
        if ((l.otimes(a, b) <= c) != (a <= l.residuum(b, c))) return fail("adjointness", a, b, c);
        if (a <= b) {
          if (!(l.otimes(a, c) <= l.otimes(b, c))) return fail("monotone product", a, b, c);
          if (!(l.residuum(b, c) <= l.residuum(a, c))) return fail("antitone residuum", a, b, c);
          if (!(l.residuum(c, a) <= l.residuum(c, b))) return fail("monotone residuum", a, b, c);
        }
      }
    }
  }
  // Every non-empty family B: a (x) inf B <= inf (a (x) B) and
  // a (x) sup B = sup (a (x) B).
  const std::size_t m = els.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    std::vector<Degree> family;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) family.push_back(els[i]);
    for (const auto& a : els) {
      std::vector<Degree> products;
      for (const auto& b : family) products.push_back(l.otimes(a, b));
      if (!(l.otimes(a, l.inf(family)) <= l.inf(products)))
        return fail("inf inequality", a, l.inf(family), l.inf(products));
      if (l.otimes(a, l.sup(family)) != l.sup(products))
        return fail("sup distributivity", a, l.sup(family), l.sup(products));
    }
  }
  return {};
}

inline std::vector<ResiduatedLattice> law_test_lattices(unsigned max_n) {
  std::vector<ResiduatedLattice> out{ResiduatedLattice::boolean()};
  for (unsigned n = 1; n <= max_n; ++n) {
    out.push_back(ResiduatedLattice::lukasiewicz(n));
    out.push_back(ResiduatedLattice::goedel(n));
  }
  return out;
}

}  // namespace laws
