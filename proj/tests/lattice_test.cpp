#include <gtest/gtest.h>

#include <vector>

#include "fil/lattice.hpp"
#include "laws.hpp"

using namespace fil;

TEST(Lattice, LukasiewiczClosedForms) {
  const auto l = ResiduatedLattice::lukasiewicz(4);
  EXPECT_EQ(l.otimes(l.degree(3), l.degree(3)), l.degree(2));
  EXPECT_EQ(l.otimes(l.degree(1), l.degree(2)), l.zero());
  EXPECT_EQ(l.residuum(l.degree(3), l.degree(1)), l.degree(2));
  EXPECT_EQ(l.residuum(l.degree(1), l.degree(3)), l.one());
}

TEST(Lattice, GoedelClosedForms) {
  const auto l = ResiduatedLattice::goedel(4);
  EXPECT_EQ(l.otimes(l.degree(3), l.degree(2)), l.degree(2));
  EXPECT_EQ(l.residuum(l.degree(3), l.degree(1)), l.degree(1));
  EXPECT_EQ(l.residuum(l.degree(2), l.degree(2)), l.one());
}

TEST(Lattice, BooleanIsTwoElements) {
  const auto l = ResiduatedLattice::boolean();
  EXPECT_EQ(l.size(), 2u);
  EXPECT_EQ(l.otimes(l.one(), l.zero()), l.zero());
  EXPECT_EQ(l.residuum(l.one(), l.zero()), l.zero());
  EXPECT_EQ(l.residuum(l.zero(), l.zero()), l.one());
}

TEST(Lattice, LawsHoldExhaustively) {
  for (const auto& l : laws::law_test_lattices(8)) EXPECT_EQ(laws::check_residuated_chain(l), "") << l.name();
}

TEST(Lattice, ResiduumMatchesSearchUpToSixteen) {
  for (unsigned n = 1; n <= 16; ++n)
    for (const auto& l : {ResiduatedLattice::lukasiewicz(n), ResiduatedLattice::goedel(n)})
      for (const auto& a : l.elements())
        for (const auto& b : l.elements()) {
          ASSERT_EQ(l.residuum(a, b), oracle::search_residuum(l, a, b)) << l.name();
          ASSERT_EQ(l.residuum_by_search(a, b), l.residuum(a, b));
        }
}

TEST(Lattice, EmptyInfIsOneAndEmptySupIsZero) {
  const auto l = ResiduatedLattice::lukasiewicz(3);
  EXPECT_EQ(l.inf({}), l.one());
  EXPECT_EQ(l.sup({}), l.zero());
}

TEST(Lattice, DegreesPrintUnreduced) {
  const auto l = ResiduatedLattice::lukasiewicz(4);
  EXPECT_EQ(l.degree(2).to_string(), "2/4");
  EXPECT_EQ(l.zero().to_string(), "0");
  EXPECT_EQ(l.one().to_string(), "1");
  EXPECT_EQ(l.parse_degree(" 3/4 "), l.degree(3));
  EXPECT_EQ(l.parse_degree("1"), l.one());
}

TEST(Lattice, ParseRejectsForeignDenominators) {
  const auto l = ResiduatedLattice::lukasiewicz(4);
  EXPECT_THROW(l.parse_degree("1/2"), SemanticError);
  EXPECT_THROW(l.parse_degree("5/4"), SemanticError);
  EXPECT_THROW(l.parse_degree("half"), SemanticError);
  EXPECT_THROW(ResiduatedLattice::parse("product 3"), SemanticError);
  EXPECT_THROW(ResiduatedLattice::parse("lukasiewicz"), SemanticError);
  EXPECT_THROW(ResiduatedLattice::lukasiewicz(0), SemanticError);
  EXPECT_EQ(ResiduatedLattice::parse("goedel 5"), ResiduatedLattice::goedel(5));
}

TEST(Lattice, MixingChainsThrows) {
  const auto a = ResiduatedLattice::lukasiewicz(4).degree(1);
  const auto b = ResiduatedLattice::goedel(4).degree(1);
  const auto c = ResiduatedLattice::lukasiewicz(3).degree(1);
  EXPECT_THROW((void)otimes(a, b), LatticeMismatch);
  EXPECT_THROW((void)(a < c), LatticeMismatch);
  EXPECT_THROW(ResiduatedLattice::goedel(4).otimes(a, a), LatticeMismatch);
  EXPECT_EQ(residuum(a, a), ResiduatedLattice::lukasiewicz(4).one());
}

TEST(LSet, ZeroEntriesAreNotStored) {
  const auto l = ResiduatedLattice::lukasiewicz(2);
  LSet<int> s(l, "N");
  s.set(1, l.degree(1));
  s.set(2, l.zero());
  EXPECT_EQ(s.support_size(), 1u);
  s.raise(1, l.zero());
  EXPECT_EQ(s(1), l.degree(1));
  s.raise(1, l.one());
  EXPECT_EQ(s(1), l.one());
  s.set(1, l.zero());
  EXPECT_EQ(s, LSet<int>(l, "N"));
}

TEST(LSet, InclusionIntersectionUnion) {
  const auto l = ResiduatedLattice::lukasiewicz(2);
  LSet<int> a(l, "N"), b(l, "N");
  a.set(1, l.degree(1));
  b.set(1, l.one());
  b.set(2, l.degree(1));
  EXPECT_TRUE(lset_includes(a, b));
  EXPECT_FALSE(lset_includes(b, a));
  std::vector<LSet<int>> family{a, b};
  EXPECT_EQ(lset_intersect<int>(family), a);
  EXPECT_EQ(lset_union<int>(family), b);
}

TEST(LSet, UniverseAndLatticeMustAgree) {
  const auto l = ResiduatedLattice::lukasiewicz(2);
  LSet<int> a(l, "N"), b(l, "M"), c(ResiduatedLattice::goedel(2), "N");
  EXPECT_THROW(lset_includes(a, b), SemanticError);
  EXPECT_THROW(lset_includes(a, c), LatticeMismatch);
  EXPECT_THROW(a.set(0, ResiduatedLattice::goedel(2).one()), LatticeMismatch);
  std::vector<LSet<int>> none;
  EXPECT_THROW(lset_union<int>(none), SemanticError);
}

TEST(DegreeMatrix, IdentityAndInclusion) {
  const auto l = ResiduatedLattice::lukasiewicz(3);
  auto id = DegreeMatrix::identity(l, 3);
  DegreeMatrix m = id;
  m.set(0, 2, l.degree(2));
  EXPECT_TRUE(id.included_in(m));
  EXPECT_FALSE(m.included_in(id));
  EXPECT_EQ(m.at(0, 2), l.degree(2));
  EXPECT_THROW(id.included_in(DegreeMatrix(l, 2)), SemanticError);
}
