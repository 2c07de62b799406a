#include <gtest/gtest.h>

#include <vector>

#include "fil/ai.hpp"
#include "fil/io.hpp"

using namespace fil;

namespace {

const std::string attributes_text =
    "attributes { p, q, r }\n"
    "lattice lukasiewicz 4\n"
    "idempotent false\n"
    "assume p <= q @ 1\n"
    "assume q <= r @ 2/4\n";

Term comp(Term a, Term b) { return Term::apply(std::string(composition_symbol), {std::move(a), std::move(b)}); }
Term atom(const std::string& n) { return Term::apply(n); }
Term top() { return Term::apply(std::string(top_symbol)); }

}  // namespace

TEST(Attributes, RejectsBadSets) {
  EXPECT_THROW(AttributeSet({}), SemanticError);
  EXPECT_THROW(AttributeSet({"p", "p"}), SemanticError);
  EXPECT_THROW(AttributeSet({"p", std::string(top_symbol)}), SemanticError);
  AttributeSet y({"p", "q"});
  auto sig = build_ai_signature(y);
  EXPECT_EQ(sig.size(), 4u);
  EXPECT_EQ(sig.symbols()[*sig.find(composition_symbol)].arity, 2u);
}

TEST(NormalForm, CommutativeMultisets) {
  auto nf = normalize_ac(comp(atom("q"), comp(top(), comp(atom("p"), atom("q")))));
  EXPECT_EQ(nf.letters, (std::vector<std::string>{"p", "q", "q"}));
  EXPECT_EQ(nf.multiplicity("q"), 2u);
  EXPECT_EQ(nf.to_string(), "{p:1, q:2}");
  EXPECT_EQ(normalize_ac(top()).to_string(), "{}");
  EXPECT_EQ(canonical_ai_term(comp(atom("q"), atom("p"))), comp(atom("p"), atom("q")));
  EXPECT_EQ(canonical_ai_term(comp(comp(atom("p"), atom("q")), atom("r"))),
            canonical_ai_term(comp(atom("r"), comp(atom("q"), atom("p")))));
}

TEST(NormalForm, IdempotentSets) {
  AiMode mode{true, true};
  auto nf = normalize_ac(comp(atom("p"), comp(atom("q"), atom("p"))), mode);
  EXPECT_EQ(nf.letters, (std::vector<std::string>{"p", "q"}));
  EXPECT_EQ(canonical_ai_term(comp(atom("p"), atom("p")), mode), atom("p"));
}

TEST(NormalForm, WordsKeepOrderAndLeadingIdentity) {
  AiMode mode{false, false};
  auto nf = normalize_ac(comp(atom("q"), atom("p")), mode);
  EXPECT_EQ(nf.letters, (std::vector<std::string>{"q", "p"}));
  EXPECT_NE(canonical_ai_term(comp(atom("q"), atom("p")), mode), canonical_ai_term(comp(atom("p"), atom("q")), mode));
  EXPECT_TRUE(normalize_ac(comp(top(), atom("p")), mode).leading_top);
  EXPECT_FALSE(normalize_ac(comp(atom("p"), top()), mode).leading_top);
  EXPECT_THROW(normalize_ac(atom("p"), AiMode{false, true}), SemanticError);
}

TEST(NormalForm, RejectsForeignTerms) {
  EXPECT_THROW(normalize_ac(Term::variable("x")), SemanticError);
  EXPECT_THROW(normalize_ac(Term::apply("g", {atom("p")})), SemanticError);
}

TEST(Carrier, SizesFollowCap) {
  AttributeSet y({"p", "q", "r"});
  // Multisets of size <= 2 over 3 letters: 1 + 3 + 6.
  EXPECT_EQ(ai_normal_forms(y, {}, 2).size(), 10u);
  EXPECT_EQ(ai_normal_forms(y, {}, 4).size(), 35u);
  EXPECT_EQ(ai_normal_forms(y, AiMode{true, true}, 1).size(), 8u);
  // Words of length <= 2, each with and without a leading identity, but
  // the bare identity once: 2 * (1 + 3 + 9) - 1.
  EXPECT_EQ(ai_normal_forms(y, AiMode{false, false}, 2).size(), 25u);
  EXPECT_EQ(default_cap(y), 4u);
  EXPECT_EQ(ai_carrier(y, {}, 2)->size(), 10u);
}

TEST(Theory, ParsesJuxtaposition) {
  auto th = parse_ai_theory(attributes_text);
  EXPECT_EQ(th.attributes.size(), 3u);
  EXPECT_EQ(th.lattice, ResiduatedLattice::lukasiewicz(4));
  EXPECT_EQ(th.parse_side("p q"), comp(atom("p"), atom("q")));
  EXPECT_EQ(th.parse_side(""), top());
  EXPECT_EQ(th.format(comp(atom("p"), atom("q"))), "p q");
  auto again = parse_ai_theory(th.to_string());
  EXPECT_EQ(again.assumptions, th.assumptions);
  EXPECT_EQ(again.mode, th.mode);
  EXPECT_THROW(th.parse_side("p s"), Error);
  EXPECT_THROW(th.parse_inequality("p q"), ParseError);
  EXPECT_THROW(parse_ai_theory("lattice boolean\n"), ParseError);
  EXPECT_THROW(parse_ai_theory("attributes { p }\nlattice boolean\nidempotent maybe\n"), ParseError);
}

TEST(Closure, AttributeExampleDegrees) {
  auto th = parse_ai_theory(attributes_text);
  const auto cap = default_cap(th.attributes);
  const auto& l = th.lattice;
  EXPECT_EQ(ai_prove_degree(th, th.parse_inequality("p <= r"), cap), l.degree(2));
  EXPECT_EQ(ai_prove_degree(th, th.parse_inequality("p q <= p"), cap), l.one());
  EXPECT_EQ(ai_prove_degree(th, th.parse_inequality("p r <= q r"), cap), l.one());
  EXPECT_EQ(ai_prove_degree(th, th.parse_inequality("p p <= q r"), cap), l.degree(2));
  EXPECT_EQ(ai_prove_degree(th, th.parse_inequality("p <= p p"), cap), l.zero());
  EXPECT_EQ(ai_prove_degree(th, th.parse_inequality("p <= "), cap), l.one());
}

TEST(Closure, SemanticUpperBoundsFromChainStructure) {
  auto th = parse_ai_theory(attributes_text);
  const auto& l = th.lattice;
  // p = q = 1, r = 2/4 satisfies both assumptions and attains p <= r at 2/4.
  auto m = build_l_structure_example(l, th.attributes, {{"p", l.one()}, {"q", l.one()}, {"r", l.degree(2)}});
  EXPECT_TRUE(check_fuzzy_ordered_algebra(m).ok());
  EXPECT_TRUE(is_model(m, th.assumptions));
  EXPECT_EQ(truth_degree(m, th.parse_inequality("p <= r")), l.degree(2));
  // p = 2/4: p <= p p holds only to 2/4.
  auto n = build_l_structure_example(l, th.attributes, {{"p", l.degree(2)}, {"q", l.degree(2)}, {"r", l.degree(2)}});
  EXPECT_TRUE(is_model(n, th.assumptions));
  EXPECT_EQ(truth_degree(n, th.parse_inequality("p <= p p")), l.degree(2));
}

TEST(Closure, RuleSystemsAgree) {
  auto th = parse_ai_theory(attributes_text);
  for (std::size_t cap : {2u, 3u, 4u}) {
    auto r = compare_rule_systems(th, cap);
    EXPECT_TRUE(r.equal) << r.detail;
  }
  EXPECT_EQ(rules_of(RuleSystem::cut).cut, true);
  EXPECT_EQ(rule_system_name(RuleSystem::tra_aug), "TraAug");
}

TEST(Closure, ProofsCheckModuloNormalForms) {
  auto th = parse_ai_theory(attributes_text);
  const auto cap = default_cap(th.attributes);
  auto ctx = ai_proof_context(th, cap);
  for (auto system : {RuleSystem::tra_com, RuleSystem::tra_aug, RuleSystem::cut}) {
    auto st = ai_closure(th, cap, system);
    EXPECT_TRUE(verify_closed(st, sigma_ai(st.carrier(), th.lattice)).ok);
    for (const char* q : {"p r <= r", "p <= r", "p q <= p", "p p <= q r"}) {
      auto proof = extract_proof(st, th.parse_inequality(q));
      auto v = check_proof(proof, ctx, true);
      EXPECT_TRUE(v.ok) << rule_system_name(system) << " " << q << ": " << v.message;
    }
  }
}

TEST(Closure, AssumptionBeyondCapThrows) {
  auto th = parse_ai_theory("attributes { p }\nlattice boolean\nassume p p p <= p @ 1\n");
  EXPECT_THROW(ai_closure(th, 2), SemanticError);
  EXPECT_NO_THROW(ai_closure(th, 3));
}

TEST(RawUniverse, LawsOnlyAddToTheNormalizedCarrier) {
  AttributeSet y({"p", "q"});
  auto u = TermUniverse::generate(build_ai_signature(y), {}, 2);
  const auto l = ResiduatedLattice::lukasiewicz(2);
  auto laws = sigma_ai(u, {}, l);
  EXPECT_GT(laws.support_size(), 0u);
  for (const auto& [e, d] : laws.entries()) {
    EXPECT_TRUE(d.is_one());
    EXPECT_TRUE(u.contains(e.lhs) && u.contains(e.rhs));
  }
  auto sigma = make_graded_theory(l);
  sigma.set({atom("p"), atom("q")}, l.degree(1));
  auto raw_sigma = laws;
  raw_sigma.raise({atom("p"), atom("q")}, l.degree(1));
  auto raw = syntactic_closure(u, raw_sigma);
  AiTheory th;
  th.attributes = y;
  th.lattice = l;
  th.assumptions = sigma;
  auto norm = ai_closure(th, 4);
  for (std::size_t a = 0; a < u.size(); ++a)
    for (std::size_t b = 0; b < u.size(); ++b)
      EXPECT_LE(raw.degree(a, b), norm.degree({u[a], u[b]})) << u[a].to_string() << " <= " << u[b].to_string();
}

TEST(Armstrong, CrispClosureAndSatisfaction) {
  AttributeSet y({"a", "b", "c", "d"});
  std::vector<AttributeImplication> fds{{{"a"}, {"b"}}, {{"b", "c"}, {"d"}}};
  EXPECT_EQ(armstrong_crisp_closure(y, fds, {"a"}), (std::set<std::string>{"a", "b"}));
  EXPECT_EQ(armstrong_crisp_closure(y, fds, {"a", "c"}), (std::set<std::string>{"a", "b", "c", "d"}));
  EXPECT_THROW(armstrong_crisp_closure(y, fds, {"z"}), SemanticError);
  EXPECT_TRUE(classical_satisfaction({"a", "b"}, fds[0]));
  EXPECT_FALSE(classical_satisfaction({"a"}, fds[0]));
  EXPECT_TRUE(classical_satisfaction({"c"}, fds[1]));
}

TEST(Structure, ChainExampleSatisfiesAllLaws) {
  const auto l = ResiduatedLattice::lukasiewicz(4);
  AttributeSet y({"p", "q"});
  auto m = build_l_structure_example(l, y, {{"p", l.degree(3)}, {"q", l.degree(1)}});
  EXPECT_TRUE(check_fuzzy_ordered_algebra(m).ok());
  auto report = ai_law_report(m);
  ASSERT_EQ(report.size(), 6u);
  for (const auto& v : report) EXPECT_TRUE(v.degree.is_one()) << v.law;
  auto with_idem = ai_law_report(m, true);
  ASSERT_EQ(with_idem.size(), 8u);
  EXPECT_EQ(with_idem[7].degree, l.degree(2));  // t <= t.t fails at t = 2/4
  auto meet = build_l_structure_example(l, y, {{"p", l.degree(3)}, {"q", l.degree(1)}}, true);
  EXPECT_TRUE(check_fuzzy_ordered_algebra(meet).ok());
  for (const auto& v : ai_law_report(meet, true)) EXPECT_TRUE(v.degree.is_one()) << v.law;
  EXPECT_THROW(build_l_structure_example(l, y, {{"p", l.one()}}), SemanticError);
}
