#include <gtest/gtest.h>

#include <vector>

#include "desk_suite.hpp"
#include "fil/engine.hpp"
#include "mutations.hpp"
#include "oracles.hpp"

using namespace fil;

namespace {

Term c() { return Term::apply("c"); }
Term g(Term t) { return Term::apply("g", {std::move(t)}); }

Theory running() { return parse_theory(desk::cases().front().theory); }

}  // namespace

TEST(Closure, RunningExampleDegree) {
  auto th = running();
  auto u = TermUniverse::generate(th.signature, {}, 3);
  EXPECT_EQ(provability_degree(th.assumptions, {c(), g(g(c()))}, u), th.lattice.degree(2));
  auto state = syntactic_closure(u, th.assumptions);
  EXPECT_EQ(state.degree({c(), g(g(g(c())))}), th.lattice.degree(1));
  EXPECT_EQ(state.degree({g(c()), c()}), th.lattice.zero());
  EXPECT_EQ(state.degree({c(), c()}), th.lattice.one());
  EXPECT_THROW(state.degree({c(), g(g(g(g(c()))))}), SemanticError);
}

TEST(Closure, RunningExampleProofHasThreeSteps) {
  auto th = running();
  auto u = TermUniverse::generate(th.signature, {}, 3);
  auto state = syntactic_closure(u, th.assumptions);
  auto proof = extract_proof(state, {c(), g(g(c()))});
  ASSERT_EQ(proof.steps.size(), 3u);
  EXPECT_EQ(proof.steps[0].kind, ProofStep::Kind::assumption);
  EXPECT_EQ(proof.steps[0].ineq, (Inequality{c(), g(c())}));
  EXPECT_EQ(proof.steps[1].rule, Rule::com);
  EXPECT_EQ(proof.steps[1].ineq, (Inequality{g(c()), g(g(c()))}));
  EXPECT_EQ(proof.steps[1].degree, th.lattice.degree(3));
  EXPECT_EQ(proof.steps[2].rule, Rule::tra);
  EXPECT_EQ(proof.steps[2].premises, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(proof.steps[2].degree, th.lattice.degree(2));
  EXPECT_TRUE(check_proof(proof, th.assumptions, true).ok);
  EXPECT_THROW(extract_proof(state, {g(c()), c()}), SemanticError);
}

TEST(Closure, InvarianceInstantiatesInsideUniverse) {
  auto th = parse_theory(
      "lattice lukasiewicz 3\nsignature { c:0, g:1 }\nvariables { x }\nassume x <= g(x) @ 2/3\n");
  auto u = TermUniverse::generate(th.signature, th.variables, 3);
  auto state = syntactic_closure(u, th.assumptions);
  EXPECT_EQ(state.degree({c(), g(c())}), th.lattice.degree(2));
  EXPECT_EQ(state.degree({c(), g(g(c()))}), th.lattice.degree(1));
  EXPECT_EQ(state.degree({g(c()), g(g(c()))}), th.lattice.degree(2));
  EXPECT_EQ(state.degrees(), oracle::naive_closure(u, th.assumptions));
  auto proof = extract_proof(state, {g(c()), g(g(c()))});
  EXPECT_TRUE(check_proof(proof, th.assumptions, true).ok);
}

TEST(Closure, MatchesNaiveOracleOnDeskSuite) {
  for (const auto& k : desk::cases()) {
    auto th = parse_theory(k.theory);
    auto u = desk::universe_for(th, k.depth, th.parse_inequality(k.queries.front().inequality));
    auto state = syntactic_closure(u, th.assumptions);
    EXPECT_EQ(state.degrees(), oracle::naive_closure(u, th.assumptions)) << k.name;
    EXPECT_TRUE(verify_closed(state, th.assumptions).ok) << k.name;
  }
}

TEST(Closure, RejectsForeignAssumptions) {
  auto th = running();
  auto u = TermUniverse::generate(th.signature, {}, 0);
  EXPECT_THROW(syntactic_closure(u, th.assumptions), SemanticError);
  auto u3 = TermUniverse::generate(th.signature, {}, 3);
  ClosureOptions aug;
  aug.rules = RuleSet::tra_aug();
  EXPECT_THROW(syntactic_closure(u3, th.assumptions, aug), SemanticError);
}

TEST(Closure, ShuffledRunsAgree) {
  auto th = parse_theory(desk::cases()[6].theory);
  auto u = TermUniverse::generate(th.signature, th.variables, 3);
  auto base = syntactic_closure(u, th.assumptions);
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    ClosureOptions o;
    o.shuffle_seed = seed;
    auto other = syntactic_closure(u, th.assumptions, o);
    EXPECT_EQ(other.degrees(), base.degrees());
    EXPECT_EQ(other.to_lrelation(), base.to_lrelation());
  }
}

TEST(Closure, LRelationContainsSigmaAndAxioms) {
  auto th = running();
  auto u = TermUniverse::generate(th.signature, {}, 3);
  auto state = syntactic_closure(u, th.assumptions);
  auto rel = state.to_lrelation();
  for (const auto& [e, d] : th.assumptions.entries()) EXPECT_GE(rel({e.lhs, e.rhs}), d);
  auto ax = axiom_lset(u);
  EXPECT_EQ(ax.support_size(), u.size());
  for (const auto& [pair, d] : ax.entries()) EXPECT_TRUE(rel(pair).is_one());
}

TEST(Closure, HistoryIsStrictlyIncreasing) {
  auto th = parse_theory(desk::cases()[1].theory);
  auto u = TermUniverse::generate(th.signature, {}, 0);
  auto state = syntactic_closure(u, th.assumptions);
  for (std::size_t a = 0; a < u.size(); ++a)
    for (std::size_t b = 0; b < u.size(); ++b) {
      auto h = state.history(a, b);
      for (std::size_t i = 1; i < h.size(); ++i) EXPECT_LT(h[i - 1].degree, h[i].degree);
      if (!h.empty()) {
        EXPECT_EQ(h.back().degree, state.degrees().num(a, b));
      }
    }
}

TEST(DerivedRules, ReplacementAndSubstitution) {
  auto th = parse_theory(desk::cases()[3].theory);
  auto u = TermUniverse::generate(th.signature, {}, 1);
  auto r = derived_rule_check(u, th.assumptions);
  EXPECT_TRUE(r.replacement_matches) << r.detail;
  EXPECT_TRUE(r.substitution_included) << r.detail;
  auto state = syntactic_closure(u, th.assumptions);
  const Term d = Term::apply("d");
  EXPECT_EQ(state.degree({Term::apply("f", {c(), c()}), Term::apply("f", {d, c()})}), th.lattice.degree(3));
  ClosureOptions rep;
  rep.rules = RuleSet::tra_rep_inv();
  EXPECT_EQ(syntactic_closure(u, th.assumptions, rep).degrees(), state.degrees());

  auto inv = parse_theory(desk::cases()[4].theory);
  auto ui = TermUniverse::generate(inv.signature, inv.variables, 2);
  auto ri = derived_rule_check(ui, inv.assumptions);
  EXPECT_TRUE(ri.replacement_matches) << ri.detail;
  EXPECT_TRUE(ri.substitution_included) << ri.detail;
  EXPECT_GT(ri.substitution_instances, 0u);
}

TEST(ProofChecker, RejectsMutationsAtTheRightStep) {
  auto th = running();
  auto u = TermUniverse::generate(th.signature, {}, 3);
  auto state = syntactic_closure(u, th.assumptions);
  auto proof = extract_proof(state, {c(), g(g(c()))});
  for (auto kind : {mutation::Kind::inflated_degree, mutation::Kind::swapped_premises,
                    mutation::Kind::forward_reference}) {
    for (std::size_t choice = 0; choice < 4; ++choice) {
      auto m = mutation::mutate(proof, kind, choice);
      ASSERT_TRUE(m) << mutation::kind_name(kind);
      for (bool strict : {false, true}) {
        auto v = check_proof(m->proof, th.assumptions, strict);
        EXPECT_FALSE(v.ok) << mutation::kind_name(kind);
        EXPECT_EQ(v.failed_step, std::optional<std::size_t>(m->bad_step)) << v.message;
      }
    }
  }
}

TEST(ProofChecker, MonotoneAndStrictAssumptions) {
  auto th = running();
  Proof p;
  p.steps.push_back({{c(), g(c())}, th.lattice.degree(2), ProofStep::Kind::assumption, Rule::tra, {},
                     std::nullopt, std::nullopt});
  EXPECT_TRUE(check_proof(p, th.assumptions, false).ok);
  auto strict = check_proof(p, th.assumptions, true);
  EXPECT_FALSE(strict.ok);
  EXPECT_EQ(strict.failed_step, std::optional<std::size_t>(0));
  p.steps[0].ineq = {g(c()), c()};
  EXPECT_FALSE(check_proof(p, th.assumptions, false).ok);
}

TEST(ProofChecker, RuleShapes) {
  auto th = running();
  const auto& l = th.lattice;
  auto step = [&](Inequality e, unsigned d, ProofStep::Kind k, Rule r, std::vector<std::size_t> prem) {
    return ProofStep{std::move(e), l.degree(d), k, r, std::move(prem), std::nullopt, std::nullopt};
  };
  Proof p;
  p.steps.push_back(step({c(), c()}, 4, ProofStep::Kind::axiom, Rule::tra, {}));
  p.steps.push_back(step({g(c()), g(c())}, 4, ProofStep::Kind::rule, Rule::com, {0}));
  EXPECT_TRUE(check_proof(p, th.assumptions).ok);
  p.steps.push_back(step({c(), g(c())}, 4, ProofStep::Kind::axiom, Rule::tra, {}));
  auto v = check_proof(p, th.assumptions);
  EXPECT_EQ(v.failed_step, std::optional<std::size_t>(2));
  p.steps.pop_back();
  p.steps.push_back(step({c(), c()}, 4, ProofStep::Kind::rule, Rule::aug, {0}));
  v = check_proof(p, th.assumptions);
  EXPECT_EQ(v.failed_step, std::optional<std::size_t>(2));
  EXPECT_NE(v.message.find("step 2"), std::string::npos);
}

TEST(Certify, DeskSuiteCloses) {
  for (const auto& k : desk::cases()) {
    auto th = parse_theory(k.theory);
    for (const auto& q : k.queries) {
      auto e = th.parse_inequality(q.inequality);
      auto u = desk::universe_for(th, k.depth, e);
      auto cert = certify_degree(th.assumptions, e, u);
      EXPECT_TRUE(cert.certified) << k.name << ": " << q.inequality << " " << cert.reason;
      EXPECT_EQ(cert.lower.to_string(), q.expected) << k.name << ": " << q.inequality;
      ASSERT_TRUE(cert.upper);
      EXPECT_EQ(*cert.upper, cert.lower);
      EXPECT_EQ(oracle::naive_closure(u, th.assumptions).at(*u.index_of(e.lhs), *u.index_of(e.rhs)), cert.lower);
    }
  }
}

TEST(Certify, EmptyBooleanTheory) {
  auto th = parse_theory(desk::cases()[5].theory);
  auto e = th.parse_inequality("c <= d");
  auto cert = certify_degree(th.assumptions, e, desk::universe_for(th, 0, e));
  EXPECT_EQ(cert.lower, th.lattice.zero());
  EXPECT_EQ(cert.upper, std::optional<Degree>(th.lattice.zero()));
  EXPECT_TRUE(cert.certified);
}

TEST(Certify, ExhaustedBudgetLeavesUpperOpen) {
  auto th = running();
  auto e = th.parse_inequality("c <= g(g(c))");
  CertifyOptions o;
  o.budget = 10;
  auto cert = certify_degree(th.assumptions, e, desk::universe_for(th, 3, e), o);
  EXPECT_EQ(cert.lower, th.lattice.degree(2));
  EXPECT_FALSE(cert.upper);
  EXPECT_FALSE(cert.certified);
  EXPECT_FALSE(cert.reason.empty());
}

TEST(Rules, NamesRoundTrip) {
  for (auto r : {Rule::tra, Rule::com, Rule::inv, Rule::rep, Rule::aug, Rule::cut})
    EXPECT_EQ(parse_rule_name(rule_name(r)), std::optional<Rule>(r));
  EXPECT_FALSE(parse_rule_name("Mp"));
  EXPECT_TRUE(RuleSet::cut_only().needs_composition());
  EXPECT_FALSE(RuleSet::standard().needs_composition());
}
