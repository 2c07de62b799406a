#include "fil/engine.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace fil {

namespace {

constexpr std::size_t max_arity = 64;

std::uint64_t cell_key(std::size_t a, std::size_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

const std::vector<std::size_t> no_indices;
const std::vector<std::pair<std::size_t, std::size_t>> no_pairs;

std::vector<std::string> sorted_variables(const Term& t) {
  auto vars = variables_of(t);
  return {vars.begin(), vars.end()};
}

void all_paths(const Term& t, TermPath& path, std::vector<TermPath>& out) {
  out.push_back(path);
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    path.push_back(i);
    all_paths(t.args()[i], path, out);
    path.pop_back();
  }
}

}  // namespace

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::tra: return "Tra";
    case Rule::com: return "Com";
    case Rule::inv: return "Inv";
    case Rule::rep: return "Rep";
    case Rule::aug: return "Aug";
    case Rule::cut: return "Cut";
  }
  return "?";
}

std::optional<Rule> parse_rule_name(std::string_view name) {
  for (Rule r : {Rule::tra, Rule::com, Rule::inv, Rule::rep, Rule::aug, Rule::cut})
    if (rule_name(r) == name) return r;
  return std::nullopt;
}

std::string RuleSet::to_string() const {
  std::string out;
  auto add = [&](bool on, Rule r) {
    if (!on) return;
    if (!out.empty()) out += "+";
    out += rule_name(r);
  };
  add(tra, Rule::tra);
  add(com, Rule::com);
  add(inv, Rule::inv);
  add(rep, Rule::rep);
  add(aug, Rule::aug);
  add(cut, Rule::cut);
  return out.empty() ? "none" : out;
}

// ------------------------------------------------------------------ Carrier

Carrier Carrier::from_universe(const TermUniverse& u, std::optional<std::string> composition) {
  Carrier c;
  c.signature_ = u.signature();
  c.terms_ = u.terms();
  for (std::size_t i = 0; i < c.terms_.size(); ++i) {
    c.index_.emplace(c.terms_[i], i);
    if (!c.terms_[i].is_ground()) c.ground_ = false;
  }
  for (std::size_t i = 0; i < c.terms_.size(); ++i) {
    const Term& t = c.terms_[i];
    if (t.is_variable() || t.args().empty()) continue;
    Application app{*c.signature_.find(t.head()), {}, i};
    for (const auto& a : t.args()) app.args.push_back(c.index_.at(a));
    c.apps_.push_back(std::move(app));
  }
  c.index_applications();
  if (composition) {
    auto sym = c.signature_.find(*composition);
    if (!sym || c.signature_.symbols()[*sym].arity != 2)
      throw SemanticError("composition '" + *composition + "' is not a binary symbol");
    c.composition_ = std::move(composition);
    c.index_composition();
  }
  return c;
}

Carrier Carrier::normalized(Signature signature, std::vector<Term> elements,
                            Canonicalizer canonicalize, std::string composition) {
  Carrier c;
  c.signature_ = std::move(signature);
  c.terms_ = std::move(elements);
  c.canonicalize_ = std::move(canonicalize);
  auto sym = c.signature_.find(composition);
  if (!sym || c.signature_.symbols()[*sym].arity != 2)
    throw SemanticError("composition '" + composition + "' is not a binary symbol");
  for (std::size_t i = 0; i < c.terms_.size(); ++i) {
    const Term& t = c.terms_[i];
    if (!t.is_ground()) throw SemanticError("normalized carriers hold ground terms only");
    if (!(c.canonicalize_(t) == t)) throw SemanticError("'" + t.to_string() + "' is not canonical");
    if (!c.index_.emplace(t, i).second) throw SemanticError("duplicate carrier element");
  }
  const std::size_t n = c.terms_.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (auto r = c.locate(Term::apply(composition, {c.terms_[a], c.terms_[b]})))
        c.apps_.push_back({*sym, {a, b}, *r});
  c.index_applications();
  c.composition_ = std::move(composition);
  c.index_composition();
  return c;
}

void Carrier::index_applications() {
  const std::size_t n = terms_.size();
  for (std::size_t k = 0; k < apps_.size(); ++k) {
    const auto& app = apps_[k];
    if (app.args.size() >= max_arity) throw SemanticError("arity too large");
    for (std::size_t p = 0; p < app.args.size(); ++p)
      by_position_[(app.symbol * max_arity + p) * n + app.args[p]].push_back(k);
  }
}

void Carrier::index_composition() {
  const std::size_t n = terms_.size();
  const std::size_t sym = *signature_.find(*composition_);
  compose_.assign(n * n, -1);
  decompose_.assign(n, {});
  for (const auto& app : apps_) {
    if (app.symbol != sym) continue;
    compose_[app.args[0] * n + app.args[1]] = static_cast<std::int32_t>(app.result);
    decompose_[app.result].emplace_back(app.args[0], app.args[1]);
  }
}

std::optional<std::size_t> Carrier::locate(const Term& t) const {
  auto it = index_.find(canonical(t));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::size_t>& Carrier::applications_at(std::size_t symbol, std::size_t position,
                                                         std::size_t element) const {
  auto it = by_position_.find((symbol * max_arity + position) * terms_.size() + element);
  return it == by_position_.end() ? no_indices : it->second;
}

std::optional<std::size_t> Carrier::compose(std::size_t a, std::size_t s) const {
  if (compose_.empty()) return std::nullopt;
  std::int32_t r = compose_[a * terms_.size() + s];
  if (r < 0) return std::nullopt;
  return static_cast<std::size_t>(r);
}

const std::vector<std::pair<std::size_t, std::size_t>>& Carrier::decompositions(std::size_t x) const {
  return decompose_.empty() ? no_pairs : decompose_[x];
}

LRelation<Term> axiom_lset(const TermUniverse& u) {
  // The lattice only fixes the value 1; any chain gives the same crisp set.
  LRelation<Term> a(ResiduatedLattice::boolean(), "U x U");
  for (const auto& t : u.terms()) a.set({t, t}, a.lattice().one());
  return a;
}

// ------------------------------------------------------------ ClosureState

Degree ClosureState::degree(const Inequality& e) const {
  auto a = carrier_->locate(e.lhs);
  auto b = carrier_->locate(e.rhs);
  if (!a || !b) throw SemanticError("query outside the universe: " + e.to_string());
  return degrees_.at(*a, *b);
}

std::vector<ClosureState::Version> ClosureState::history(std::size_t lhs, std::size_t rhs) const {
  if (lhs == rhs) return {Version{lattice().denominator(), Justification{}}};
  auto it = provenance_.find(cell_key(lhs, rhs));
  return it == provenance_.end() ? std::vector<Version>{} : it->second;
}

LRelation<Term> ClosureState::to_lrelation() const {
  LRelation<Term> r(lattice(), "U x U");
  const auto& c = *carrier_;
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = 0; b < c.size(); ++b)
      if (degrees_.num(a, b) > 0) r.set({c[a], c[b]}, degrees_.at(a, b));
  return r;
}

// ---------------------------------------------------------------- fixpoint

class ClosureRun {
 public:
  static ClosureState make(std::shared_ptr<const Carrier> carrier, DegreeMatrix m, RuleSet rules) {
    return ClosureState(std::move(carrier), std::move(m), rules);
  }

  ClosureRun(ClosureState& state, const ClosureOptions& options)
      : st_(state),
        c_(*state.carrier_),
        lat_(state.lattice()),
        n_(c_.size()),
        rules_(options.rules),
        queued_(n_ * n_, false) {
    if (options.shuffle_seed) rng_.emplace(*options.shuffle_seed);
  }

  void run(const GradedTheory& sigma) {
    if (rules_.inv && !c_.ground()) prepare_instances();
    if (rules_.rep) prepare_occurrences();
    for (const auto& [e, d] : sigma.entries()) {
      auto a = c_.locate(e.lhs);
      auto b = c_.locate(e.rhs);
      if (!a || !b) throw SemanticError("assumption outside the universe: " + e.to_string());
      Justification j;
      j.kind = Justification::Kind::assumption;
      raise(*a, *b, d.numerator(), std::move(j));
    }
    const std::uint64_t cap = static_cast<std::uint64_t>(n_) * n_ * lat_.size();
    while (!work_.empty()) {
      if (++st_.iterations_ > cap) throw std::logic_error("closure iteration cap exceeded");
      std::uint64_t key;
      if (rng_) {
        std::size_t pick = std::uniform_int_distribution<std::size_t>(0, work_.size() - 1)(*rng_);
        key = work_[pick];
        work_[pick] = work_.back();
        work_.pop_back();
      } else {
        key = work_[head_++];
        if (head_ == work_.size()) {
          work_.clear();
          head_ = 0;
        }
      }
      const std::size_t a = key >> 32, b = key & 0xffffffffu;
      queued_[a * n_ + b] = false;
      fire(a, b);
    }
  }

 private:
  struct Instance {
    std::size_t target;
    std::vector<std::size_t> images;  // aligned with vars_[term]
  };

  unsigned deg(std::size_t a, std::size_t b) const { return st_.degrees_.num(a, b); }

  Justification::Premise premise(std::size_t a, std::size_t b) const {
    if (a == b) return {a, b, 0};
    return {a, b, st_.provenance_.at(cell_key(a, b)).size() - 1};
  }

  Justification rule(Rule r, std::vector<Justification::Premise> premises) const {
    Justification j;
    j.kind = Justification::Kind::rule;
    j.rule = r;
    j.premises = std::move(premises);
    return j;
  }

  void raise(std::size_t a, std::size_t b, unsigned d, Justification why) {
    if (a == b || d <= deg(a, b)) return;
    st_.degrees_.set_num(a, b, d);
    st_.provenance_[cell_key(a, b)].push_back({d, std::move(why)});
    if (!queued_[a * n_ + b]) {
      queued_[a * n_ + b] = true;
      work_.push_back(cell_key(a, b));
    }
  }

  void fire(std::size_t a, std::size_t b) {
    const unsigned d = deg(a, b);
    if (rules_.tra) fire_tra(a, b, d);
    if (rules_.com) fire_com(a, b);
    if (rules_.inv && !c_.ground()) fire_inv(a, b, d);
    if (rules_.rep) fire_rep(a, b, d);
    if (rules_.aug) fire_aug(a, b, d);
    if (rules_.cut) fire_cut(a, b, d);
  }

  void fire_tra(std::size_t a, std::size_t b, unsigned d) {
    for (std::size_t c = 0; c < n_; ++c) {
      if (c != b && deg(b, c) > 0)
        raise(a, c, lat_.mul(d, deg(b, c)), rule(Rule::tra, {premise(a, b), premise(b, c)}));
      if (c != a && deg(c, a) > 0)
        raise(c, b, lat_.mul(deg(c, a), d), rule(Rule::tra, {premise(c, a), premise(a, b)}));
    }
  }

  void fire_com(std::size_t a, std::size_t b) {
    const auto& apps = c_.applications();
    for (std::size_t s = 0; s < c_.signature().size(); ++s) {
      const std::size_t arity = c_.signature().symbols()[s].arity;
      for (std::size_t p = 0; p < arity; ++p) {
        const auto& left = c_.applications_at(s, p, a);
        if (left.empty()) continue;
        const auto& right = c_.applications_at(s, p, b);
        for (std::size_t i : left)
          for (std::size_t j : right) {
            const auto& x = apps[i];
            const auto& y = apps[j];
            unsigned prod = lat_.denominator();
            for (std::size_t k = 0; k < arity && prod > 0; ++k) prod = lat_.mul(prod, deg(x.args[k], y.args[k]));
            if (prod <= deg(x.result, y.result)) continue;
            std::vector<Justification::Premise> ps;
            for (std::size_t k = 0; k < arity; ++k) ps.push_back(premise(x.args[k], y.args[k]));
            raise(x.result, y.result, prod, rule(Rule::com, std::move(ps)));
          }
      }
    }
  }

  void prepare_instances() {
    vars_.resize(n_);
    instances_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      vars_[i] = sorted_variables(c_[i]);
      for (std::size_t u = 0; u < n_; ++u) {
        auto sigma = match(c_[i], c_[u]);
        if (!sigma) continue;
        Instance inst{u, {}};
        for (const auto& v : vars_[i]) {
          const Term* image = sigma->find(v);
          inst.images.push_back(*c_.locate(image ? *image : Term::variable(v)));
        }
        instances_[i].push_back(std::move(inst));
      }
    }
  }

  void fire_inv(std::size_t a, std::size_t b, unsigned d) {
    const auto& va = vars_[a];
    const auto& vb = vars_[b];
    std::vector<std::pair<std::size_t, std::size_t>> shared;
    for (std::size_t i = 0; i < va.size(); ++i)
      for (std::size_t j = 0; j < vb.size(); ++j)
        if (va[i] == vb[j]) shared.emplace_back(i, j);
    for (const auto& x : instances_[a])
      for (const auto& y : instances_[b]) {
        if (d <= deg(x.target, y.target) || x.target == y.target) continue;
        bool agree = true;
        for (auto [i, j] : shared)
          if (x.images[i] != y.images[j]) {
            agree = false;
            break;
          }
        if (!agree) continue;
        Justification j = rule(Rule::inv, {premise(a, b)});
        for (std::size_t i = 0; i < va.size(); ++i) j.subst.bind(va[i], c_[x.images[i]]);
        for (std::size_t k = 0; k < vb.size(); ++k) j.subst.bind(vb[k], c_[y.images[k]]);
        raise(x.target, y.target, d, std::move(j));
      }
  }

  void prepare_occurrences() {
    occurrences_.resize(n_);
    std::vector<TermPath> paths;
    for (std::size_t s = 0; s < n_; ++s) {
      paths.clear();
      TermPath p;
      all_paths(c_[s], p, paths);
      for (const auto& path : paths) {
        if (path.empty()) continue;
        if (auto at = c_.locate(subterm_at(c_[s], path))) occurrences_[*at].emplace_back(s, path);
      }
    }
  }

  void fire_rep(std::size_t a, std::size_t b, unsigned d) {
    for (const auto& [s, path] : occurrences_[a]) {
      auto target = c_.locate(replace_subterm(c_[s], path, c_[b]));
      if (target) raise(s, *target, d, rule(Rule::rep, {premise(a, b)}));
    }
  }

  void fire_aug(std::size_t a, std::size_t b, unsigned d) {
    for (std::size_t s = 0; s < n_; ++s) {
      auto x = c_.compose(a, s);
      auto y = c_.compose(b, s);
      if (!x || !y) continue;
      Justification j = rule(Rule::aug, {premise(a, b)});
      j.context = s;
      raise(*x, *y, d, std::move(j));
    }
  }

  // Cut: t <= t' @ d and t's <= s' @ e give ts <= s' @ d*e; without s it is
  // transitivity through t'.
  void cut(std::size_t t, std::size_t tp, std::optional<std::size_t> s, std::size_t w,
           std::size_t sp) {
    const unsigned v = lat_.mul(deg(t, tp), deg(w, sp));
    if (v == 0) return;
    auto x = s ? c_.compose(t, *s) : std::optional<std::size_t>(t);
    if (!x || v <= deg(*x, sp)) return;
    Justification j = rule(Rule::cut, {premise(t, tp), premise(w, sp)});
    j.context = s;
    raise(*x, sp, v, std::move(j));
  }

  void fire_cut(std::size_t a, std::size_t b, unsigned) {
    // (a, b) as the left premise t <= t'.
    for (std::size_t sp = 0; sp < n_; ++sp)
      if (deg(b, sp) > 0) cut(a, b, std::nullopt, b, sp);
    for (std::size_t s = 0; s < n_; ++s) {
      auto w = c_.compose(b, s);
      if (!w) continue;
      for (std::size_t sp = 0; sp < n_; ++sp)
        if (deg(*w, sp) > 0) cut(a, b, s, *w, sp);
    }
    // (a, b) as the right premise t's <= s'.
    for (std::size_t t = 0; t < n_; ++t)
      if (deg(t, a) > 0) cut(t, a, std::nullopt, a, b);
    for (const auto& [tp, s] : c_.decompositions(a))
      for (std::size_t t = 0; t < n_; ++t)
        if (deg(t, tp) > 0) cut(t, tp, s, a, b);
  }

  ClosureState& st_;
  const Carrier& c_;
  ResiduatedLattice lat_;
  std::size_t n_;
  RuleSet rules_;
  std::vector<bool> queued_;
  std::vector<std::uint64_t> work_;
  std::size_t head_ = 0;
  std::optional<std::mt19937_64> rng_;
  std::vector<std::vector<std::string>> vars_;
  std::vector<std::vector<Instance>> instances_;
  std::vector<std::vector<std::pair<std::size_t, TermPath>>> occurrences_;
};

ClosureState syntactic_closure(std::shared_ptr<const Carrier> carrier, const GradedTheory& sigma,
                               const ClosureOptions& options) {
  if (options.rules.needs_composition() && !carrier->composition())
    throw SemanticError("rules " + options.rules.to_string() + " need a composition symbol");
  const auto& lat = sigma.lattice();
  const std::size_t n = carrier->size();
  DegreeMatrix m(lat, n);
  for (std::size_t i = 0; i < n; ++i) m.set_num(i, i, lat.denominator());
  ClosureState state = ClosureRun::make(std::move(carrier), std::move(m), options.rules);
  ClosureRun(state, options).run(sigma);
  return state;
}

ClosureState syntactic_closure(const TermUniverse& u, const GradedTheory& sigma,
                               const ClosureOptions& options) {
  return syntactic_closure(std::make_shared<const Carrier>(Carrier::from_universe(u)), sigma, options);
}

Degree provability_degree(const GradedTheory& sigma, const Inequality& e, const TermUniverse& u,
                          const ClosureOptions& options) {
  if (!u.contains(e.lhs) || !u.contains(e.rhs))
    throw SemanticError("query outside the universe: " + e.to_string());
  return syntactic_closure(u, sigma, options).degree(e);
}

// ------------------------------------------------------------------- proofs

Proof extract_proof(const ClosureState& state, const Inequality& e) {
  const auto& c = state.carrier();
  auto a = c.locate(e.lhs);
  auto b = c.locate(e.rhs);
  if (!a || !b) throw SemanticError("query outside the universe: " + e.to_string());
  if (*a != *b && state.degrees().num(*a, *b) == 0)
    throw SemanticError("no derivation of " + e.to_string());

  struct Node {
    std::size_t lhs, rhs, version;
    bool operator<(const Node& o) const {
      return std::tie(lhs, rhs, version) < std::tie(o.lhs, o.rhs, o.version);
    }
  };
  std::map<Node, std::size_t> emitted;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<ClosureState::Version>> cache;
  auto versions = [&](std::size_t l, std::size_t r) -> const std::vector<ClosureState::Version>& {
    auto it = cache.find({l, r});
    if (it == cache.end()) it = cache.emplace(std::make_pair(l, r), state.history(l, r)).first;
    return it->second;
  };

  Proof proof;
  std::vector<std::pair<Node, bool>> stack;
  stack.push_back({{*a, *b, versions(*a, *b).size() - 1}, false});
  while (!stack.empty()) {
    auto [node, expanded] = stack.back();
    stack.pop_back();
    if (emitted.count(node)) continue;
    const auto& version = versions(node.lhs, node.rhs).at(node.version);
    if (!expanded) {
      stack.push_back({node, true});
      for (auto it = version.why.premises.rbegin(); it != version.why.premises.rend(); ++it) {
        Node p{it->lhs, it->rhs, it->version};
        if (!emitted.count(p)) stack.push_back({p, false});
      }
      continue;
    }
    ProofStep step{{c[node.lhs], c[node.rhs]}, state.lattice().degree(version.degree),
                   ProofStep::Kind::axiom, Rule::tra, {}, std::nullopt, std::nullopt};
    switch (version.why.kind) {
      case Justification::Kind::axiom: step.kind = ProofStep::Kind::axiom; break;
      case Justification::Kind::assumption: step.kind = ProofStep::Kind::assumption; break;
      case Justification::Kind::rule:
        step.kind = ProofStep::Kind::rule;
        step.rule = version.why.rule;
        for (const auto& p : version.why.premises) step.premises.push_back(emitted.at({p.lhs, p.rhs, p.version}));
        if (step.rule == Rule::inv) step.subst = version.why.subst;
        if (version.why.context) step.context = c[*version.why.context];
        break;
    }
    emitted.emplace(node, proof.steps.size());
    proof.steps.push_back(std::move(step));
  }
  return proof;
}

ProofContext::ProofContext(const GradedTheory& sigma, Carrier::Canonicalizer canonicalize_,
                           std::optional<std::string> composition_)
    : lattice(sigma.lattice()), canonicalize(std::move(canonicalize_)), composition(std::move(composition_)) {
  for (const auto& [e, d] : sigma.entries()) {
    Inequality key{canonical(e.lhs), canonical(e.rhs)};
    auto& slot = assumptions[key];
    slot = std::max(slot, d.numerator());
  }
}

unsigned ProofContext::assumption(const Inequality& e) const {
  auto it = assumptions.find({canonical(e.lhs), canonical(e.rhs)});
  return it == assumptions.end() ? 0u : it->second;
}

namespace {

class ProofChecker {
 public:
  ProofChecker(const Proof& proof, const ProofContext& ctx, bool strict)
      : proof_(proof), ctx_(ctx), strict_(strict) {}

  ProofVerdict run() {
    for (std::size_t i = 0; i < proof_.steps.size(); ++i) {
      std::string why = check(i);
      if (!why.empty()) return {false, i, "step " + std::to_string(i) + ": " + why};
    }
    return {};
  }

 private:
  bool same(const Term& a, const Term& b) const { return ctx_.canonical(a) == ctx_.canonical(b); }

  Term compose(const Term& a, const Term& b) const { return Term::apply(*ctx_.composition, {a, b}); }

  std::string expect_degree(const ProofStep& s, unsigned expected) const {
    if (s.degree.numerator() != expected)
      return "degree " + s.degree.to_string() + " differs from the rule output " +
             ctx_.lattice.degree(expected).to_string();
    return {};
  }

  std::string check(std::size_t i) const {
    const ProofStep& s = proof_.steps[i];
    const auto& lat = ctx_.lattice;
    if (!lat.contains(s.degree)) return "degree " + s.degree.to_string() + " is not in " + lat.name();
    for (std::size_t p : s.premises)
      if (p >= i) return "premise " + std::to_string(p) + " is not an earlier step";
    const Inequality& e = s.ineq;

    switch (s.kind) {
      case ProofStep::Kind::axiom:
        if (!s.premises.empty()) return "an axiom has no premises";
        if (!same(e.lhs, e.rhs)) return "not an axiom: sides differ";
        return expect_degree(s, lat.denominator());
      case ProofStep::Kind::assumption: {
        if (!s.premises.empty()) return "an assumption has no premises";
        const unsigned a = ctx_.assumption(e);
        if (strict_ ? s.degree.numerator() != a : s.degree.numerator() > a)
          return "assumption degree " + s.degree.to_string() + (strict_ ? " differs from " : " exceeds ") +
                 lat.degree(a).to_string();
        return {};
      }
      case ProofStep::Kind::rule: break;
    }

    auto prem = [&](std::size_t k) -> const ProofStep& { return proof_.steps[s.premises[k]]; };
    auto arity = [&](std::size_t k) -> std::string {
      if (s.premises.size() != k)
        return rule_name(s.rule) + " needs " + std::to_string(k) + " premise(s), got " +
               std::to_string(s.premises.size());
      return {};
    };
    auto needs_composition = [&]() -> std::string {
      return ctx_.composition ? std::string() : rule_name(s.rule) + " needs a composition symbol";
    };

    switch (s.rule) {
      case Rule::tra: {
        if (auto w = arity(2); !w.empty()) return w;
        const auto& p = prem(0).ineq;
        const auto& q = prem(1).ineq;
        if (!same(p.rhs, q.lhs)) return "premises do not chain: " + p.to_string() + " then " + q.to_string();
        if (!same(e.lhs, p.lhs) || !same(e.rhs, q.rhs)) return "conclusion does not match the premises";
        return expect_degree(s, lat.mul(prem(0).degree.numerator(), prem(1).degree.numerator()));
      }
      case Rule::com: {
        if (s.premises.empty()) return "Com needs at least one premise";
        std::vector<Term> ls, rs;
        unsigned v = lat.denominator();
        for (std::size_t k = 0; k < s.premises.size(); ++k) {
          ls.push_back(prem(k).ineq.lhs);
          rs.push_back(prem(k).ineq.rhs);
          v = lat.mul(v, prem(k).degree.numerator());
        }
        std::vector<std::string> heads;
        if (!e.lhs.is_variable() && e.lhs.args().size() == ls.size()) heads.push_back(e.lhs.head());
        if (ctx_.composition && ls.size() == 2) heads.push_back(*ctx_.composition);
        bool ok = false;
        for (const auto& h : heads)
          if (same(e.lhs, Term::apply(h, ls)) && same(e.rhs, Term::apply(h, rs))) ok = true;
        if (!ok) return "conclusion is not the application of one symbol to the premises";
        return expect_degree(s, v);
      }
      case Rule::inv: {
        if (auto w = arity(1); !w.empty()) return w;
        const auto& p = prem(0).ineq;
        Substitution sigma = s.subst.value_or(Substitution{});
        if (!same(e.lhs, sigma.apply(p.lhs)) || !same(e.rhs, sigma.apply(p.rhs)))
          return "conclusion is not the substitution instance of the premise";
        return expect_degree(s, prem(0).degree.numerator());
      }
      case Rule::rep: {
        if (auto w = arity(1); !w.empty()) return w;
        const auto& p = prem(0).ineq;
        std::vector<TermPath> paths;
        TermPath path;
        all_paths(e.lhs, path, paths);
        bool ok = false;
        for (const auto& at : paths)
          if (same(subterm_at(e.lhs, at), p.lhs) && same(replace_subterm(e.lhs, at, p.rhs), e.rhs)) {
            ok = true;
            break;
          }
        if (!ok) return "conclusion is not a replacement instance of the premise";
        return expect_degree(s, prem(0).degree.numerator());
      }
      case Rule::aug: {
        if (auto w = arity(1); !w.empty()) return w;
        if (auto w = needs_composition(); !w.empty()) return w;
        if (!s.context) return "Aug needs the term s";
        const auto& p = prem(0).ineq;
        if (!same(e.lhs, compose(p.lhs, *s.context)) || !same(e.rhs, compose(p.rhs, *s.context)))
          return "conclusion is not the premise composed with s";
        return expect_degree(s, prem(0).degree.numerator());
      }
      case Rule::cut: {
        if (auto w = arity(2); !w.empty()) return w;
        const auto& p = prem(0).ineq;
        const auto& q = prem(1).ineq;
        Term middle = p.rhs, left = p.lhs;
        if (s.context) {
          if (auto w = needs_composition(); !w.empty()) return w;
          middle = compose(p.rhs, *s.context);
          left = compose(p.lhs, *s.context);
        }
        if (!same(q.lhs, middle)) return "premises do not chain: " + p.to_string() + " then " + q.to_string();
        if (!same(e.lhs, left) || !same(e.rhs, q.rhs)) return "conclusion does not match the premises";
        return expect_degree(s, lat.mul(prem(0).degree.numerator(), prem(1).degree.numerator()));
      }
    }
    return "unknown rule";
  }

  const Proof& proof_;
  const ProofContext& ctx_;
  bool strict_;
};

}  // namespace

ProofVerdict check_proof(const Proof& proof, const ProofContext& context, bool strict) {
  return ProofChecker(proof, context, strict).run();
}

ProofVerdict check_proof(const Proof& proof, const GradedTheory& sigma, bool strict) {
  return check_proof(proof, ProofContext(sigma), strict);
}

// ------------------------------------------------------------ verification

FixpointCheck verify_closed(const ClosureState& state, const GradedTheory& sigma) {
  const auto& c = state.carrier();
  const auto& s = state.degrees();
  const auto& lat = state.lattice();
  const auto& rules = state.rules();
  const std::size_t n = c.size();
  auto fail = [&](std::string what) { return FixpointCheck{false, std::move(what)}; };
  auto pair = [&](std::size_t a, std::size_t b) { return c[a].to_string() + " <= " + c[b].to_string(); };

  for (std::size_t a = 0; a < n; ++a)
    if (s.num(a, a) != lat.denominator()) return fail("reflexivity fails at " + c[a].to_string());

  for (const auto& [e, d] : sigma.entries()) {
    auto a = c.locate(e.lhs);
    auto b = c.locate(e.rhs);
    if (!a || !b || s.num(*a, *b) < d.numerator()) return fail("assumption not contained: " + e.to_string());
  }

  if (rules.tra)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t d = 0; d < n; ++d)
          if (lat.mul(s.num(a, b), s.num(b, d)) > s.num(a, d))
            return fail("transitivity fails through " + c[b].to_string() + " for " + pair(a, d));

  if (rules.com) {
    const auto& apps = c.applications();
    for (const auto& x : apps)
      for (const auto& y : apps) {
        if (x.symbol != y.symbol) continue;
        unsigned v = lat.denominator();
        for (std::size_t k = 0; k < x.args.size(); ++k) v = lat.mul(v, s.num(x.args[k], y.args[k]));
        if (v > s.num(x.result, y.result)) return fail("compatibility fails for " + pair(x.result, y.result));
      }
  }

  if (rules.inv && !c.ground())
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b || s.num(a, b) == 0) continue;
        for (std::size_t u = 0; u < n; ++u) {
          auto sigma_a = match(c[a], c[u]);
          if (!sigma_a) continue;
          for (std::size_t v = 0; v < n; ++v) {
            auto sigma_b = match(c[b], c[v]);
            if (!sigma_b) continue;
            bool agree = true;
            for (const auto& x : variables_of(c[a])) {
              if (!variables_of(c[b]).count(x)) continue;
              const Term* ia = sigma_a->find(x);
              const Term* ib = sigma_b->find(x);
              if (!((ia ? *ia : Term::variable(x)) == (ib ? *ib : Term::variable(x)))) agree = false;
            }
            if (agree && s.num(a, b) > s.num(u, v))
              return fail("invariance fails from " + pair(a, b) + " to " + pair(u, v));
          }
        }
      }

  if (rules.rep)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b || s.num(a, b) == 0) continue;
        for (std::size_t t = 0; t < n; ++t) {
          std::vector<TermPath> paths;
          TermPath p;
          all_paths(c[t], p, paths);
          for (const auto& path : paths) {
            if (!(subterm_at(c[t], path) == c[a])) continue;
            auto r = c.locate(replace_subterm(c[t], path, c[b]));
            if (r && s.num(a, b) > s.num(t, *r)) return fail("replacement fails for " + pair(t, *r));
          }
        }
      }

  if (rules.aug)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t x = 0; x < n; ++x) {
          auto l = c.compose(a, x), r = c.compose(b, x);
          if (l && r && s.num(a, b) > s.num(*l, *r)) return fail("Aug fails for " + pair(*l, *r));
        }

  if (rules.cut)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t tp = 0; tp < n; ++tp) {
        if (s.num(t, tp) == 0) continue;
        for (std::size_t sp = 0; sp < n; ++sp)
          if (lat.mul(s.num(t, tp), s.num(tp, sp)) > s.num(t, sp)) return fail("Cut fails for " + pair(t, sp));
        for (std::size_t x = 0; x < n; ++x) {
          auto w = c.compose(tp, x), l = c.compose(t, x);
          if (!w || !l) continue;
          for (std::size_t sp = 0; sp < n; ++sp)
            if (lat.mul(s.num(t, tp), s.num(*w, sp)) > s.num(*l, sp)) return fail("Cut fails for " + pair(*l, sp));
        }
      }
  return {};
}

DerivedRuleReport derived_rule_check(const TermUniverse& u, const GradedTheory& sigma) {
  DerivedRuleReport report;
  auto com = syntactic_closure(u, sigma, {RuleSet::standard(), std::nullopt});
  auto rep = syntactic_closure(u, sigma, {RuleSet::tra_rep_inv(), std::nullopt});
  report.replacement_matches = com.degrees() == rep.degrees();
  if (!report.replacement_matches) {
    for (std::size_t a = 0; a < u.size() && report.detail.empty(); ++a)
      for (std::size_t b = 0; b < u.size(); ++b)
        if (com.degrees().num(a, b) != rep.degrees().num(a, b)) {
          report.detail = "closures differ at " + u[a].to_string() + " <= " + u[b].to_string();
          break;
        }
  }

  const auto& s = com.degrees();
  for (std::size_t a = 0; a < u.size(); ++a)
    for (std::size_t b = 0; b < u.size(); ++b) {
      if (s.num(a, b) == 0) continue;
      std::set<std::string> vars = variables_of(u[a]);
      for (const auto& v : variables_of(u[b])) vars.insert(v);
      for (const auto& x : vars)
        for (const auto& t : u.terms()) {
          Substitution single{{x, t}};
          auto l = u.index_of(single.apply(u[a]));
          auto r = u.index_of(single.apply(u[b]));
          if (!l || !r) continue;
          ++report.substitution_instances;
          if (s.num(*l, *r) < s.num(a, b) && report.substitution_included) {
            report.substitution_included = false;
            report.detail = "substitution " + x + " -> " + t.to_string() + " escapes the closure";
          }
        }
    }
  return report;
}

Certificate certify_degree(const GradedTheory& sigma, const Inequality& e, const TermUniverse& u,
                           const CertifyOptions& options) {
  if (!u.contains(e.lhs) || !u.contains(e.rhs))
    throw SemanticError("query outside the universe: " + e.to_string());
  auto state = syntactic_closure(u, sigma, options.closure);
  Certificate cert;
  cert.lower = state.degree(e);
  cert.iterations = state.iterations();

  EnumerationOptions search;
  search.min_size = 1;
  search.max_size = options.max_model_size;
  search.budget = options.budget;
  auto bounded = semantic_degree_bounded(u.signature(), sigma.lattice(), sigma, e, search, cert.lower);
  cert.models = bounded.models;
  cert.no_model = bounded.no_model;
  if (bounded.status == EnumerationStatus::budget_exceeded) {
    cert.reason = "model search budget exceeded";
    return cert;
  }
  cert.upper = bounded.degree;
  if (*cert.upper < cert.lower) throw std::logic_error("soundness violated: lower bound above a model");
  cert.certified = cert.lower == *cert.upper;
  if (!cert.certified) cert.reason = "lower and upper bounds differ";
  return cert;
}

}  // namespace fil
