#include "fil/ai.hpp"

#include <algorithm>
#include <functional>

#include "lexer.hpp"

namespace fil {

namespace {

const std::string comp(composition_symbol);
const std::string top(top_symbol);

SemanticError located(const Token& at, const std::string& what) {
  return SemanticError(std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + what);
}

void require_supported(const AiMode& mode) {
  if (mode.idempotent && !mode.commutative)
    throw SemanticError("idempotent mode requires commutativity");
}

void flatten(const Term& t, std::vector<std::string>& out) {
  if (t.is_variable()) throw SemanticError("attribute terms are ground; found variable '" + t.head() + "'");
  if (t.head() == comp) {
    if (t.args().size() != 2) throw SemanticError("composition is binary");
    flatten(t.args()[0], out);
    flatten(t.args()[1], out);
    return;
  }
  if (!t.args().empty()) throw SemanticError("'" + t.head() + "' is not an attribute");
  out.push_back(t.head());
}

Term compose(Term a, Term b) { return Term::apply(comp, {std::move(a), std::move(b)}); }

bool keyword(std::string_view s) {
  return s == "assume" || s == "attributes" || s == "lattice" || s == "idempotent" ||
         s == "commutative";
}

}  // namespace

// ---------------------------------------------------------------- attributes

AttributeSet::AttributeSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw SemanticError("the attribute set is empty");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n == top || n == comp) throw SemanticError("attribute '" + n + "' clashes with a reserved symbol");
    if (n.empty()) throw SemanticError("empty attribute name");
    if (!seen.insert(n).second) throw SemanticError("duplicate attribute '" + n + "'");
  }
}

bool AttributeSet::contains(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

Signature build_ai_signature(const AttributeSet& y) {
  Signature sig;
  sig.add(comp, 2);
  for (const auto& n : y.names()) sig.add(n, 0);
  sig.add(top, 0);
  return sig;
}

// ------------------------------------------------------------ normal forms

std::size_t GroundNormalForm::multiplicity(std::string_view attribute) const {
  return static_cast<std::size_t>(std::count(letters.begin(), letters.end(), attribute));
}

std::string GroundNormalForm::to_string(const AiMode& mode) const {
  std::string out;
  if (!mode.commutative) {
    out = "[";
    if (leading_top) out += top;
    for (const auto& l : letters) out += (out.size() > 1 ? " " : "") + l;
    return out + "]";
  }
  out = "{";
  for (std::size_t i = 0; i < letters.size();) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    if (i) out += ", ";
    out += letters[i] + ":" + std::to_string(j - i);
    i = j;
  }
  return out + "}";
}

GroundNormalForm normalize_ac(const Term& t, const AiMode& mode) {
  require_supported(mode);
  std::vector<std::string> flat;
  flatten(t, flat);
  GroundNormalForm nf;
  if (!mode.commutative) nf.leading_top = flat.front() == top;
  for (auto& l : flat)
    if (l != top) nf.letters.push_back(std::move(l));
  if (mode.commutative) {
    std::sort(nf.letters.begin(), nf.letters.end());
    if (mode.idempotent) nf.letters.erase(std::unique(nf.letters.begin(), nf.letters.end()), nf.letters.end());
  }
  return nf;
}

Term normal_form_term(const GroundNormalForm& nf) {
  if (nf.letters.empty()) return Term::apply(top);
  Term t = Term::apply(nf.letters.back());
  for (std::size_t i = nf.letters.size() - 1; i-- > 0;) t = compose(Term::apply(nf.letters[i]), t);
  return nf.leading_top ? compose(Term::apply(top), t) : t;
}

Term canonical_ai_term(const Term& t, const AiMode& mode) { return normal_form_term(normalize_ac(t, mode)); }

// ------------------------------------------------------------------ theory

Term AiTheory::parse_side(std::string_view text) const {
  Lexer lex(text);
  std::vector<Term> letters;
  while (!lex.at_end()) {
    Token a = lex.expect(TokenKind::identifier, "an attribute");
    if (a.text != top && !attributes.contains(a.text)) throw located(a, "unknown attribute '" + a.text + "'");
    letters.push_back(Term::apply(a.text));
  }
  if (letters.empty()) return Term::apply(top);
  Term t = letters.back();
  for (std::size_t i = letters.size() - 1; i-- > 0;) t = compose(letters[i], t);
  return t;
}

Inequality AiTheory::parse_inequality(std::string_view text) const {
  auto at = text.find("<=");
  if (at == std::string_view::npos) throw ParseError("expected '<=' in '" + std::string(text) + "'", 1, 1);
  if (text.find("<=", at + 2) != std::string_view::npos)
    throw ParseError("more than one '<=' in '" + std::string(text) + "'", 1, at + 3);
  return {parse_side(text.substr(0, at)), parse_side(text.substr(at + 2))};
}

std::string AiTheory::format(const Term& t) const {
  std::vector<std::string> flat;
  flatten(t, flat);
  std::string out;
  for (const auto& l : flat) {
    if (l == top && flat.size() > 1) continue;
    out += (out.empty() ? "" : " ") + l;
  }
  // Only a leading identity matters without commutativity.
  if (!mode.commutative && flat.size() > 1 && flat.front() == top) out = top + " " + out;
  return out.empty() ? top : out;
}

std::string AiTheory::format(const Inequality& e) const { return format(e.lhs) + " <= " + format(e.rhs); }

std::string AiTheory::to_string() const {
  std::string out = "attributes { ";
  for (std::size_t i = 0; i < attributes.size(); ++i) out += (i ? ", " : "") + attributes.names()[i];
  out += " }\nlattice " + lattice.name() + "\n";
  out += std::string("idempotent ") + (mode.idempotent ? "true" : "false") + "\n";
  if (!mode.commutative) out += "commutative false\n";
  for (const auto& [e, d] : assumptions.entries()) out += "assume " + format(e) + " @ " + d.to_string() + "\n";
  return out;
}

AiTheory parse_ai_theory(std::string_view text) {
  Lexer lex(text);
  AiTheory th;
  bool have_attributes = false, have_lattice = false;
  auto side = [&](TokenKind stop) {
    std::vector<Term> letters;
    while (lex.peek().kind == TokenKind::identifier && !keyword(lex.peek().text)) {
      Token a = lex.next();
      if (a.text != top && !th.attributes.contains(a.text)) throw located(a, "unknown attribute '" + a.text + "'");
      letters.push_back(Term::apply(a.text));
    }
    if (lex.peek().kind != stop)
      lex.expect(stop, stop == TokenKind::leq ? "'<='" : "'@'");
    if (letters.empty()) return Term::apply(top);
    Term t = letters.back();
    for (std::size_t i = letters.size() - 1; i-- > 0;) t = compose(letters[i], t);
    return t;
  };
  auto boolean = [&]() {
    Token v = lex.expect(TokenKind::identifier, "'true' or 'false'");
    if (v.text != "true" && v.text != "false") throw ParseError("expected 'true' or 'false'", v.line, v.column);
    return v.text == "true";
  };

  while (!lex.at_end()) {
    Token kw = lex.expect(TokenKind::identifier, "a statement keyword");
    if (kw.text == "attributes") {
      if (have_attributes) throw ParseError("attributes declared twice", kw.line, kw.column);
      lex.expect(TokenKind::lbrace, "'{'");
      std::vector<std::string> names;
      if (!lex.accept(TokenKind::rbrace)) {
        do {
          Token n = lex.expect(TokenKind::identifier, "an attribute name");
          if (keyword(n.text)) throw ParseError("'" + n.text + "' is a keyword", n.line, n.column);
          names.push_back(n.text);
        } while (lex.accept(TokenKind::comma));
        lex.expect(TokenKind::rbrace, "'}'");
      }
      try {
        th.attributes = AttributeSet(std::move(names));
      } catch (const SemanticError& e) {
        throw located(kw, e.what());
      }
      have_attributes = true;
    } else if (kw.text == "lattice") {
      if (th.assumptions.support_size() != 0)
        throw ParseError("lattice declared after assumptions", kw.line, kw.column);
      Token kind = lex.expect(TokenKind::identifier, "a lattice kind");
      std::string decl = kind.text;
      if (kind.text != "boolean") decl += " " + lex.expect(TokenKind::number, "a denominator").text;
      try {
        th.lattice = ResiduatedLattice::parse(decl);
      } catch (const SemanticError& e) {
        throw ParseError(e.what(), kw.line, kw.column);
      }
      th.assumptions = make_graded_theory(th.lattice);
      have_lattice = true;
    } else if (kw.text == "idempotent") {
      th.mode.idempotent = boolean();
    } else if (kw.text == "commutative") {
      th.mode.commutative = boolean();
    } else if (kw.text == "assume") {
      if (!have_attributes) throw ParseError("'assume' before 'attributes'", kw.line, kw.column);
      if (!have_lattice) throw ParseError("'assume' before 'lattice'", kw.line, kw.column);
      Term lhs = side(TokenKind::leq);
      lex.expect(TokenKind::leq, "'<='");
      Term rhs = side(TokenKind::at);
      lex.expect(TokenKind::at, "'@'");
      Token d = lex.next();
      if (d.kind != TokenKind::number && d.kind != TokenKind::degree)
        throw ParseError("expected a degree, got '" + d.text + "'", d.line, d.column);
      try {
        th.assumptions.raise({lhs, rhs}, th.lattice.parse_degree(d.text));
      } catch (const SemanticError& e) {
        throw located(d, e.what());
      }
    } else {
      throw ParseError("unknown statement '" + kw.text + "'", kw.line, kw.column);
    }
  }
  if (!have_attributes) throw ParseError("missing 'attributes' declaration", 0, 0);
  if (!have_lattice) throw ParseError("missing 'lattice' declaration", 0, 0);
  require_supported(th.mode);
  return th;
}

// ---------------------------------------------------------------- carriers

std::size_t default_cap(const AttributeSet& y) { return y.size() + 1; }

std::vector<GroundNormalForm> ai_normal_forms(const AttributeSet& y, const AiMode& mode,
                                              std::size_t cap) {
  require_supported(mode);
  std::vector<std::string> names = y.names();
  std::sort(names.begin(), names.end());
  std::vector<GroundNormalForm> out;
  std::vector<std::string> current;

  if (mode.idempotent) {
    const std::size_t n = names.size();
    if (n >= 20) throw BudgetExceeded("too many attributes for the idempotent carrier");
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      GroundNormalForm nf;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) nf.letters.push_back(names[i]);
      out.push_back(std::move(nf));
    }
  } else if (mode.commutative) {
    // Multisets as non-decreasing sequences.
    std::function<void(std::size_t)> grow = [&](std::size_t from) {
      out.push_back({current, false});
      if (current.size() == cap) return;
      for (std::size_t i = from; i < names.size(); ++i) {
        current.push_back(names[i]);
        grow(i);
        current.pop_back();
      }
    };
    grow(0);
  } else {
    std::function<void()> grow = [&]() {
      if (!current.empty()) out.push_back({current, false});
      out.push_back({current, true});
      if (current.size() == cap) return;
      for (const auto& n : names) {
        current.push_back(n);
        grow();
        current.pop_back();
      }
    };
    grow();
  }
  std::sort(out.begin(), out.end(), [](const GroundNormalForm& a, const GroundNormalForm& b) {
    if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
    return a < b;
  });
  return out;
}

std::shared_ptr<const Carrier> ai_carrier(const AttributeSet& y, const AiMode& mode, std::size_t cap) {
  std::vector<Term> elements;
  for (const auto& nf : ai_normal_forms(y, mode, cap)) elements.push_back(normal_form_term(nf));
  return std::make_shared<const Carrier>(Carrier::normalized(
      build_ai_signature(y), std::move(elements),
      [mode](const Term& t) { return canonical_ai_term(t, mode); }, comp));
}

GradedTheory sigma_ai(const TermUniverse& u, const AiMode& mode, const ResiduatedLattice& lattice) {
  require_supported(mode);
  const auto& sig = u.signature();
  auto c = sig.find(comp);
  auto t = sig.find(top);
  if (!c || sig.symbols()[*c].arity != 2 || !t || sig.symbols()[*t].arity != 0 || !u.variables().empty())
    throw SemanticError("universe is not over an attribute signature");
  for (const auto& s : sig.symbols())
    if (s.name != comp && s.arity != 0) throw SemanticError("universe is not over an attribute signature");

  GradedTheory sigma = make_graded_theory(lattice);
  const Term unit = Term::apply(top);
  auto add = [&](const Term& l, const Term& r) {
    if (u.contains(l) && u.contains(r) && !(l == r)) sigma.set({l, r}, lattice.one());
  };
  for (const auto& x : u.terms()) {
    add(compose(x, unit), x);
    add(x, compose(x, unit));
    add(x, unit);
    if (x.head() != comp) continue;
    const Term& a = x.args()[0];
    const Term& b = x.args()[1];
    if (b.head() == comp) {  // a(st) and (as)t
      Term other = compose(compose(a, b.args()[0]), b.args()[1]);
      add(x, other);
      add(other, x);
    }
    if (mode.commutative) add(x, compose(b, a));
    if (mode.idempotent && a == b) {
      add(x, a);
      add(a, x);
    }
  }
  return sigma;
}

GradedTheory sigma_ai(const Carrier& carrier, const ResiduatedLattice& lattice) {
  GradedTheory sigma = make_graded_theory(lattice);
  auto unit = carrier.locate(Term::apply(top));
  if (!unit) throw SemanticError("carrier lacks the identity");
  for (const auto& x : carrier.terms())
    if (!(x == carrier[*unit])) sigma.set({x, carrier[*unit]}, lattice.one());
  return sigma;
}

std::string rule_system_name(RuleSystem s) {
  switch (s) {
    case RuleSystem::tra_com: return "TraCom";
    case RuleSystem::tra_aug: return "TraAug";
    case RuleSystem::cut: return "Cut";
  }
  return "?";
}

RuleSet rules_of(RuleSystem s) {
  switch (s) {
    case RuleSystem::tra_com: return RuleSet::tra_com();
    case RuleSystem::tra_aug: return RuleSet::tra_aug();
    case RuleSystem::cut: return RuleSet::cut_only();
  }
  return RuleSet::tra_com();
}

namespace {

GradedTheory with_laws(const AiTheory& theory, const Carrier& carrier) {
  GradedTheory all = sigma_ai(carrier, theory.lattice);
  for (const auto& [e, d] : theory.assumptions.entries()) {
    auto l = carrier.locate(e.lhs);
    auto r = carrier.locate(e.rhs);
    if (!l || !r)
      throw SemanticError("assumption outside the universe (raise the cap): " + theory.format(e));
    all.raise({carrier[*l], carrier[*r]}, d);
  }
  return all;
}

}  // namespace

ClosureState ai_closure(const AiTheory& theory, std::size_t cap, RuleSystem system,
                        std::optional<std::uint64_t> shuffle_seed) {
  auto carrier = ai_carrier(theory.attributes, theory.mode, cap);
  GradedTheory sigma = with_laws(theory, *carrier);
  return syntactic_closure(carrier, sigma, {rules_of(system), shuffle_seed});
}

Degree ai_prove_degree(const AiTheory& theory, const Inequality& e, std::size_t cap) {
  return ai_closure(theory, cap).degree(e);
}

ProofContext ai_proof_context(const AiTheory& theory, std::size_t cap) {
  auto carrier = ai_carrier(theory.attributes, theory.mode, cap);
  return ProofContext(with_laws(theory, *carrier), carrier->canonicalizer(), comp);
}

RuleSystemReport compare_rule_systems(const AiTheory& theory, std::size_t cap) {
  RuleSystemReport report;
  auto base = ai_closure(theory, cap, RuleSystem::tra_com);
  for (RuleSystem s : {RuleSystem::tra_aug, RuleSystem::cut}) {
    auto other = ai_closure(theory, cap, s);
    if (other.degrees() == base.degrees()) continue;
    report.equal = false;
    const auto& c = base.carrier();
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = 0; b < c.size(); ++b)
        if (base.degrees().num(a, b) != other.degrees().num(a, b)) {
          report.detail = rule_system_name(s) + " differs at " + theory.format(Inequality{c[a], c[b]}) +
                          ": " + base.degree(a, b).to_string() + " vs " + other.degree(a, b).to_string();
          return report;
        }
  }
  return report;
}

// --------------------------------------------------------------- classical

std::set<std::string> armstrong_crisp_closure(const AttributeSet& y,
                                              const std::vector<AttributeImplication>& fds,
                                              const std::set<std::string>& a) {
  auto check = [&](const std::set<std::string>& s) {
    for (const auto& n : s)
      if (!y.contains(n)) throw SemanticError("attribute '" + n + "' is not in the attribute set");
  };
  check(a);
  for (const auto& [l, r] : fds) {
    check(l);
    check(r);
  }
  std::set<std::string> closure = a;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [l, r] : fds)
      if (std::includes(closure.begin(), closure.end(), l.begin(), l.end()))
        for (const auto& n : r) changed |= closure.insert(n).second;
  }
  return closure;
}

bool classical_satisfaction(const std::set<std::string>& m, const AttributeImplication& fd) {
  const auto& [a, b] = fd;
  if (!std::includes(m.begin(), m.end(), a.begin(), a.end())) return true;
  return std::includes(m.begin(), m.end(), b.begin(), b.end());
}

// ------------------------------------------------------------- structures

FuzzyOrderedAlgebra build_l_structure_example(const ResiduatedLattice& lattice, const AttributeSet& y,
                                              const std::map<std::string, Degree>& values,
                                              bool idempotent) {
  std::vector<std::string> names;
  for (const auto& d : lattice.elements()) names.push_back(d.to_string());
  FuzzyOrderedAlgebra m(lattice, build_ai_signature(y), std::move(names));
  const unsigned n = lattice.denominator();
  for (unsigned a = 0; a <= n; ++a)
    for (unsigned b = 0; b <= n; ++b) {
      m.order.set_num(a, b, lattice.imp(a, b));
      const std::size_t args[] = {a, b};
      m.define(*m.signature.find(comp), args, idempotent ? std::min(a, b) : lattice.mul(a, b));
    }
  m.define(*m.signature.find(top), {}, n);
  for (const auto& attr : y.names()) {
    auto it = values.find(attr);
    if (it == values.end()) throw SemanticError("no value for attribute '" + attr + "'");
    if (!lattice.contains(it->second)) throw SemanticError("value of '" + attr + "' is outside " + lattice.name());
    m.define(*m.signature.find(attr), {}, it->second.numerator());
  }
  for (const auto& [attr, d] : values)
    if (!y.contains(attr)) throw SemanticError("'" + attr + "' is not an attribute");
  return m;
}

std::vector<LawVerdict> ai_law_report(const FuzzyOrderedAlgebra& m, bool idempotent) {
  auto c = m.signature.find(comp);
  auto t = m.signature.find(top);
  if (!c || !t) throw SemanticError("algebra is not over an attribute signature");
  const std::size_t n = m.size();
  auto op = [&](std::size_t a, std::size_t b) -> std::size_t {
    const std::size_t args[] = {a, b};
    auto r = m.apply(*c, args);
    if (!r) throw EvaluationOutOfBounds("composition is undefined");
    return *r;
  };
  auto unit_value = m.apply(*t, {});
  if (!unit_value) throw EvaluationOutOfBounds("identity is undefined");
  const std::size_t u = *unit_value;

  std::vector<std::pair<std::string, unsigned>> laws = {
      {"t.T <= t", m.lattice.denominator()},         {"t <= t.T", m.lattice.denominator()},
      {"t <= T", m.lattice.denominator()},           {"r.(s.t) <= (r.s).t", m.lattice.denominator()},
      {"(r.s).t <= r.(s.t)", m.lattice.denominator()}, {"t.s <= s.t", m.lattice.denominator()}};
  if (idempotent) {
    laws.push_back({"t.t <= t", m.lattice.denominator()});
    laws.push_back({"t <= t.t", m.lattice.denominator()});
  }
  auto lower = [&](std::size_t law, std::size_t a, std::size_t b) {
    laws[law].second = std::min(laws[law].second, m.order.num(a, b));
  };
  for (std::size_t x = 0; x < n; ++x) {
    lower(0, op(x, u), x);
    lower(1, x, op(x, u));
    lower(2, x, u);
    if (idempotent) {
      lower(6, op(x, x), x);
      lower(7, x, op(x, x));
    }
    for (std::size_t s = 0; s < n; ++s) {
      lower(5, op(x, s), op(s, x));
      for (std::size_t r = 0; r < n; ++r) {
        lower(3, op(r, op(s, x)), op(op(r, s), x));
        lower(4, op(op(r, s), x), op(r, op(s, x)));
      }
    }
  }
  std::vector<LawVerdict> out;
  for (const auto& [name, v] : laws) out.push_back({name, m.lattice.degree(v)});
  return out;
}

}  // namespace fil
