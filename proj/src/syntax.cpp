#include "fil/syntax.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "lexer.hpp"

namespace fil {

// ---------------------------------------------------------------- Signature

Signature::Signature(std::initializer_list<Symbol> symbols) {
  for (const auto& s : symbols) add(s.name, s.arity);
}

void Signature::add(std::string name, std::size_t arity) {
  if (find(name)) throw SemanticError("symbol '" + name + "' declared twice");
  symbols_.push_back({std::move(name), arity});
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return i;
  return std::nullopt;
}

bool Signature::has_constant() const {
  return std::any_of(symbols_.begin(), symbols_.end(), [](const Symbol& s) { return s.arity == 0; });
}

// --------------------------------------------------------------------- Term

struct Term::Node {
  bool variable = false;
  std::string head;
  std::vector<Term> args;
  std::size_t depth = 0;
  std::size_t hash = 0;
  bool ground = true;
};

Term Term::variable(std::string name) {
  auto node = std::make_shared<Node>();
  node->variable = true;
  node->hash = std::hash<std::string>{}(name) * 31u + 7u;
  node->head = std::move(name);
  node->ground = false;
  return Term(std::move(node));
}

Term Term::apply(std::string symbol, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  std::size_t h = std::hash<std::string>{}(symbol);
  std::size_t depth = 0;
  for (const auto& a : args) {
    h = h * 1000003u ^ a.hash();
    depth = std::max(depth, a.depth() + 1);
    node->ground = node->ground && a.is_ground();
  }
  node->head = std::move(symbol);
  node->args = std::move(args);
  node->depth = depth;
  node->hash = h;
  return Term(std::move(node));
}

bool Term::is_variable() const noexcept { return node_->variable; }
bool Term::is_ground() const noexcept { return node_->ground; }
const std::string& Term::head() const noexcept { return node_->head; }
const std::vector<Term>& Term::args() const noexcept { return node_->args; }
std::size_t Term::depth() const noexcept { return node_->depth; }
std::size_t Term::hash() const noexcept { return node_->hash; }

std::string Term::to_string() const {
  if (args().empty()) return head();
  std::string out = head() + "(";
  for (std::size_t i = 0; i < args().size(); ++i) {
    if (i) out += ", ";
    out += args()[i].to_string();
  }
  return out + ")";
}

bool operator==(const Term& a, const Term& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.is_variable() != b.is_variable() || a.head() != b.head() ||
      a.args().size() != b.args().size())
    return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!(a.args()[i] == b.args()[i])) return false;
  return true;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.depth() <=> b.depth(); c != 0) return c;
  if (a.is_variable() != b.is_variable())
    return a.is_variable() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = a.head().compare(b.head()); c != 0)
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = a.args().size() <=> b.args().size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (auto c = a.args()[i] <=> b.args()[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::set<std::string> variables_of(const Term& t) {
  std::set<std::string> out;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    if (u.is_ground()) return;
    if (u.is_variable()) {
      out.insert(u.head());
      return;
    }
    for (const auto& a : u.args()) walk(a);
  };
  walk(t);
  return out;
}

void collect_subterms(const Term& t, std::set<Term>& out) {
  if (!out.insert(t).second) return;
  for (const auto& a : t.args()) collect_subterms(a, out);
}

// ------------------------------------------------------------- Substitution

void Substitution::bind(std::string variable, Term image) {
  if (image.is_variable() && image.head() == variable) {
    bindings_.erase(variable);
    return;
  }
  bindings_.insert_or_assign(std::move(variable), std::move(image));
}

const Term* Substitution::find(const std::string& variable) const {
  auto it = bindings_.find(variable);
  return it == bindings_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
  if (bindings_.empty() || t.is_ground()) return t;
  if (t.is_variable()) {
    const Term* image = find(t.head());
    return image ? *image : t;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(apply(a));
    changed = changed || !(args.back() == a);
  }
  return changed ? Term::apply(t.head(), std::move(args)) : t;
}

Substitution Substitution::after(const Substitution& inner) const {
  Substitution out;
  for (const auto& [v, image] : inner.bindings_) out.bind(v, apply(image));
  for (const auto& [v, image] : bindings_)
    if (!inner.find(v)) out.bind(v, image);
  return out;
}

Term apply_substitution(const Substitution& sigma, const Term& t) { return sigma.apply(t); }

namespace {

bool match_into(const Term& pattern, const Term& target, std::map<std::string, Term>& acc) {
  if (pattern.is_variable()) {
    auto [it, inserted] = acc.try_emplace(pattern.head(), target);
    return inserted || it->second == target;
  }
  if (target.is_variable() || pattern.head() != target.head() ||
      pattern.args().size() != target.args().size())
    return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_into(pattern.args()[i], target.args()[i], acc)) return false;
  return true;
}

Substitution from_bindings(const std::map<std::string, Term>& acc) {
  Substitution s;
  for (const auto& [v, t] : acc) s.bind(v, t);
  return s;
}

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& target) {
  std::map<std::string, Term> acc;
  if (!match_into(pattern, target, acc)) return std::nullopt;
  return from_bindings(acc);
}

std::optional<Substitution> match(const Inequality& pattern, const Inequality& target) {
  std::map<std::string, Term> acc;
  if (!match_into(pattern.lhs, target.lhs, acc) || !match_into(pattern.rhs, target.rhs, acc))
    return std::nullopt;
  return from_bindings(acc);
}

const Term& subterm_at(const Term& s, std::span<const std::size_t> path) {
  const Term* cur = &s;
  for (std::size_t step : path) {
    if (step >= cur->args().size())
      throw SemanticError("invalid path: " + cur->to_string() + " has no argument " +
                          std::to_string(step));
    cur = &cur->args()[step];
  }
  return *cur;
}

Term replace_subterm(const Term& s, std::span<const std::size_t> path, const Term& replacement) {
  if (path.empty()) return replacement;
  if (path.front() >= s.args().size())
    throw SemanticError("invalid path: " + s.to_string() + " has no argument " +
                        std::to_string(path.front()));
  std::vector<Term> args = s.args();
  args[path.front()] = replace_subterm(args[path.front()], path.subspan(1), replacement);
  return Term::apply(s.head(), std::move(args));
}

// ------------------------------------------------------------- TermUniverse

TermUniverse::TermUniverse(Signature signature, std::vector<std::string> variables,
                           std::size_t depth, std::vector<Term> terms)
    : signature_(std::move(signature)),
      variables_(std::move(variables)),
      depth_(depth),
      terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end());
  terms_.erase(std::unique(terms_.begin(), terms_.end()), terms_.end());
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) index_.emplace(terms_[i], i);
}

TermUniverse TermUniverse::generate(const Signature& signature, std::vector<std::string> variables,
                                    std::size_t depth, std::size_t max_terms) {
  if (variables.empty() && !signature.has_constant())
    throw SemanticError("empty term universe: no variables and no constants");

  std::vector<Term> all;
  for (const auto& v : variables) all.push_back(Term::variable(v));
  for (const auto& s : signature.symbols())
    if (s.arity == 0) all.push_back(Term::apply(s.name));

  std::size_t below = 0;  // all[0, below) has depth < level-1
  for (std::size_t level = 1; level <= depth; ++level) {
    const std::size_t upto = all.size();  // all[0, upto) has depth <= level-1
    // Count first so that an explosion is reported instead of attempted.
    double count = static_cast<double>(upto);
    for (const auto& s : signature.symbols()) {
      if (s.arity == 0) continue;
      double full = 1, old = 1;
      for (std::size_t i = 0; i < s.arity; ++i) {
        full *= static_cast<double>(upto);
        old *= static_cast<double>(below);
      }
      count += full - old;
    }
    if (count > static_cast<double>(max_terms))
      throw BudgetExceeded("term universe of depth " + std::to_string(depth) + " exceeds " +
                           std::to_string(max_terms) + " terms");

    for (const auto& s : signature.symbols()) {
      if (s.arity == 0) continue;
      std::vector<std::size_t> pick(s.arity, 0);
      while (true) {
        bool fresh = std::any_of(pick.begin(), pick.end(), [&](std::size_t i) { return i >= below; });
        if (fresh) {
          std::vector<Term> args;
          args.reserve(s.arity);
          for (std::size_t i : pick) args.push_back(all[i]);
          all.push_back(Term::apply(s.name, std::move(args)));
        }
        std::size_t k = 0;
        while (k < s.arity && ++pick[k] == upto) pick[k++] = 0;
        if (k == s.arity) break;
      }
    }
    below = upto;
    if (all.size() == upto) break;  // no function symbols of positive arity
  }
  return TermUniverse(signature, std::move(variables), depth, std::move(all));
}

TermUniverse TermUniverse::with_terms(std::span<const Term> extra) const {
  std::set<Term> closed(terms_.begin(), terms_.end());
  for (const auto& t : extra) collect_subterms(t, closed);
  return TermUniverse(signature_, variables_, depth_, std::vector<Term>(closed.begin(), closed.end()));
}

std::optional<std::size_t> TermUniverse::index_of(const Term& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TermUniverse generate_universe(const Signature& signature, std::vector<std::string> variables,
                               std::size_t depth) {
  return TermUniverse::generate(signature, std::move(variables), depth);
}

// ------------------------------------------------------------------- Theory

void check_term(const Term& t, const Signature& signature, std::span<const std::string> variables) {
  if (t.is_variable()) {
    if (std::find(variables.begin(), variables.end(), t.head()) == variables.end())
      throw SemanticError("undeclared variable '" + t.head() + "'");
    return;
  }
  auto idx = signature.find(t.head());
  if (!idx) throw SemanticError("unknown symbol '" + t.head() + "'");
  const auto& sym = signature.symbols()[*idx];
  if (sym.arity != t.args().size())
    throw SemanticError("symbol '" + sym.name + "' has arity " + std::to_string(sym.arity) +
                        " but is applied to " + std::to_string(t.args().size()) + " arguments");
  for (const auto& a : t.args()) check_term(a, signature, variables);
}

bool Theory::is_variable(std::string_view name) const {
  return std::find(variables.begin(), variables.end(), name) != variables.end();
}

namespace {

SemanticError located(const Token& at, const std::string& what) {
  return SemanticError(std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + what);
}

class TheoryParser {
 public:
  explicit TheoryParser(std::string_view text) : lex_(text) {}

  Theory parse() {
    bool have_lattice = false;
    while (!lex_.at_end()) {
      Token kw = lex_.expect(TokenKind::identifier, "a statement keyword");
      if (kw.text == "lattice") {
        theory_.lattice = parse_lattice_decl(kw);
        if (theory_.assumptions.support_size() != 0)
          throw ParseError("lattice declared after assumptions", kw.line, kw.column);
        theory_.assumptions = make_graded_theory(theory_.lattice);
        have_lattice = true;
      } else if (kw.text == "signature") {
        parse_signature();
      } else if (kw.text == "variables") {
        parse_variables();
      } else if (kw.text == "assume") {
        if (!have_lattice) throw ParseError("'assume' before 'lattice'", kw.line, kw.column);
        parse_assume();
      } else if (kw.text == "depth" || kw.text == "model_size") {
        Token n = lex_.expect(TokenKind::number, "a non-negative integer");
        std::size_t value = std::stoul(n.text);
        (kw.text == "depth" ? theory_.options.depth : theory_.options.model_size) = value;
      } else {
        throw ParseError("unknown statement '" + kw.text + "'", kw.line, kw.column);
      }
    }
    if (!have_lattice) throw ParseError("missing 'lattice' declaration", 0, 0);
    return std::move(theory_);
  }

  Term parse_single_term() {
    Term t = term();
    lex_.expect_end();
    return t;
  }

  Inequality parse_single_inequality() {
    Inequality e = inequality();
    lex_.expect_end();
    return e;
  }

  void use(const Theory& th) {
    theory_.lattice = th.lattice;
    theory_.signature = th.signature;
    theory_.variables = th.variables;
  }

 private:
  ResiduatedLattice parse_lattice_decl(const Token& kw) {
    Token kind = lex_.expect(TokenKind::identifier, "a lattice kind");
    std::string decl = kind.text;
    if (kind.text != "boolean") {
      Token n = lex_.expect(TokenKind::number, "a denominator");
      decl += " " + n.text;
    }
    try {
      return ResiduatedLattice::parse(decl);
    } catch (const SemanticError& e) {
      throw ParseError(e.what(), kw.line, kw.column);
    }
  }

  void parse_signature() {
    lex_.expect(TokenKind::lbrace, "'{'");
    if (lex_.accept(TokenKind::rbrace)) return;
    do {
      Token name = lex_.expect(TokenKind::identifier, "a symbol name");
      lex_.expect(TokenKind::colon, "':'");
      Token arity = lex_.expect(TokenKind::number, "an arity");
      if (theory_.is_variable(name.text))
        throw SemanticError("'" + name.text + "' is already a variable");
      theory_.signature.add(name.text, std::stoul(arity.text));
    } while (lex_.accept(TokenKind::comma));
    lex_.expect(TokenKind::rbrace, "'}'");
  }

  void parse_variables() {
    lex_.expect(TokenKind::lbrace, "'{'");
    if (lex_.accept(TokenKind::rbrace)) return;
    do {
      Token name = lex_.expect(TokenKind::identifier, "a variable name");
      if (theory_.is_variable(name.text) || theory_.signature.find(name.text))
        throw SemanticError("'" + name.text + "' declared twice");
      theory_.variables.push_back(name.text);
    } while (lex_.accept(TokenKind::comma));
    lex_.expect(TokenKind::rbrace, "'}'");
  }

  void parse_assume() {
    Inequality e = inequality();
    lex_.expect(TokenKind::at, "'@'");
    Token d = lex_.next();
    if (d.kind != TokenKind::number && d.kind != TokenKind::degree)
      throw ParseError("expected a degree, got '" + d.text + "'", d.line, d.column);
    try {
      theory_.assumptions.raise(e, theory_.lattice.parse_degree(d.text));
    } catch (const SemanticError& err) {
      throw located(d, err.what());
    }
  }

  Inequality inequality() {
    Term lhs = term();
    lex_.expect(TokenKind::leq, "'<='");
    Term rhs = term();
    return {std::move(lhs), std::move(rhs)};
  }

  Term term() {
    Token name = lex_.expect(TokenKind::identifier, "a term");
    if (theory_.is_variable(name.text)) {
      if (lex_.peek().kind == TokenKind::lparen)
        throw located(name, "variable '" + name.text + "' applied to arguments");
      return Term::variable(name.text);
    }
    auto idx = theory_.signature.find(name.text);
    if (!idx) throw located(name, "unknown symbol '" + name.text + "'");
    std::size_t arity = theory_.signature.symbols()[*idx].arity;
    std::vector<Term> args;
    if (lex_.accept(TokenKind::lparen)) {
      do args.push_back(term());
      while (lex_.accept(TokenKind::comma));
      lex_.expect(TokenKind::rparen, "')'");
    }
    if (args.size() != arity)
      throw located(name, "symbol '" + name.text + "' has arity " + std::to_string(arity) +
                              " but is applied to " + std::to_string(args.size()) + " arguments");
    return Term::apply(name.text, std::move(args));
  }

  Lexer lex_;
  Theory theory_;
};

}  // namespace

Theory parse_theory(std::string_view text) { return TheoryParser(text).parse(); }

Term Theory::parse_term(std::string_view text) const {
  TheoryParser p(text);
  p.use(*this);
  return p.parse_single_term();
}

Inequality Theory::parse_inequality(std::string_view text) const {
  TheoryParser p(text);
  p.use(*this);
  return p.parse_single_inequality();
}

std::string Theory::to_string() const {
  std::ostringstream out;
  out << "lattice " << lattice.name() << "\n";
  out << "signature {";
  for (std::size_t i = 0; i < signature.size(); ++i)
    out << (i ? ", " : " ") << signature.symbols()[i].name << ":" << signature.symbols()[i].arity;
  out << (signature.size() ? " }" : "}") << "\n";
  out << "variables {";
  for (std::size_t i = 0; i < variables.size(); ++i) out << (i ? ", " : " ") << variables[i];
  out << (variables.empty() ? "}" : " }") << "\n";
  if (options.depth) out << "depth " << *options.depth << "\n";
  if (options.model_size) out << "model_size " << *options.model_size << "\n";
  for (const auto& [e, d] : assumptions.entries())
    out << "assume " << e.to_string() << " @ " << d.to_string() << "\n";
  return out.str();
}

}  // namespace fil
