#include "fil/cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

#include "fil/ai.hpp"
#include "fil/engine.hpp"
#include "fil/io.hpp"
#include "fil/semantics.hpp"
#include "fil/syntax.hpp"

namespace fil {

namespace {

constexpr int schema_version = 1;
constexpr std::size_t default_depth = 3;
constexpr std::size_t default_model_size = 3;

struct Session {
  std::optional<std::size_t> depth;
  std::optional<std::size_t> model_size;
  std::optional<std::size_t> min_size;
  std::uint64_t budget = EnumerationOptions::default_budget;
  bool json = false;
  bool proof = false;
  bool strict = false;
  bool dump = false;
  std::optional<std::size_t> cap;
  bool idempotent = false;
};

Json envelope(const std::string& command) {
  Json j;
  j["schema"] = schema_version;
  j["command"] = command;
  return j;
}

bool looks_like_ai_theory(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    } else {
      break;
    }
  }
  return text.substr(i, 10) == "attributes";
}

// Display width in code points; continuation bytes do not count.
std::size_t width_of(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s) w += (c & 0xC0) != 0x80;
  return w;
}

std::string pad(const std::string& s, std::size_t width) {
  const std::size_t w = width_of(s);
  return w >= width ? s + " " : s + std::string(width - w, ' ');
}

class Commands {
 public:
  Commands(const Session& s, std::ostream& out, std::ostream& err) : s_(s), out_(out), err_(err) {}

  // ------------------------------------------------------- theory commands

  int prove(const std::string& path, const std::string& query) {
    const std::string text = read_file(path);
    if (looks_like_ai_theory(text)) return ai_prove(path, query);
    Theory th = parse_theory(text);
    Inequality e = th.parse_inequality(query);
    TermUniverse u = universe(th, {e.lhs, e.rhs});
    ClosureState st = syntactic_closure(u, th.assumptions);
    const Degree d = st.degree(e);
    const TermSyntax syntax = theory_syntax(th);
    std::optional<Proof> proof;
    if (s_.proof && (d.numerator() > 0 || e.lhs == e.rhs)) proof = extract_proof(st, e);

    if (s_.json) {
      Json j = envelope("prove");
      j["query"] = e.to_string();
      j["degree"] = d.to_string();
      j["iterations"] = st.iterations();
      j["universe"] = u.size();
      j["depth"] = u.depth_bound();
      if (s_.proof) j["proof"] = proof ? proof_to_json(*proof, syntax) : Json::array();
      out_ << j.dump(2) << "\n";
      return exit_ok;
    }
    out_ << "query       " << e.to_string() << "\n";
    out_ << "degree      " << d.to_string() << "\n";
    out_ << "iterations  " << st.iterations() << "\n";
    out_ << "universe    " << u.size() << " terms, depth " << u.depth_bound() << "\n";
    if (s_.proof) print_proof(proof, syntax);
    return exit_ok;
  }

  int certify(const std::string& path, const std::string& query) {
    Theory th = parse_theory(read_file(path));
    Inequality e = th.parse_inequality(query);
    TermUniverse u = universe(th, {e.lhs, e.rhs});
    CertifyOptions opts;
    opts.max_model_size = s_.model_size.value_or(th.options.model_size.value_or(default_model_size));
    opts.budget = s_.budget;
    if (opts.max_model_size == 0) throw SemanticError("model size must be positive");
    Certificate c = certify_degree(th.assumptions, e, u, opts);

    if (s_.json) {
      Json j = envelope("certify");
      j["query"] = e.to_string();
      j["lower"] = c.lower.to_string();
      j["upper"] = c.upper ? Json(c.upper->to_string()) : Json();
      j["certified"] = c.certified;
      j["universe"] = u.size();
      j["depth"] = u.depth_bound();
      j["model_size"] = opts.max_model_size;
      j["models"] = c.models;
      if (!c.reason.empty()) j["warning"] = c.reason;
      out_ << j.dump(2) << "\n";
      return exit_ok;
    }
    out_ << "query       " << e.to_string() << "\n";
    out_ << "lower       " << c.lower.to_string() << "\n";
    out_ << "upper       " << (c.upper ? c.upper->to_string() : "unknown") << "\n";
    out_ << "certified   " << (c.certified ? "yes" : "no") << "\n";
    out_ << "models      " << c.models << " (size <= " << opts.max_model_size << ")\n";
    if (!c.reason.empty()) err_ << "warning: " << c.reason << "\n";
    return exit_ok;
  }

  int closure(const std::string& path) {
    const std::string text = read_file(path);
    if (looks_like_ai_theory(text)) return ai_closure_cmd(path);
    Theory th = parse_theory(text);
    TermUniverse u = universe(th, {});
    ClosureState st = syntactic_closure(u, th.assumptions);
    print_closure("closure", st, theory_syntax(th), u.depth_bound());
    return exit_ok;
  }

  // -------------------------------------------------------- model commands

  int model_check(const std::string& path, const std::string& theory_path) {
    FuzzyOrderedAlgebra m = parse_model(read_file(path));
    AlgebraReport r = check_fuzzy_ordered_algebra(m);
    std::optional<bool> model_of;
    std::vector<LawVerdict> laws;
    const bool attribute_signature = m.signature.find(composition_symbol) && m.signature.find(top_symbol);
    if (attribute_signature && !m.is_partial()) laws = ai_law_report(m);
    if (!theory_path.empty()) {
      const std::string text = read_file(theory_path);
      if (looks_like_ai_theory(text)) {
        AiTheory th = parse_ai_theory(text);
        if (!(th.lattice == m.lattice)) throw LatticeMismatch();
        model_of = is_model(m, th.assumptions);
      } else {
        Theory th = parse_theory(text);
        if (!(th.lattice == m.lattice)) throw LatticeMismatch();
        model_of = is_model(m, th.assumptions);
      }
    }
    bool laws_ok = true;
    for (const auto& l : laws) laws_ok &= l.degree.is_one();
    const bool pass = r.ok() && model_of.value_or(true) && laws_ok;

    if (s_.json) {
      Json j = envelope("model check");
      Json conds = Json::array();
      for (const auto* v : {&r.reflexive_antisymmetric, &r.transitive, &r.compatible}) {
        Json c;
        c["condition"] = v->name;
        c["holds"] = v->holds;
        if (!v->holds) c["witness"] = v->witness;
        conds.push_back(c);
      }
      j["conditions"] = conds;
      j["partial"] = m.is_partial();
      if (!laws.empty()) {
        Json lj = Json::array();
        for (const auto& l : laws) lj.push_back({{"law", l.law}, {"degree", l.degree.to_string()}});
        j["laws"] = lj;
      }
      if (model_of) j["model_of_theory"] = *model_of;
      j["pass"] = pass;
      out_ << j.dump(2) << "\n";
    } else {
      for (const auto* v : {&r.reflexive_antisymmetric, &r.transitive, &r.compatible}) {
        out_ << pad(v->name, 26) << (v->holds ? "pass" : "FAIL");
        if (!v->holds) out_ << "  at " << v->witness;
        out_ << "\n";
      }
      out_ << pad("partial", 26) << (m.is_partial() ? "yes" : "no") << "\n";
      for (const auto& l : laws) out_ << pad("law " + l.law, 26) << l.degree.to_string() << "\n";
      if (model_of) out_ << pad("model of theory", 26) << (*model_of ? "yes" : "no") << "\n";
      out_ << (pass ? "pass" : "fail") << "\n";
    }
    return pass ? exit_ok : exit_semantic;
  }

  int model_enumerate(const std::string& path) {
    Theory th = parse_theory(read_file(path));
    EnumerationOptions opts;
    opts.max_size = s_.model_size.value_or(th.options.model_size.value_or(default_model_size));
    opts.min_size = s_.min_size.value_or(opts.max_size);
    opts.budget = s_.budget;
    if (opts.max_size == 0) throw SemanticError("model size must be positive");
    Json dumped = Json::array();
    auto result = enumerate_models(th.signature, th.lattice, th.assumptions, opts, [&](const FuzzyOrderedAlgebra& m) {
      if (s_.dump) dumped.push_back(model_to_json(m));
      return true;
    });
    const bool exhausted = result.status == EnumerationStatus::budget_exceeded;

    if (s_.json) {
      Json j = envelope("model enumerate");
      j["min_size"] = opts.min_size;
      j["max_size"] = opts.max_size;
      Json by = Json::object();
      for (std::size_t n = opts.min_size; n <= opts.max_size; ++n) {
        auto it = result.models_by_size.find(n);
        by[std::to_string(n)] = it == result.models_by_size.end() ? 0 : it->second;
      }
      j["by_size"] = by;
      j["count"] = result.models;
      j["candidates"] = result.candidates;
      j["complete"] = !exhausted;
      if (s_.dump) j["models"] = dumped;
      out_ << j.dump(2) << "\n";
    } else {
      for (std::size_t n = opts.min_size; n <= opts.max_size; ++n) {
        auto it = result.models_by_size.find(n);
        out_ << "size " << n << ": " << (it == result.models_by_size.end() ? 0 : it->second) << "\n";
      }
      out_ << "count " << result.models << "\n";
      if (s_.dump) out_ << dumped.dump(2) << "\n";
    }
    if (exhausted) {
      err_ << "error: enumeration budget exceeded after " << result.candidates << " candidates\n";
      return exit_budget;
    }
    return exit_ok;
  }

  int model_canonical(const std::string& path) {
    Theory th = parse_theory(read_file(path));
    TermUniverse u = universe(th, {});
    ClosureState st = syntactic_closure(u, th.assumptions);
    FuzzyOrderedAlgebra terms = term_algebra(u, th.lattice);
    FactorAlgebra f = factor_algebra(terms, st.degrees());
    const AlgebraReport r = check_fuzzy_ordered_algebra(f.algebra);

    if (s_.json) {
      Json j = envelope("model canonical");
      j["classes"] = f.classes.size();
      j["partial"] = f.algebra.is_partial();
      j["conditions_hold"] = r.ok();
      j["model"] = model_to_json(f.algebra);
      out_ << j.dump(2) << "\n";
      return exit_ok;
    }
    out_ << "universe    " << u.size() << " terms, depth " << u.depth_bound() << "\n";
    out_ << "classes     " << f.classes.size() << "\n";
    for (const auto& name : f.algebra.elements) out_ << "  " << name << "\n";
    out_ << "partial     " << (f.algebra.is_partial() ? "yes" : "no") << "\n";
    out_ << "conditions  " << (r.ok() ? "hold" : "fail") << "\n";
    for (std::size_t a = 0; a < f.algebra.size(); ++a)
      for (std::size_t b = 0; b < f.algebra.size(); ++b)
        if (a != b && f.algebra.order.num(a, b) > 0)
          out_ << "  " << f.algebra.elements[a] << " <= " << f.algebra.elements[b] << "  "
               << f.algebra.order.at(a, b).to_string() << "\n";
    return exit_ok;
  }

  int check_proof_cmd(const std::string& theory_path, const std::string& proof_path) {
    const std::string text = read_file(theory_path);
    const std::string proof_text = read_file(proof_path);
    ProofVerdict v;
    if (looks_like_ai_theory(text)) {
      AiTheory th = load_ai(text);
      Proof p = parse_proof(proof_text, ai_syntax(th), th.lattice);
      v = check_proof(p, ai_proof_context(th, cap(th)), s_.strict);
    } else {
      Theory th = parse_theory(text);
      Proof p = parse_proof(proof_text, theory_syntax(th), th.lattice);
      v = check_proof(p, th.assumptions, s_.strict);
    }
    if (s_.json) {
      Json j = envelope("check-proof");
      j["accepted"] = v.ok;
      j["strict"] = s_.strict;
      if (!v.ok) {
        j["step"] = *v.failed_step;
        j["reason"] = v.message;
      }
      out_ << j.dump(2) << "\n";
    } else if (v.ok) {
      out_ << "accepted\n";
    } else {
      out_ << "rejected at " << v.message << "\n";
    }
    return v.ok ? exit_ok : exit_semantic;
  }

  // ----------------------------------------------------------- ai commands

  int ai_prove(const std::string& path, const std::string& query) {
    AiTheory th = load_ai(read_file(path));
    Inequality e = th.parse_inequality(query);
    const std::size_t m = cap(th);
    ClosureState st = ai_closure(th, m);
    const Degree d = st.degree(e);
    const TermSyntax syntax = ai_syntax(th);
    std::optional<Proof> proof;
    if (s_.proof && (d.numerator() > 0 || st.carrier().locate(e.lhs) == st.carrier().locate(e.rhs)))
      proof = extract_proof(st, e);

    if (s_.json) {
      Json j = envelope("ai prove");
      j["query"] = th.format(e);
      j["degree"] = d.to_string();
      j["iterations"] = st.iterations();
      j["universe"] = st.carrier().size();
      j["cap"] = m;
      if (s_.proof) j["proof"] = proof ? proof_to_json(*proof, syntax) : Json::array();
      out_ << j.dump(2) << "\n";
      return exit_ok;
    }
    out_ << "query       " << th.format(e) << "\n";
    out_ << "degree      " << d.to_string() << "\n";
    out_ << "iterations  " << st.iterations() << "\n";
    out_ << "universe    " << st.carrier().size() << " normal forms, cap " << m << "\n";
    if (s_.proof) print_proof(proof, syntax);
    return exit_ok;
  }

  int ai_closure_cmd(const std::string& path) {
    AiTheory th = load_ai(read_file(path));
    ClosureState st = ai_closure(th, cap(th));
    print_closure("ai closure", st, ai_syntax(th), cap(th));
    return exit_ok;
  }

  int ai_equiv(const std::string& path) {
    AiTheory th = load_ai(read_file(path));
    RuleSystemReport r = compare_rule_systems(th, cap(th));
    if (s_.json) {
      Json j = envelope("ai equiv-systems");
      j["equal"] = r.equal;
      j["cap"] = cap(th);
      if (!r.equal) j["detail"] = r.detail;
      out_ << j.dump(2) << "\n";
    } else {
      out_ << "TraCom = TraAug = Cut: " << (r.equal ? "OK" : "MISMATCH (" + r.detail + ")") << "\n";
    }
    return r.equal ? exit_ok : exit_semantic;
  }

  int lattice_show(const std::string& kind, std::optional<unsigned> n) {
    std::string decl = kind;
    if (n) decl += " " + std::to_string(*n);
    ResiduatedLattice lat = ResiduatedLattice::parse(decl);
    auto els = lat.elements();
    if (s_.json) {
      Json j = envelope("lattice show");
      j["lattice"] = lat.name();
      Json names = Json::array(), mul = Json::array(), imp = Json::array();
      for (const auto& a : els) {
        names.push_back(a.to_string());
        Json mr = Json::array(), ir = Json::array();
        for (const auto& b : els) {
          mr.push_back(lat.otimes(a, b).to_string());
          ir.push_back(lat.residuum(a, b).to_string());
        }
        mul.push_back(mr);
        imp.push_back(ir);
      }
      j["elements"] = names;
      j["otimes"] = mul;
      j["residuum"] = imp;
      out_ << j.dump(2) << "\n";
      return exit_ok;
    }
    std::size_t w = 4;
    for (const auto& a : els) w = std::max(w, a.to_string().size() + 1);
    auto table = [&](const char* title, auto op) {
      out_ << title << "\n" << pad("", w);
      for (const auto& b : els) out_ << pad(b.to_string(), w);
      out_ << "\n";
      for (const auto& a : els) {
        out_ << pad(a.to_string(), w);
        for (const auto& b : els) out_ << pad(op(a, b).to_string(), w);
        out_ << "\n";
      }
    };
    out_ << "lattice " << lat.name() << "\n";
    table("a (x) b", [&](const Degree& a, const Degree& b) { return lat.otimes(a, b); });
    table("a -> b", [&](const Degree& a, const Degree& b) { return lat.residuum(a, b); });
    return exit_ok;
  }

 private:
  TermUniverse universe(const Theory& th, std::vector<Term> extra) {
    const std::size_t depth = s_.depth.value_or(th.options.depth.value_or(default_depth));
    for (const auto& [e, d] : th.assumptions.entries()) {
      extra.push_back(e.lhs);
      extra.push_back(e.rhs);
    }
    return TermUniverse::generate(th.signature, th.variables, depth).with_terms(extra);
  }

  AiTheory load_ai(const std::string& text) const {
    AiTheory th = parse_ai_theory(text);
    if (s_.idempotent) th.mode.idempotent = true;
    if (th.mode.idempotent && !th.mode.commutative)
      throw SemanticError("idempotent mode requires commutativity");
    return th;
  }

  std::size_t cap(const AiTheory& th) const {
    const std::size_t m = s_.cap.value_or(default_cap(th.attributes));
    if (m == 0) throw SemanticError("cap must be positive");
    return m;
  }

  void print_proof(const std::optional<Proof>& proof, const TermSyntax& syntax) {
    if (!proof) {
      out_ << "proof       none (degree 0)\n";
      return;
    }
    out_ << "proof:\n";
    std::size_t w = 0;
    for (const auto& s : proof->steps) w = std::max(w, width_of(syntax.format_inequality(s.ineq)));
    for (std::size_t i = 0; i < proof->steps.size(); ++i) {
      const auto& s = proof->steps[i];
      out_ << "  " << pad(std::to_string(i), 4) << pad(syntax.format_inequality(s.ineq), w + 2)
           << pad(s.degree.to_string(), 6);
      switch (s.kind) {
        case ProofStep::Kind::assumption: out_ << "assumption"; break;
        case ProofStep::Kind::axiom: out_ << "axiom"; break;
        case ProofStep::Kind::rule:
          out_ << rule_name(s.rule);
          for (std::size_t p : s.premises) out_ << " " << p;
          if (s.subst && !s.subst->empty()) {
            out_ << "  {";
            bool first = true;
            for (const auto& [x, t] : s.subst->bindings()) {
              out_ << (first ? "" : ", ") << x << " -> " << syntax.format(t);
              first = false;
            }
            out_ << "}";
          }
          if (s.context) out_ << "  s = " << syntax.format(*s.context);
          break;
      }
      out_ << "\n";
    }
  }

  void print_closure(const std::string& command, const ClosureState& st, const TermSyntax& syntax,
                     std::size_t bound) {
    const auto& c = st.carrier();
    if (s_.json) {
      Json j = envelope(command);
      j["universe"] = c.size();
      j["bound"] = bound;
      j["iterations"] = st.iterations();
      Json pairs = Json::array();
      for (std::size_t a = 0; a < c.size(); ++a)
        for (std::size_t b = 0; b < c.size(); ++b)
          if (a != b && st.degrees().num(a, b) > 0)
            pairs.push_back({{"ineq", syntax.format_inequality({c[a], c[b]})},
                             {"degree", st.degree(a, b).to_string()}});
      j["pairs"] = pairs;
      out_ << j.dump(2) << "\n";
      return;
    }
    out_ << "universe    " << c.size() << " terms\n";
    out_ << "iterations  " << st.iterations() << "\n";
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = 0; b < c.size(); ++b)
        if (a != b && st.degrees().num(a, b) > 0)
          out_ << "  " << syntax.format_inequality({c[a], c[b]}) << "  " << st.degree(a, b).to_string() << "\n";
  }

  const Session& s_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graded inequational logic over finite residuated chains", "fil"};
  app.require_subcommand(1);
  Session s;

  std::string theory, query, path, kind;
  std::optional<unsigned> denominator;

  auto depth = [&](CLI::App* c) { c->add_option("--depth", s.depth, "Term universe depth bound (default 3)"); };
  auto model_size = [&](CLI::App* c) {
    c->add_option("--model-size", s.model_size, "Largest model size searched (default 3)");
    c->add_option("--budget", s.budget, "Model search node budget");
  };
  auto json = [&](CLI::App* c) { c->add_flag("--json", s.json, "Machine-readable output"); };
  auto ai_flags = [&](CLI::App* c) {
    c->add_option("--cap", s.cap, "Total multiplicity cap of the normal-form universe (default |Y|+1)");
    c->add_flag("--idempotent", s.idempotent, "Add the idempotence laws");
  };

  auto* prove = app.add_subcommand("prove", "Provability degree of a query");
  prove->add_option("theory", theory, "Theory file")->required();
  prove->add_option("query", query, "Inequality, e.g. \"c <= g(c)\"")->required();
  prove->add_flag("--proof", s.proof, "Print an annotated proof");
  depth(prove);
  json(prove);
  ai_flags(prove);

  auto* certify = app.add_subcommand("certify", "Sandwich a query between proofs and bounded models");
  certify->add_option("theory", theory, "Theory file")->required();
  certify->add_option("query", query, "Inequality")->required();
  depth(certify);
  model_size(certify);
  json(certify);

  auto* closure = app.add_subcommand("closure", "Print the syntactic closure");
  closure->add_option("theory", theory, "Theory file")->required();
  depth(closure);
  json(closure);
  ai_flags(closure);

  auto* model = app.add_subcommand("model", "Finite algebras with an L-order");
  model->require_subcommand(1);
  auto* check = model->add_subcommand("check", "Check a model file");
  check->add_option("model", path, "Model JSON file")->required();
  check->add_option("theory", theory, "Optional theory the model should satisfy");
  json(check);
  auto* enumerate = model->add_subcommand("enumerate", "Count the models of a theory");
  enumerate->add_option("theory", theory, "Theory file")->required();
  model_size(enumerate);
  enumerate->add_option("--min-size", s.min_size, "Smallest size searched (default: the model size)");
  enumerate->add_flag("--dump", s.dump, "Print every model");
  json(enumerate);
  auto* canonical = model->add_subcommand("canonical", "Factor of the term algebra by the closure");
  canonical->add_option("theory", theory, "Theory file")->required();
  depth(canonical);
  json(canonical);

  auto* check_proof = app.add_subcommand("check-proof", "Verify an annotated proof");
  check_proof->add_option("theory", theory, "Theory file")->required();
  check_proof->add_option("proof", path, "Proof JSON file")->required();
  check_proof->add_flag("--strict", s.strict, "Assumption steps must carry exactly the assumed degree");
  json(check_proof);
  ai_flags(check_proof);

  auto* ai = app.add_subcommand("ai", "Graded attribute implications");
  ai->require_subcommand(1);
  auto* ai_prove = ai->add_subcommand("prove", "Provability degree of an attribute implication");
  ai_prove->add_option("theory", theory, "Attribute theory file")->required();
  ai_prove->add_option("query", query, "Implication, e.g. \"p q <= r\"")->required();
  ai_prove->add_flag("--proof", s.proof, "Print an annotated proof");
  ai_flags(ai_prove);
  json(ai_prove);
  auto* ai_closure = ai->add_subcommand("closure", "Closure over the normal-form universe");
  ai_closure->add_option("theory", theory, "Attribute theory file")->required();
  ai_flags(ai_closure);
  json(ai_closure);
  auto* ai_equiv = ai->add_subcommand("equiv-systems", "Compare the TraCom, TraAug and Cut closures");
  ai_equiv->add_option("theory", theory, "Attribute theory file")->required();
  ai_flags(ai_equiv);
  json(ai_equiv);

  auto* lattice = app.add_subcommand("lattice", "Residuated chains");
  lattice->require_subcommand(1);
  auto* show = lattice->add_subcommand("show", "Print the product and residuum tables");
  show->add_option("kind", kind, "boolean, lukasiewicz or goedel")->required();
  show->add_option("n", denominator, "Denominator of the chain");
  json(show);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_parse;
  }

  Commands cmd(s, out, err);
  try {
    if (*prove) return cmd.prove(theory, query);
    if (*certify) return cmd.certify(theory, query);
    if (*closure) return cmd.closure(theory);
    if (*check) return cmd.model_check(path, theory);
    if (*enumerate) return cmd.model_enumerate(theory);
    if (*canonical) return cmd.model_canonical(theory);
    if (*check_proof) return cmd.check_proof_cmd(theory, path);
    if (*ai_prove) return cmd.ai_prove(theory, query);
    if (*ai_closure) return cmd.ai_closure_cmd(theory);
    if (*ai_equiv) return cmd.ai_equiv(theory);
    if (*show) return cmd.lattice_show(kind, denominator);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_parse;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return exit_budget;
  } catch (const SemanticError& e) {
    err << "error: " << e.what() << "\n";
    return exit_semantic;
  }
  return exit_parse;
}

}  // namespace fil
