#include "fil/semantics.hpp"

#include <algorithm>

namespace fil {

namespace {

std::string tuple_string(const FuzzyOrderedAlgebra& m, std::span<const std::size_t> args) {
  std::string out = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += m.elements[args[i]];
  }
  return out + ")";
}

// Decodes a mixed-radix tuple index into argument elements.
void decode_tuple(std::size_t index, std::size_t base, std::vector<std::size_t>& args) {
  for (std::size_t i = args.size(); i-- > 0;) {
    args[i] = index % base;
    index /= base;
  }
}

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// A term compiled against a signature and a slot assignment for variables,
// in postfix order.
class CompiledTerm {
 public:
  CompiledTerm(const Term& t, const Signature& signature,
               const std::map<std::string, std::size_t>& slots) {
    compile(t, signature, slots);
  }

  // Returns false when a partial table has no entry on the way.
  bool eval(const FuzzyOrderedAlgebra& m, std::span<const std::size_t> valuation,
            std::vector<std::size_t>& stack, std::size_t& out) const {
    stack.clear();
    for (const auto& op : code_) {
      if (op.variable) {
        stack.push_back(valuation[op.index]);
        continue;
      }
      const auto& table = m.ops[op.index];
      std::size_t idx = 0;
      const std::size_t base = m.size();
      for (std::size_t i = stack.size() - op.arity; i < stack.size(); ++i) idx = idx * base + stack[i];
      stack.resize(stack.size() - op.arity);
      std::int32_t r = table.entries[idx];
      if (r == OperationTable::undefined) return false;
      stack.push_back(static_cast<std::size_t>(r));
    }
    out = stack.back();
    return true;
  }

 private:
  struct Op {
    bool variable;
    std::size_t index;
    std::size_t arity;
  };

  void compile(const Term& t, const Signature& signature,
               const std::map<std::string, std::size_t>& slots) {
    if (t.is_variable()) {
      auto it = slots.find(t.head());
      if (it == slots.end()) throw SemanticError("unbound variable '" + t.head() + "'");
      code_.push_back({true, it->second, 0});
      return;
    }
    for (const auto& a : t.args()) compile(a, signature, slots);
    auto sym = signature.find(t.head());
    if (!sym) throw SemanticError("unknown symbol '" + t.head() + "'");
    if (signature.symbols()[*sym].arity != t.args().size())
      throw SemanticError("arity mismatch for '" + t.head() + "'");
    code_.push_back({false, *sym, t.args().size()});
  }

  std::vector<Op> code_;
};

// An inequality compiled for repeated evaluation over all valuations of its
// own variables.
class CompiledInequality {
 public:
  CompiledInequality(const Inequality& e, const Signature& signature) {
    std::set<std::string> vars = variables_of(e.lhs);
    for (const auto& v : variables_of(e.rhs)) vars.insert(v);
    std::map<std::string, std::size_t> slots;
    for (const auto& v : vars) slots.emplace(v, slots.size());
    arity_ = slots.size();
    lhs_.emplace(e.lhs, signature, slots);
    rhs_.emplace(e.rhs, signature, slots);
  }

  // Infimum over valuations, as a numerator. Throws EvaluationOutOfBounds
  // for partial algebras lacking an entry.
  unsigned degree(const FuzzyOrderedAlgebra& m) const {
    const std::size_t size = m.size();
    std::vector<std::size_t> val(arity_, 0), stack;
    unsigned best = m.lattice.denominator();
    while (true) {
      std::size_t l = 0, r = 0;
      if (!lhs_->eval(m, val, stack, l) || !rhs_->eval(m, val, stack, r))
        throw EvaluationOutOfBounds("evaluation out of bounds: undefined operation entry");
      best = std::min(best, m.order.num(l, r));
      if (best == 0) return 0;
      std::size_t k = 0;
      while (k < arity_ && ++val[k] == size) val[k++] = 0;
      if (k == arity_) break;
    }
    return best;
  }

 private:
  std::size_t arity_ = 0;
  std::optional<CompiledTerm> lhs_;
  std::optional<CompiledTerm> rhs_;
};

}  // namespace

// ------------------------------------------------------- FuzzyOrderedAlgebra

FuzzyOrderedAlgebra::FuzzyOrderedAlgebra(ResiduatedLattice lattice_, Signature signature_,
                                         std::vector<std::string> elements_)
    : lattice(lattice_),
      signature(std::move(signature_)),
      elements(std::move(elements_)),
      order(DegreeMatrix::identity(lattice_, elements.size())) {
  if (elements.empty()) throw SemanticError("an algebra needs a non-empty universe");
  for (const auto& s : signature.symbols()) {
    OperationTable t;
    t.arity = s.arity;
    t.entries.assign(power(elements.size(), s.arity), OperationTable::undefined);
    ops.push_back(std::move(t));
  }
}

std::optional<std::size_t> FuzzyOrderedAlgebra::element(std::string_view name) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == name) return i;
  return std::nullopt;
}

std::size_t FuzzyOrderedAlgebra::tuple_index(std::span<const std::size_t> args) const {
  std::size_t idx = 0;
  for (std::size_t a : args) idx = idx * size() + a;
  return idx;
}

std::optional<std::size_t> FuzzyOrderedAlgebra::apply(std::size_t symbol,
                                                      std::span<const std::size_t> args) const {
  std::int32_t r = ops.at(symbol).entries.at(tuple_index(args));
  if (r == OperationTable::undefined) return std::nullopt;
  return static_cast<std::size_t>(r);
}

void FuzzyOrderedAlgebra::define(std::size_t symbol, std::span<const std::size_t> args,
                                 std::size_t result) {
  auto& table = ops.at(symbol);
  if (args.size() != table.arity) throw SemanticError("arity mismatch in operation table");
  for (std::size_t a : args)
    if (a >= size()) throw SemanticError("element index out of range");
  if (result >= size()) throw SemanticError("element index out of range");
  table.entries[tuple_index(args)] = static_cast<std::int32_t>(result);
}

bool FuzzyOrderedAlgebra::is_partial() const {
  for (const auto& t : ops)
    if (std::find(t.entries.begin(), t.entries.end(), OperationTable::undefined) != t.entries.end())
      return true;
  return false;
}

// ----------------------------------------------------------------- checks

namespace {

// Shared by (2)/(3) and by (8)/(9): r is ⊗-transitive and compatible with
// the defined entries of m.
void check_transitive(const FuzzyOrderedAlgebra& m, const DegreeMatrix& r, ConditionVerdict& v) {
  const auto& lat = m.lattice;
  const std::size_t n = m.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (lat.mul(r.num(a, b), r.num(b, c)) > r.num(a, c)) {
          v.holds = false;
          v.witness = "(" + m.elements[a] + ", " + m.elements[b] + ", " + m.elements[c] + ")";
          return;
        }
}

void check_compatible(const FuzzyOrderedAlgebra& m, const DegreeMatrix& r, ConditionVerdict& v) {
  const auto& lat = m.lattice;
  const std::size_t n = m.size();
  for (std::size_t s = 0; s < m.ops.size(); ++s) {
    const auto& table = m.ops[s];
    if (table.arity == 0) continue;
    std::vector<std::size_t> xs(table.arity), ys(table.arity);
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
      if (table.entries[i] == OperationTable::undefined) continue;
      decode_tuple(i, n, xs);
      for (std::size_t j = 0; j < table.entries.size(); ++j) {
        if (i == j || table.entries[j] == OperationTable::undefined) continue;
        decode_tuple(j, n, ys);
        unsigned lhs = lat.denominator();
        for (std::size_t k = 0; k < table.arity && lhs > 0; ++k) lhs = lat.mul(lhs, r.num(xs[k], ys[k]));
        if (lhs > r.num(static_cast<std::size_t>(table.entries[i]),
                        static_cast<std::size_t>(table.entries[j]))) {
          v.holds = false;
          v.witness = m.signature.symbols()[s].name + " at " + tuple_string(m, xs) + " vs " +
                      tuple_string(m, ys);
          return;
        }
      }
    }
  }
}

}  // namespace

AlgebraReport check_fuzzy_ordered_algebra(const FuzzyOrderedAlgebra& m) {
  AlgebraReport report;
  if (!(m.order.lattice() == m.lattice) || m.order.size() != m.size() ||
      m.ops.size() != m.signature.size())
    throw SemanticError("malformed algebra: order or tables do not match the universe");
  for (std::size_t s = 0; s < m.ops.size(); ++s) {
    const auto& t = m.ops[s];
    if (t.arity != m.signature.symbols()[s].arity || t.entries.size() != power(m.size(), t.arity))
      throw SemanticError("malformed table for '" + m.signature.symbols()[s].name + "'");
    for (auto e : t.entries)
      if (e != OperationTable::undefined && (e < 0 || static_cast<std::size_t>(e) >= m.size()))
        throw SemanticError("malformed table for '" + m.signature.symbols()[s].name + "'");
  }

  const unsigned top = m.lattice.denominator();
  for (std::size_t a = 0; a < m.size() && report.reflexive_antisymmetric.holds; ++a)
    for (std::size_t b = 0; b < m.size(); ++b) {
      bool both_one = m.order.num(a, b) == top && m.order.num(b, a) == top;
      if (both_one != (a == b)) {
        report.reflexive_antisymmetric.holds = false;
        report.reflexive_antisymmetric.witness = "(" + m.elements[a] + ", " + m.elements[b] + ")";
        break;
      }
    }
  check_transitive(m, m.order, report.transitive);
  check_compatible(m, m.order, report.compatible);
  return report;
}

PreorderReport check_compatible_preorder(const FuzzyOrderedAlgebra& m, const DegreeMatrix& q) {
  if (q.size() != m.size()) throw SemanticError("preorder and algebra have different universes");
  if (!(q.lattice() == m.lattice)) throw LatticeMismatch();
  PreorderReport report;
  for (std::size_t a = 0; a < m.size() && report.contains_order.holds; ++a)
    for (std::size_t b = 0; b < m.size(); ++b)
      if (m.order.num(a, b) > q.num(a, b)) {
        report.contains_order.holds = false;
        report.contains_order.witness = "(" + m.elements[a] + ", " + m.elements[b] + ")";
        break;
      }
  check_transitive(m, q, report.transitive);
  check_compatible(m, q, report.compatible);
  return report;
}

// -------------------------------------------------------------- evaluation

std::size_t eval_term(const FuzzyOrderedAlgebra& m, const Valuation& v, const Term& t) {
  if (t.is_variable()) {
    auto it = v.find(t.head());
    if (it == v.end()) throw SemanticError("valuation does not bind '" + t.head() + "'");
    if (it->second >= m.size()) throw SemanticError("valuation maps outside the universe");
    return it->second;
  }
  auto sym = m.signature.find(t.head());
  if (!sym) throw SemanticError("unknown symbol '" + t.head() + "'");
  if (m.signature.symbols()[*sym].arity != t.args().size())
    throw SemanticError("arity mismatch for '" + t.head() + "'");
  std::vector<std::size_t> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(eval_term(m, v, a));
  auto r = m.apply(*sym, args);
  if (!r)
    throw EvaluationOutOfBounds("evaluation out of bounds: " + t.head() + tuple_string(m, args) +
                                " is undefined");
  return *r;
}

Degree truth_degree_at(const FuzzyOrderedAlgebra& m, const Valuation& v, const Inequality& e) {
  return m.order.at(eval_term(m, v, e.lhs), eval_term(m, v, e.rhs));
}

Degree truth_degree(const FuzzyOrderedAlgebra& m, const Inequality& e) {
  return m.lattice.degree(CompiledInequality(e, m.signature).degree(m));
}

DegreeMatrix model_preorder(const FuzzyOrderedAlgebra& m, const TermUniverse& u) {
  const auto& vars = u.variables();
  std::map<std::string, std::size_t> slots;
  for (const auto& v : vars) slots.emplace(v, slots.size());
  std::vector<CompiledTerm> code;
  code.reserve(u.size());
  for (const auto& t : u.terms()) code.emplace_back(t, m.signature, slots);

  DegreeMatrix q(m.lattice, u.size(), m.lattice.denominator());
  std::vector<std::size_t> val(vars.size(), 0), value(u.size()), stack;
  while (true) {
    for (std::size_t i = 0; i < u.size(); ++i)
      if (!code[i].eval(m, val, stack, value[i]))
        throw EvaluationOutOfBounds("evaluation out of bounds: " + u[i].to_string());
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < u.size(); ++j)
        q.set_num(i, j, std::min(q.num(i, j), m.order.num(value[i], value[j])));
    std::size_t k = 0;
    while (k < val.size() && ++val[k] == m.size()) val[k++] = 0;
    if (k == val.size()) break;
  }
  return q;
}

bool is_model(const FuzzyOrderedAlgebra& m, const GradedTheory& sigma) {
  if (!(sigma.lattice() == m.lattice)) throw LatticeMismatch();
  for (const auto& [e, d] : sigma.entries())
    if (CompiledInequality(e, m.signature).degree(m) < d.numerator()) return false;
  return true;
}

// -------------------------------------------------------------- enumeration

namespace {

class ModelSearch {
 public:
  ModelSearch(const Signature& signature, const ResiduatedLattice& lattice,
              const GradedTheory& sigma, const EnumerationOptions& options,
              const std::function<bool(const FuzzyOrderedAlgebra&)>& visit)
      : signature_(signature), lattice_(lattice), options_(options), visit_(visit) {
    if (!(sigma.lattice() == lattice)) throw LatticeMismatch();
    if (options.min_size == 0 || options.max_size < options.min_size)
      throw SemanticError("model sizes must satisfy 1 <= min <= max");
    for (const auto& [e, d] : sigma.entries()) {
      assumptions_.emplace_back(e, signature);
      required_.push_back(d.numerator());
    }
  }

  EnumerationResult run() {
    for (std::size_t size = options_.min_size; size <= options_.max_size; ++size) {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < size; ++i) names.push_back("a" + std::to_string(i));
      algebra_.emplace(lattice_, signature_, std::move(names));
      size_ = size;
      prepare_cells();
      if (!search_order(0)) break;
    }
    return result_;
  }

 private:
  struct Entry {
    std::size_t symbol;
    std::size_t tuple;
  };

  void prepare_cells() {
    cells_.clear();
    position_.assign(size_ * size_, 0);
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = 0; j < size_; ++j)
        if (i != j) {
          position_[i * size_ + j] = cells_.size();
          cells_.emplace_back(i, j);
        }
    entries_.clear();
    args_.clear();
    for (std::size_t s = 0; s < signature_.size(); ++s) {
      const std::size_t arity = signature_.symbols()[s].arity;
      const std::size_t count = power(size_, arity);
      for (std::size_t t = 0; t < count; ++t) {
        entries_.push_back({s, t});
        std::vector<std::size_t> a(arity);
        decode_tuple(t, size_, a);
        args_.push_back(std::move(a));
      }
    }
  }

  bool tick() {
    if (++result_.candidates > options_.budget) {
      result_.status = EnumerationStatus::budget_exceeded;
      return false;
    }
    return true;
  }

  bool assigned(std::size_t a, std::size_t b, std::size_t upto) const {
    return a == b || position_[a * size_ + b] <= upto;
  }

  bool order_consistent(std::size_t c) const {
    const auto [i, j] = cells_[c];
    const auto& o = algebra_->order;
    const unsigned top = lattice_.denominator();
    if (assigned(j, i, c) && o.num(i, j) == top && o.num(j, i) == top) return false;
    for (std::size_t k = 0; k < size_; ++k) {
      if (assigned(j, k, c) && assigned(i, k, c) && lattice_.mul(o.num(i, j), o.num(j, k)) > o.num(i, k))
        return false;
      if (assigned(k, i, c) && assigned(k, j, c) && lattice_.mul(o.num(k, i), o.num(i, j)) > o.num(k, j))
        return false;
      if (assigned(i, k, c) && assigned(k, j, c) && lattice_.mul(o.num(i, k), o.num(k, j)) > o.num(i, j))
        return false;
    }
    return true;
  }

  // Returns false to abort the whole search.
  bool search_order(std::size_t c) {
    if (c == cells_.size()) return search_ops(0);
    const auto [i, j] = cells_[c];
    for (unsigned v = 0; v <= lattice_.denominator(); ++v) {
      if (!tick()) return false;
      algebra_->order.set_num(i, j, v);
      if (order_consistent(c) && !search_order(c + 1)) return false;
    }
    return true;
  }

  bool entry_consistent(std::size_t e) const {
    const auto& m = *algebra_;
    const auto [s, t] = entries_[e];
    const auto& table = m.ops[s];
    if (table.arity == 0) return true;
    const auto& xs = args_[e];
    const std::size_t first = e - t;  // entries of symbol s start here
    for (std::size_t f = first; f < e; ++f) {
      const auto& ys = args_[f];
      unsigned fwd = lattice_.denominator(), bwd = lattice_.denominator();
      for (std::size_t k = 0; k < table.arity; ++k) {
        fwd = lattice_.mul(fwd, m.order.num(xs[k], ys[k]));
        bwd = lattice_.mul(bwd, m.order.num(ys[k], xs[k]));
      }
      auto rx = static_cast<std::size_t>(table.entries[t]);
      auto ry = static_cast<std::size_t>(table.entries[entries_[f].tuple]);
      if (fwd > m.order.num(rx, ry) || bwd > m.order.num(ry, rx)) return false;
    }
    return true;
  }

  bool search_ops(std::size_t e) {
    if (e == entries_.size()) return leaf();
    const auto [s, t] = entries_[e];
    for (std::size_t v = 0; v < size_; ++v) {
      if (!tick()) return false;
      algebra_->ops[s].entries[t] = static_cast<std::int32_t>(v);
      if (entry_consistent(e) && !search_ops(e + 1)) return false;
    }
    algebra_->ops[s].entries[t] = OperationTable::undefined;
    return true;
  }

  bool leaf() {
    for (std::size_t i = 0; i < assumptions_.size(); ++i)
      if (assumptions_[i].degree(*algebra_) < required_[i]) return true;
    ++result_.models;
    ++result_.models_by_size[size_];
    if (!visit_(*algebra_)) {
      result_.status = EnumerationStatus::stopped;
      return false;
    }
    return true;
  }

  const Signature& signature_;
  ResiduatedLattice lattice_;
  EnumerationOptions options_;
  const std::function<bool(const FuzzyOrderedAlgebra&)>& visit_;
  std::vector<CompiledInequality> assumptions_;
  std::vector<unsigned> required_;

  std::optional<FuzzyOrderedAlgebra> algebra_;
  std::size_t size_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> cells_;
  std::vector<std::size_t> position_;
  std::vector<Entry> entries_;
  std::vector<std::vector<std::size_t>> args_;
  EnumerationResult result_;
};

}  // namespace

EnumerationResult enumerate_models(const Signature& signature, const ResiduatedLattice& lattice,
                                   const GradedTheory& sigma, const EnumerationOptions& options,
                                   const std::function<bool(const FuzzyOrderedAlgebra&)>& visit) {
  return ModelSearch(signature, lattice, sigma, options, visit).run();
}

BoundedDegree semantic_degree_bounded(const Signature& signature, const ResiduatedLattice& lattice,
                                      const GradedTheory& sigma, const Inequality& e,
                                      const EnumerationOptions& options,
                                      std::optional<Degree> stop_at) {
  CompiledInequality query(e, signature);
  unsigned best = lattice.denominator();
  const unsigned floor = stop_at ? stop_at->numerator() : 0;
  auto result = enumerate_models(signature, lattice, sigma, options, [&](const FuzzyOrderedAlgebra& m) {
    best = std::min(best, query.degree(m));
    return best > floor;
  });
  BoundedDegree out;
  out.degree = lattice.degree(best);
  out.models = result.models;
  out.candidates = result.candidates;
  out.no_model = result.models == 0;
  // Reaching the floor early is a complete answer when the floor is a
  // sound lower bound of the infimum.
  out.status = result.status == EnumerationStatus::stopped ? EnumerationStatus::complete : result.status;
  return out;
}

BoundedClosure semantic_closure_bounded(const Signature& signature,
                                        const ResiduatedLattice& lattice,
                                        const GradedTheory& sigma, const TermUniverse& u,
                                        const EnumerationOptions& options) {
  BoundedClosure out{DegreeMatrix(lattice, u.size(), lattice.denominator())};
  auto result = enumerate_models(signature, lattice, sigma, options, [&](const FuzzyOrderedAlgebra& m) {
    DegreeMatrix q = model_preorder(m, u);
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < u.size(); ++j)
        out.degrees.set_num(i, j, std::min(out.degrees.num(i, j), q.num(i, j)));
    return true;
  });
  out.status = result.status;
  out.models = result.models;
  out.no_model = result.models == 0;
  return out;
}

// ------------------------------------------------------------ homomorphisms

HomomorphismReport check_homomorphism(std::span<const std::size_t> h, const FuzzyOrderedAlgebra& m,
                                      const FuzzyOrderedAlgebra& n) {
  HomomorphismReport report;
  auto fail = [&](std::string why) {
    report.ok = false;
    report.witness = std::move(why);
    return report;
  };
  if (h.size() != m.size()) return fail("map is not total on the domain");
  for (std::size_t a : h)
    if (a >= n.size()) return fail("map leaves the codomain");
  if (!(m.lattice == n.lattice)) throw LatticeMismatch();

  for (std::size_t s = 0; s < m.ops.size(); ++s) {
    const auto& name = m.signature.symbols()[s].name;
    auto ns = n.signature.find(name);
    if (!ns) return fail("codomain lacks symbol '" + name + "'");
    const auto& table = m.ops[s];
    std::vector<std::size_t> xs(table.arity), hx(table.arity);
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
      if (table.entries[i] == OperationTable::undefined) continue;
      decode_tuple(i, m.size(), xs);
      for (std::size_t k = 0; k < xs.size(); ++k) hx[k] = h[xs[k]];
      auto image = n.apply(*ns, hx);
      if (!image || *image != h[static_cast<std::size_t>(table.entries[i])])
        return fail(name + " does not commute at " + tuple_string(m, xs));
    }
  }
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = 0; b < m.size(); ++b)
      if (m.order.num(a, b) > n.order.num(h[a], h[b]))
        return fail("order not preserved at (" + m.elements[a] + ", " + m.elements[b] + ")");
  return report;
}

DegreeMatrix preorder_from_hom(std::span<const std::size_t> h, const FuzzyOrderedAlgebra& m,
                               const FuzzyOrderedAlgebra& n) {
  auto report = check_homomorphism(h, m, n);
  if (!report.ok) throw SemanticError("not a homomorphism: " + report.witness);
  std::vector<bool> hit(n.size(), false);
  for (std::size_t a : h) hit[a] = true;
  if (std::find(hit.begin(), hit.end(), false) != hit.end())
    throw SemanticError("homomorphism is not surjective");
  DegreeMatrix q(m.lattice, m.size());
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = 0; b < m.size(); ++b) q.set_num(a, b, n.order.num(h[a], h[b]));
  return q;
}

// ------------------------------------------------------------------ factors

FactorAlgebra factor_algebra(const FuzzyOrderedAlgebra& m, const DegreeMatrix& q) {
  auto report = check_compatible_preorder(m, q);
  for (const auto* v : {&report.contains_order, &report.transitive, &report.compatible})
    if (!v->holds) throw SemanticError("not a compatible L-preorder: " + v->name + " fails at " + v->witness);

  const unsigned top = m.lattice.denominator();
  std::vector<std::size_t> cls(m.size(), m.size());
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t a = 0; a < m.size(); ++a) {
    if (cls[a] != m.size()) continue;
    std::vector<std::size_t> members;
    for (std::size_t b = a; b < m.size(); ++b)
      if (q.num(a, b) == top && q.num(b, a) == top) {
        cls[b] = classes.size();
        members.push_back(b);
      }
    classes.push_back(std::move(members));
  }

  std::vector<std::string> names;
  for (const auto& members : classes) {
    std::string name = "[";
    for (std::size_t i = 0; i < members.size(); ++i) name += (i ? ", " : "") + m.elements[members[i]];
    names.push_back(name + "]");
  }
  FuzzyOrderedAlgebra f(m.lattice, m.signature, std::move(names));
  for (std::size_t x = 0; x < classes.size(); ++x)
    for (std::size_t y = 0; y < classes.size(); ++y)
      f.order.set_num(x, y, q.num(classes[x].front(), classes[y].front()));

  for (std::size_t s = 0; s < m.ops.size(); ++s) {
    const auto& table = m.ops[s];
    std::vector<std::size_t> xs(table.arity), cx(table.arity);
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
      if (table.entries[i] == OperationTable::undefined) continue;
      decode_tuple(i, m.size(), xs);
      for (std::size_t k = 0; k < xs.size(); ++k) cx[k] = cls[xs[k]];
      const std::size_t r = cls[static_cast<std::size_t>(table.entries[i])];
      auto& slot = f.ops[s].entries[f.tuple_index(cx)];
      if (slot != OperationTable::undefined && static_cast<std::size_t>(slot) != r)
        throw SemanticError("factor operation is not well defined for '" +
                            m.signature.symbols()[s].name + "'");
      slot = static_cast<std::int32_t>(r);
    }
  }
  return FactorAlgebra{std::move(f), std::move(cls), std::move(classes)};
}

FuzzyOrderedAlgebra term_algebra(const TermUniverse& u, const ResiduatedLattice& lattice) {
  std::vector<std::string> names;
  names.reserve(u.size());
  for (const auto& t : u.terms()) names.push_back(t.to_string());
  FuzzyOrderedAlgebra m(lattice, u.signature(), std::move(names));
  std::vector<std::size_t> args;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Term& t = u[i];
    if (t.is_variable()) continue;
    auto sym = u.signature().find(t.head());
    if (!sym) throw SemanticError("term '" + t.to_string() + "' uses an unknown symbol");
    args.clear();
    for (const auto& a : t.args()) args.push_back(*u.index_of(a));
    m.define(*sym, args, i);
  }
  return m;
}

}  // namespace fil
