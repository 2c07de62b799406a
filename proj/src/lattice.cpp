#include "fil/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace fil {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_unsigned(std::string_view s, unsigned& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::string Degree::to_string() const {
  if (k_ == 0) return "0";
  if (k_ == n_) return "1";
  return std::to_string(k_) + "/" + std::to_string(n_);
}

std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
  if (!a.same_lattice(b)) throw LatticeMismatch();
  return a.k_ <=> b.k_;
}

ResiduatedLattice ResiduatedLattice::lukasiewicz(unsigned n) {
  if (n == 0 || n > max_denominator)
    throw SemanticError("chain denominator must be in 1.." + std::to_string(max_denominator));
  return ResiduatedLattice(LatticeKind::lukasiewicz, n);
}

ResiduatedLattice ResiduatedLattice::goedel(unsigned n) {
  if (n == 0 || n > max_denominator)
    throw SemanticError("chain denominator must be in 1.." + std::to_string(max_denominator));
  return ResiduatedLattice(LatticeKind::goedel, n);
}

ResiduatedLattice ResiduatedLattice::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string kind, count, extra;
  in >> kind >> count >> extra;
  if (!extra.empty()) throw SemanticError("unexpected '" + extra + "' in lattice declaration");
  if (kind == "boolean") {
    if (!count.empty()) throw SemanticError("the boolean lattice takes no denominator");
    return boolean();
  }
  unsigned n = 0;
  if (kind == "lukasiewicz" || kind == "goedel") {
    if (!parse_unsigned(count, n))
      throw SemanticError("lattice '" + kind + "' needs a positive denominator");
    return kind == "goedel" ? goedel(n) : lukasiewicz(n);
  }
  throw SemanticError("unknown lattice '" + kind + "' (expected boolean, lukasiewicz or goedel)");
}

std::string ResiduatedLattice::name() const {
  switch (kind_) {
    case LatticeKind::boolean: return "boolean";
    case LatticeKind::lukasiewicz: return "lukasiewicz " + std::to_string(n_);
    case LatticeKind::goedel: return "goedel " + std::to_string(n_);
  }
  return "?";
}

Degree ResiduatedLattice::degree(unsigned k) const {
  if (k > n_)
    throw SemanticError(std::to_string(k) + "/" + std::to_string(n_) + " is not a degree of " +
                        name());
  return Degree(kind_, k, n_);
}

std::vector<Degree> ResiduatedLattice::elements() const {
  std::vector<Degree> out;
  out.reserve(size());
  for (unsigned k = 0; k <= n_; ++k) out.push_back(Degree(kind_, k, n_));
  return out;
}

bool ResiduatedLattice::contains(const Degree& d) const noexcept {
  return d.kind() == kind_ && d.denominator() == n_ && d.numerator() <= n_;
}

Degree ResiduatedLattice::parse_degree(std::string_view text) const {
  text = trim(text);
  unsigned k = 0;
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (text == "0") return zero();
    if (text == "1") return one();
    throw SemanticError("bad degree '" + std::string(text) + "' (expected k/" +
                        std::to_string(n_) + ", 0 or 1)");
  }
  unsigned n = 0;
  if (!parse_unsigned(trim(text.substr(0, slash)), k) ||
      !parse_unsigned(trim(text.substr(slash + 1)), n))
    throw SemanticError("bad degree '" + std::string(text) + "'");
  if (n != n_)
    throw SemanticError("degree '" + std::string(text) + "' does not use the denominator " +
                        std::to_string(n_) + " of " + name());
  return degree(k);
}

void ResiduatedLattice::require(const Degree& d) const {
  if (!contains(d)) throw LatticeMismatch();
}

Degree ResiduatedLattice::otimes(const Degree& a, const Degree& b) const {
  require(a);
  require(b);
  return Degree(kind_, mul(a.numerator(), b.numerator()), n_);
}

Degree ResiduatedLattice::residuum(const Degree& a, const Degree& b) const {
  require(a);
  require(b);
  return Degree(kind_, imp(a.numerator(), b.numerator()), n_);
}

Degree ResiduatedLattice::residuum_by_search(const Degree& a, const Degree& b) const {
  require(a);
  require(b);
  unsigned best = 0;
  // Uses only the product; never consults imp().
  for (unsigned c = 0; c <= n_; ++c)
    if (mul(a.numerator(), c) <= b.numerator()) best = c;
  return Degree(kind_, best, n_);
}

Degree ResiduatedLattice::meet(const Degree& a, const Degree& b) const {
  require(a);
  require(b);
  return a.numerator() <= b.numerator() ? a : b;
}

Degree ResiduatedLattice::join(const Degree& a, const Degree& b) const {
  require(a);
  require(b);
  return a.numerator() >= b.numerator() ? a : b;
}

Degree ResiduatedLattice::inf(std::span<const Degree> degrees) const {
  Degree result = one();
  for (const auto& d : degrees) result = meet(result, d);
  return result;
}

Degree ResiduatedLattice::sup(std::span<const Degree> degrees) const {
  Degree result = zero();
  for (const auto& d : degrees) result = join(result, d);
  return result;
}

ResiduatedLattice lattice_of(const Degree& d) {
  switch (d.kind()) {
    case LatticeKind::boolean: return ResiduatedLattice::boolean();
    case LatticeKind::lukasiewicz: return ResiduatedLattice::lukasiewicz(d.denominator());
    case LatticeKind::goedel: return ResiduatedLattice::goedel(d.denominator());
  }
  throw SemanticError("corrupt degree");
}

Degree otimes(const Degree& a, const Degree& b) {
  if (!a.same_lattice(b)) throw LatticeMismatch();
  return lattice_of(a).otimes(a, b);
}

Degree residuum(const Degree& a, const Degree& b) {
  if (!a.same_lattice(b)) throw LatticeMismatch();
  return lattice_of(a).residuum(a, b);
}

Degree residuum_by_search(const Degree& a, const Degree& b) {
  if (!a.same_lattice(b)) throw LatticeMismatch();
  return lattice_of(a).residuum_by_search(a, b);
}

DegreeMatrix DegreeMatrix::identity(ResiduatedLattice lattice, std::size_t size) {
  DegreeMatrix m(lattice, size);
  for (std::size_t i = 0; i < size; ++i) m.set_num(i, i, lattice.denominator());
  return m;
}

void DegreeMatrix::set(std::size_t a, std::size_t b, const Degree& d) {
  if (!lattice_.contains(d)) throw LatticeMismatch();
  set_num(a, b, d.numerator());
}

bool DegreeMatrix::included_in(const DegreeMatrix& other) const {
  if (!(lattice_ == other.lattice_)) throw LatticeMismatch();
  if (size_ != other.size_) throw SemanticError("relations over different universes");
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i] > other.cells_[i]) return false;
  return true;
}

}  // namespace fil
