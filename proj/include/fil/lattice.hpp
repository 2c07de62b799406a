#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fil/error.hpp"

namespace fil {

enum class LatticeKind : std::uint8_t { boolean, lukasiewicz, goedel };

/// An exact truth degree k/n of a finite chain. The degree remembers the
/// chain it came from; mixing degrees of different chains is an error.
class Degree {
 public:
  constexpr Degree() = default;

  unsigned numerator() const noexcept { return k_; }
  unsigned denominator() const noexcept { return n_; }
  LatticeKind kind() const noexcept { return kind_; }

  bool is_zero() const noexcept { return k_ == 0; }
  bool is_one() const noexcept { return k_ == n_; }
  bool same_lattice(const Degree& other) const noexcept {
    return kind_ == other.kind_ && n_ == other.n_;
  }

  // "0", "1" or "k/n" with the lattice denominator (never reduced).
  std::string to_string() const;

  friend bool operator==(const Degree&, const Degree&) = default;
  // Throws LatticeMismatch when the operands come from different chains.
  friend std::strong_ordering operator<=>(const Degree& a, const Degree& b);

 private:
  friend class ResiduatedLattice;
  constexpr Degree(LatticeKind kind, unsigned k, unsigned n) : kind_(kind), k_(k), n_(n) {}

  LatticeKind kind_ = LatticeKind::boolean;
  std::uint16_t k_ = 0;
  std::uint16_t n_ = 1;
};

using TruthDegree = Degree;

/// Complete residuated lattice on the chain {0, 1/n, ..., 1}: the Boolean
/// algebra (n = 1), the Lukasiewicz chain, or the Goedel chain.
class ResiduatedLattice {
 public:
  static constexpr unsigned max_denominator = 1000;

  static ResiduatedLattice boolean() { return ResiduatedLattice(LatticeKind::boolean, 1); }
  static ResiduatedLattice lukasiewicz(unsigned n);
  static ResiduatedLattice goedel(unsigned n);

  // Parses the declaration payload: "boolean", "lukasiewicz 4", "goedel 4".
  static ResiduatedLattice parse(std::string_view text);

  LatticeKind kind() const noexcept { return kind_; }
  unsigned denominator() const noexcept { return n_; }
  std::size_t size() const noexcept { return n_ + 1u; }
  std::string name() const;

  Degree zero() const { return Degree(kind_, 0, n_); }
  Degree one() const { return Degree(kind_, n_, n_); }
  Degree degree(unsigned k) const;
  std::vector<Degree> elements() const;
  bool contains(const Degree& d) const noexcept;

  // "k/n", "0" or "1"; the denominator must equal the lattice denominator.
  Degree parse_degree(std::string_view text) const;

  // Numerator-level operations used by the inner loops of the engine and
  // the model enumerator. Arguments are numerators in [0, n].
  unsigned mul(unsigned a, unsigned b) const noexcept {
    if (kind_ == LatticeKind::goedel) return a < b ? a : b;
    return a + b > n_ ? a + b - n_ : 0u;
  }
  unsigned imp(unsigned a, unsigned b) const noexcept {
    if (a <= b) return n_;
    if (kind_ == LatticeKind::goedel) return b;
    return n_ - a + b;
  }

  Degree otimes(const Degree& a, const Degree& b) const;
  Degree residuum(const Degree& a, const Degree& b) const;
  // max{c : a (x) c <= b} by scanning the carrier.
  Degree residuum_by_search(const Degree& a, const Degree& b) const;
  Degree meet(const Degree& a, const Degree& b) const;
  Degree join(const Degree& a, const Degree& b) const;
  // inf of the empty family is 1, sup of the empty family is 0.
  Degree inf(std::span<const Degree> degrees) const;
  Degree sup(std::span<const Degree> degrees) const;

  friend bool operator==(const ResiduatedLattice&, const ResiduatedLattice&) = default;

 private:
  ResiduatedLattice(LatticeKind kind, unsigned n) : kind_(kind), n_(n) {}
  void require(const Degree& d) const;

  LatticeKind kind_;
  unsigned n_;
};

// Free-function forms; the lattice is taken from the operands.
ResiduatedLattice lattice_of(const Degree& d);
Degree otimes(const Degree& a, const Degree& b);
Degree residuum(const Degree& a, const Degree& b);
Degree residuum_by_search(const Degree& a, const Degree& b);

/// Sparse L-set over an identified universe. Absent keys have degree 0 and
/// zero entries are never stored, so equal L-sets are structurally equal.
template <class Key>
class LSet {
 public:
  using Entries = std::map<Key, Degree>;

  LSet(ResiduatedLattice lattice, std::string universe)
      : lattice_(lattice), universe_(std::move(universe)) {}

  const ResiduatedLattice& lattice() const noexcept { return lattice_; }
  const std::string& universe() const noexcept { return universe_; }
  const Entries& entries() const noexcept { return entries_; }
  std::size_t support_size() const noexcept { return entries_.size(); }

  Degree operator()(const Key& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? lattice_.zero() : it->second;
  }

  void set(const Key& key, const Degree& degree) {
    if (!lattice_.contains(degree)) throw LatticeMismatch();
    if (degree.is_zero())
      entries_.erase(key);
    else
      entries_.insert_or_assign(key, degree);
  }

  // Sup-merge: keeps the larger of the stored and the given degree.
  void raise(const Key& key, const Degree& degree) {
    if ((*this)(key) < degree) set(key, degree);
  }

  friend bool operator==(const LSet& a, const LSet& b) {
    return a.lattice_ == b.lattice_ && a.universe_ == b.universe_ && a.entries_ == b.entries_;
  }

 private:
  ResiduatedLattice lattice_;
  std::string universe_;
  Entries entries_;
};

template <class T>
using LRelation = LSet<std::pair<T, T>>;

namespace detail {
template <class Key>
void require_compatible(const LSet<Key>& a, const LSet<Key>& b) {
  if (a.universe() != b.universe())
    throw SemanticError("L-sets over different universes: '" + a.universe() + "' and '" +
                        b.universe() + "'");
  if (!(a.lattice() == b.lattice())) throw LatticeMismatch();
}
}  // namespace detail

template <class Key>
bool lset_includes(const LSet<Key>& a, const LSet<Key>& b) {
  detail::require_compatible(a, b);
  for (const auto& [key, degree] : a.entries())
    if (b(key) < degree) return false;
  return true;
}

// The family must be non-empty: the universe of an empty family is unknown.
template <class Key>
LSet<Key> lset_intersect(std::span<const LSet<Key>> family) {
  if (family.empty()) throw SemanticError("intersection of an empty family of L-sets");
  LSet<Key> result = family.front();
  for (const auto& other : family.subspan(1)) {
    detail::require_compatible(result, other);
    LSet<Key> next(result.lattice(), result.universe());
    for (const auto& [key, degree] : result.entries())
      next.set(key, result.lattice().meet(degree, other(key)));
    result = std::move(next);
  }
  return result;
}

template <class Key>
LSet<Key> lset_union(std::span<const LSet<Key>> family) {
  if (family.empty()) throw SemanticError("union of an empty family of L-sets");
  LSet<Key> result = family.front();
  for (const auto& other : family.subspan(1)) {
    detail::require_compatible(result, other);
    for (const auto& [key, degree] : other.entries()) result.raise(key, degree);
  }
  return result;
}

/// Dense binary L-relation over indices 0..size-1, stored as numerators.
class DegreeMatrix {
 public:
  DegreeMatrix(ResiduatedLattice lattice, std::size_t size, unsigned fill = 0)
      : lattice_(lattice), size_(size), cells_(size * size, static_cast<std::uint16_t>(fill)) {}

  // Zero everywhere except 1 on the diagonal.
  static DegreeMatrix identity(ResiduatedLattice lattice, std::size_t size);

  const ResiduatedLattice& lattice() const noexcept { return lattice_; }
  std::size_t size() const noexcept { return size_; }

  unsigned num(std::size_t a, std::size_t b) const noexcept { return cells_[a * size_ + b]; }
  void set_num(std::size_t a, std::size_t b, unsigned k) noexcept {
    cells_[a * size_ + b] = static_cast<std::uint16_t>(k);
  }
  Degree at(std::size_t a, std::size_t b) const { return lattice_.degree(num(a, b)); }
  void set(std::size_t a, std::size_t b, const Degree& d);

  // Pointwise order.
  bool included_in(const DegreeMatrix& other) const;

  friend bool operator==(const DegreeMatrix&, const DegreeMatrix&) = default;

 private:
  ResiduatedLattice lattice_;
  std::size_t size_;
  std::vector<std::uint16_t> cells_;
};

}  // namespace fil
