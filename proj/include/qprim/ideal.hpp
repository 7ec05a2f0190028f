#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "qprim/ring.hpp"

namespace qprim {

/// An ideal of a finite ring, stored as its full element set. Construction
/// verifies the ideal axioms (contains 0, closed under addition and under
/// multiplication by every ring element). Radical and classification flags
/// are cached lazily; recomputation yields identical values, so concurrent
/// fills are benign.
class Ideal {
public:
  Ideal(RingPtr ring, std::vector<std::uint16_t> elements);

  const RingPtr& ring() const { return ring_; }
  const std::vector<std::uint16_t>& elements() const { return elems_; }
  int size() const { return static_cast<int>(elems_.size()); }
  bool contains(int x) const { return member_[static_cast<size_t>(x)] != 0; }
  bool is_proper() const { return size() < ring_->order(); }
  bool is_zero() const { return size() == 1; }
  bool contains_ideal(const Ideal& other) const;

  bool operator==(const Ideal& other) const;
  bool operator!=(const Ideal& other) const { return !(*this == other); }

  /// Canonical order: lexicographic on sorted element lists.
  static bool canonical_less(const Ideal& a, const Ideal& b);

  friend Ideal radical(const Ideal& I);
  friend bool is_prime(const Ideal& I);
  friend bool is_primary(const Ideal& I);
  friend bool is_quasi_primary(const Ideal& I);

private:
  RingPtr ring_;
  std::vector<std::uint16_t> elems_;  // sorted ascending
  std::vector<char> member_;
  mutable std::shared_ptr<const std::vector<std::uint16_t>> radical_cache_;
  mutable std::optional<bool> prime_cache_, primary_cache_, quasi_primary_cache_;
};

/// Smallest ideal containing gens: the additive closure of {r*g}.
Ideal generate(RingPtr ring, const std::vector<int>& gens);

Ideal zero_ideal(RingPtr ring);
Ideal unit_ideal(RingPtr ring);

Ideal sum(const Ideal& I, const Ideal& J);
Ideal product(const Ideal& I, const Ideal& J);
Ideal intersect(const Ideal& I, const Ideal& J);

/// {x : x^k in I for some k >= 1}. Each element's power sequence is walked
/// until it repeats, so no nilpotency-index bound is needed.
Ideal radical(const Ideal& I);

// Proper-ideal convention throughout: the unit ideal is never prime,
// primary or quasi-primary.
bool is_prime(const Ideal& I);
bool is_primary(const Ideal& I);
bool is_quasi_primary(const Ideal& I);

/// Every distinct ideal of the ring in canonical order, with the
/// containment partial order precomputed. Generated by closing the set of
/// principal ideals under pairwise sums; complete because every ideal of a
/// finite ring is a finite sum of principal ideals.
class IdealLattice {
public:
  IdealLattice(RingPtr ring, std::vector<Ideal> ideals);

  const RingPtr& ring() const { return ring_; }
  int size() const { return static_cast<int>(ideals_.size()); }
  const Ideal& operator[](int i) const { return ideals_[static_cast<size_t>(i)]; }
  const std::vector<Ideal>& ideals() const { return ideals_; }

  /// Index of an ideal by element-set equality; -1 if absent.
  int index_of(const Ideal& I) const;
  bool leq(int i, int j) const { return leq_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

  /// Indexes of the prime ideals, ascending.
  std::vector<int> prime_indexes() const;

private:
  RingPtr ring_;
  std::vector<Ideal> ideals_;
  std::vector<std::vector<bool>> leq_;
};

IdealLattice all_ideals(RingPtr ring, int ideal_cap = 4096);

/// Minimal elements of {P prime : I subseteq P}, drawn from the lattice.
/// Throws ImproperIdeal when I is the whole ring.
std::vector<Ideal> minimal_primes_over(const Ideal& I, const IdealLattice& lattice);

/// {r : phi(r) in J}.
Ideal preimage_ideal(const RingHom& phi, const Ideal& J);

/// R/I with minimal-index coset representatives and the canonical
/// surjection. The coset of 0 gets index 0.
std::pair<RingPtr, RingHom> quotient_map(const RingPtr& ring, const Ideal& I);

}  // namespace qprim
