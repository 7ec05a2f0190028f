#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qprim/ideal.hpp"

namespace qprim {

/// Which classifier admits an ideal as a point of the spectrum.
enum class SpectrumKind { Spec, Prim, QPrim };

std::string kind_name(SpectrumKind kind);

/// A spectrum point: a proper ideal whose radical is prime, with the radical
/// cached alongside.
struct SpectrumPoint {
  Ideal ideal;
  Ideal radical_ideal;
};

/// The full (materialized) point set of Spec, Prim or QPrim of a ring,
/// together with the ideal lattice it was computed from. Points are in
/// canonical order: lexicographic on sorted element lists.
class Spectrum {
public:
  Spectrum(RingPtr ring, SpectrumKind kind, IdealLattice lattice);

  const RingPtr& ring() const { return ring_; }
  SpectrumKind kind() const { return kind_; }
  const IdealLattice& lattice() const { return lattice_; }
  int size() const { return static_cast<int>(points_.size()); }
  const SpectrumPoint& point(int i) const { return points_[static_cast<size_t>(i)]; }
  const std::vector<SpectrumPoint>& points() const { return points_; }
  int point_index(const Ideal& I) const;  // -1 if absent

private:
  RingPtr ring_;
  SpectrumKind kind_;
  IdealLattice lattice_;
  std::vector<SpectrumPoint> points_;
};

using SpectrumPtr = std::shared_ptr<const Spectrum>;

SpectrumPtr make_spectrum(RingPtr ring, SpectrumKind kind, int ideal_cap = 4096);
SpectrumPtr make_spectrum(RingPtr ring, SpectrumKind kind, IdealLattice lattice);

/// A closed subset {Q : I subseteq radical(Q)} with its defining witness I.
struct ClosedSet {
  SpectrumPtr spectrum;
  std::vector<int> points;  // indexes into the spectrum, ascending
  Ideal witness;

  bool contains(int point_idx) const;
  bool is_empty() const { return points.empty(); }
  bool is_full() const { return static_cast<int>(points.size()) == spectrum->size(); }
};

/// Complement of a closed set; carries the basic witness element when the
/// set arose as some U_a.
struct OpenSet {
  SpectrumPtr spectrum;
  std::vector<int> points;
  Ideal complement_witness;
  std::optional<int> basic_witness;

  bool contains(int point_idx) const;
  bool is_empty() const { return points.empty(); }
};

ClosedSet v_q(SpectrumPtr spectrum, const std::vector<int>& generators);
ClosedSet v_q(SpectrumPtr spectrum, const Ideal& I);
OpenSet basic_open(SpectrumPtr spectrum, int a);
OpenSet complement(const ClosedSet& closed);

/// Closure of a point: the closed set with the point's own ideal as witness.
ClosedSet closure(SpectrumPtr spectrum, int point_idx);

/// a lies in the radical of the principal ideal (b). Equivalent to the
/// pointwise containment U_a subseteq U_b.
bool basis_containment(const RingPtr& ring, int a, int b);

/// All distinct closed sets of the spectrum, deduplicated by point set over
/// the whole ideal lattice; each keeps the first witness in canonical
/// lattice order. Sorted by point-index list.
class TopologyLattice {
public:
  TopologyLattice(SpectrumPtr spectrum, std::vector<ClosedSet> closed_sets);

  const SpectrumPtr& spectrum() const { return spectrum_; }
  int size() const { return static_cast<int>(closed_.size()); }
  const ClosedSet& operator[](int i) const { return closed_[static_cast<size_t>(i)]; }
  const std::vector<ClosedSet>& closed_sets() const { return closed_; }
  int index_of_point_set(const std::vector<int>& pts) const;  // -1 if absent
  const ClosedSet& full_set() const;
  std::vector<OpenSet> opens() const;

private:
  SpectrumPtr spectrum_;
  std::vector<ClosedSet> closed_;
};

TopologyLattice topology_lattice(SpectrumPtr spectrum);

/// Nonempty and not the union of two proper closed subsets; decided by
/// direct search over the closed-set lattice.
bool is_irreducible(const TopologyLattice& topo, const ClosedSet& c);
bool space_irreducible(const TopologyLattice& topo);

std::vector<ClosedSet> irreducible_components(const TopologyLattice& topo);

/// Points of c whose closure is all of c. Throws NotIrreducible when c is
/// not irreducible.
std::vector<int> generic_points(const TopologyLattice& topo, const ClosedSet& c);

/// Irredundant decomposition of c into the closed sets of the minimal
/// primes over its witness. Empty input decomposes to an empty list.
std::vector<ClosedSet> decompose_closed(const ClosedSet& c);

bool is_connected(const TopologyLattice& topo);

struct ChainDimension {
  int terms;  // maximum number of sets in a strictly increasing chain
  int krull;  // terms - 1
};

/// Throws EmptySpectrum on an empty spectrum.
ChainDimension chain_dimension(const TopologyLattice& topo);

/// The map Q -> phi^{-1}(Q) from the target spectrum to the source
/// spectrum.
struct AssociatedMap {
  RingHom phi;
  SpectrumPtr source_spectrum;  // over phi's source ring
  SpectrumPtr target_spectrum;  // over phi's target ring
  std::vector<int> point_map;   // target point index -> source point index
};

AssociatedMap associated_map(const RingHom& phi, SpectrumKind kind);
AssociatedMap associated_map(const RingHom& phi, SpectrumPtr source_spectrum,
                             SpectrumPtr target_spectrum);

/// Verifies that the preimage of every closed set of the source spectrum,
/// computed pointwise through the map, is the closed set of the pushed
/// witness. Returns false and fills *why on the first mismatch.
bool associated_map_continuous(const AssociatedMap& m, std::string* why = nullptr);

/// Decomposition of the spectrum of a product ring into factor blocks.
struct ProductDecomposition {
  RingPtr ring;
  SpectrumPtr spectrum;
  std::vector<std::vector<int>> blocks;  // per factor, point indexes
  std::vector<long long> factor_counts;  // |QPrim(R_i)|
  bool is_partition = false;
  bool blocks_clopen = false;
  bool blocks_homeomorphic = false;
  long long disjoint_union_count = 0;  // sum of factor counts
  long long product_count = 0;         // product of factor counts
  bool matches_disjoint_union = false;
  bool matches_product = false;
};

/// Requires a Product ring spec; throws NotAProductSpec otherwise.
ProductDecomposition disjoint_decomposition(const RingPtr& ring, SpectrumKind kind = SpectrumKind::QPrim);

}  // namespace qprim
