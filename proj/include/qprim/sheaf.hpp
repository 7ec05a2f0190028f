#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qprim/localization.hpp"

namespace qprim {

/// One equivalence class of basic opens: all elements a sharing the same
/// U_a. The representative is the least such element; the section ring is
/// the localization at the representative's powers.
struct BasicOpenClass {
  int representative = 0;
  std::vector<std::uint16_t> members;  // ascending
  OpenSet open;
  LocalizedRing loc;
};

/// The assignment U_a -> R_a over canonical basic-open representatives,
/// with restriction maps for every containment pair. Immutable once built.
class SheafAssignment {
public:
  explicit SheafAssignment(SpectrumPtr spectrum);

  const SpectrumPtr& spectrum() const { return spectrum_; }
  const TopologyLattice& topology() const { return topology_; }
  int class_count() const { return static_cast<int>(classes_.size()); }
  const BasicOpenClass& basic_class(int i) const { return classes_[static_cast<size_t>(i)]; }
  int class_of_element(int a) const { return element_class_[static_cast<size_t>(a)]; }

  /// Containment of the underlying opens, by point sets.
  bool open_leq(int small_class, int big_class) const;

  /// res: R_{big} -> R_{small} for U_{small} subseteq U_{big}. Throws
  /// NotContained otherwise.
  const RingHom& restriction(int big_class, int small_class) const;

private:
  SpectrumPtr spectrum_;
  TopologyLattice topology_;
  std::vector<BasicOpenClass> classes_;
  std::vector<int> element_class_;
  std::vector<std::vector<std::optional<RingHom>>> res_;  // [big][small]
};

SheafAssignment build_sheaf(SpectrumPtr spectrum);

/// F(U): the inverse limit of the section rings over all basic-open
/// classes contained in U, realized as the ring of restriction-compatible
/// tuples with pointwise operations.
struct SectionRing {
  OpenSet open;
  std::vector<int> class_idxs;                    // classes contained in U, ascending
  std::vector<std::vector<std::uint16_t>> tuples; // element -> per-class components
  RingPtr ring;

  int tuple_index(const std::vector<std::uint16_t>& t) const;  // -1 if absent
};

SectionRing sections(const SheafAssignment& sheaf, const OpenSet& u);

/// Projection F(V) -> F(U) for U subseteq V; a verified ring hom. Throws
/// NotContained.
RingHom restrict_section(const SheafAssignment& sheaf, const SectionRing& v,
                         const SectionRing& u);

/// Identity and transitivity of the restriction maps over all containment
/// chains of basic-open classes.
bool presheaf_laws_hold(const SheafAssignment& sheaf, std::string* why = nullptr);

/// The explicit fraction form of the restriction map R_b -> R_a for
/// U_a inside U_b: pick a witness pair (exponent, factor) with
/// a^exponent = factor * b; then r/b^m maps to factor^m r / a^(exponent*m).
/// Verified to agree with the universal-property map for every r, small m,
/// and every witness pair (the formula is witness-independent).
bool restriction_matches_fraction_formula(const SheafAssignment& sheaf, int big_class,
                                          int small_class, std::string* why = nullptr);

struct SheafAxiomReport {
  bool ok = true;
  std::string failure;
  int opens_checked = 0;
  long long covers_checked = 0;
  bool truncated = false;  // cover enumeration hit the cap; reported, not fatal
  nlohmann::json counterexample;
};

/// Identity + gluing for every open of the topology lattice and every
/// cover by opens of the lattice, up to 2^cover_cap_log2 candidate covers
/// per open.
SheafAxiomReport check_sheaf_axioms(const SheafAssignment& sheaf, int cover_cap_log2 = 12);

struct StalkResult {
  int point = 0;
  RingPtr ring;
  int min_class = 0;        // the smallest basic open containing the point
  bool is_local = false;
  bool matches_prime_localization = false;
};

/// Direct limit over the basic opens containing the point, computed by
/// union-find over tagged elements; cross-checked against localization at
/// the point's radical.
StalkResult stalk(const SheafAssignment& sheaf, int point_idx);

struct DirectImageReport {
  bool ok = true;
  std::string failure;
  bool inclusion_continuous = false;
  bool representatives_match = false;
  int opens_checked = 0;
  bool restrictions_commute = false;
  bool global_sections_match = false;
};

/// Builds the sheaf on QPrim(R) and the structure sheaf on Spec(R) with the
/// same machinery and verifies that sections agree along the inclusion
/// Spec(R) -> QPrim(R), naturally in restrictions, and that global sections
/// recover R.
DirectImageReport direct_image_check(const RingPtr& ring);

}  // namespace qprim
