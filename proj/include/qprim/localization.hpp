#pragma once

#include <string>
#include <vector>

#include "qprim/spectrum.hpp"

namespace qprim {

/// Localization of a finite ring at a multiplicative set, realized as the
/// quotient by {r : s*r = 0 for some s in the set}. In a finite ring the
/// image of every set member is a non-zero-divisor and hence a unit, so
/// this quotient satisfies the localization universal property.
struct LocalizedRing {
  RingPtr source;
  std::vector<std::uint16_t> mult_set;  // closed under products, contains 1
  RingPtr result;
  RingHom canonical;  // source -> result
};

/// seed is closed under multiplication and joined with {1} before use.
/// A set containing 0 localizes to the zero ring.
LocalizedRing localize_multset(RingPtr ring, const std::vector<int>& seed);

/// Localization at the powers of a single element, computed two independent
/// ways: the kernel-quotient realization and the idempotent-carrier
/// realization e*R (e the idempotent power of a, carrier identity e). The
/// two are cross-validated at construction; realization_iso is the unique
/// isomorphism commuting with the canonical maps.
struct ElementLocalization {
  int element = 0;
  LocalizedRing loc;        // kernel-quotient realization
  int idempotent = 0;       // e = a^k
  int idempotent_exponent = 1;
  RingPtr carrier;          // e*R with identity e
  RingHom carrier_map;      // source -> carrier, r -> r*e
  RingHom realization_iso;  // loc.result -> carrier
};

ElementLocalization localize_element(RingPtr ring, int a);

/// Localization at the complement of a prime ideal; the result is verified
/// to be local (a unique maximal ideal). Throws NotPrime.
LocalizedRing localize_prime(RingPtr ring, const Ideal& P);

/// True when the result has exactly one maximal ideal.
bool is_local_ring(const RingPtr& ring, int ideal_cap = 4096);

/// Factorization of psi through the canonical map of a localization:
/// psi = factor . canonical. Exists when psi sends the multiplicative set
/// to units; unique because the canonical map is surjective.
struct UniversalFactorization {
  bool exists = false;
  bool unique = false;
  std::vector<std::uint16_t> factor_map;  // loc.result index -> psi target index
};

UniversalFactorization universal_factorization(const LocalizedRing& loc, const RingHom& psi);

/// Per-element contraction/extension verdicts: contractions of spectrum
/// points of R_a are quasi-primary points of U_a, extensions of U_a points
/// are spectrum points of R_a, the two maps are mutually inverse, and the
/// correspondence is a homeomorphism onto U_a.
struct ContractionExtensionReport {
  bool ok = true;
  std::string failure;
  int localized_points = 0;
  int basic_open_points = 0;
};

ContractionExtensionReport contraction_extension_checks(const RingPtr& ring, int a);

}  // namespace qprim
