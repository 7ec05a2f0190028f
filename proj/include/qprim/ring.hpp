#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qprim/errors.hpp"

namespace qprim {

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

struct BuildOptions {
  int order_cap = 512;
};

/// Declarative description of a finite commutative ring with identity.
///
/// Variants:
///   ZMod(n)           residues mod n, n >= 1 (n = 1 is the zero ring)
///   Product(specs)    componentwise ring structure, mixed-radix indexing
///   PolyQuotient      Z/n[x] modulo a polynomial whose leading coefficient
///                     is a unit mod n; elements are reduced coefficient
///                     vectors indexed as base-n digit strings
///   Table             explicit addition/multiplication tables, verified
///                     exhaustively at build time
class RingSpec {
public:
  enum class Kind { ZMod, Product, PolyQuotient, Table };

  static RingSpec zmod(int n);
  static RingSpec product(std::vector<RingSpec> factors);
  static RingSpec poly_quotient(const RingSpec& base, std::vector<int> modulus);
  static RingSpec table(std::vector<std::vector<int>> add,
                        std::vector<std::vector<int>> mul);

  Kind kind() const { return kind_; }
  int zmod_n() const;
  const std::vector<RingSpec>& factors() const;
  int base_n() const;
  const std::vector<int>& modulus() const;
  const std::vector<std::vector<int>>& table_add() const;
  const std::vector<std::vector<int>>& table_mul() const;

  /// Order implied by the spec (before any cap check). Saturates instead of
  /// overflowing.
  long long order() const;

  std::string label() const;
  bool operator==(const RingSpec& other) const;
  bool operator!=(const RingSpec& other) const { return !(*this == other); }

private:
  RingSpec() = default;
  Kind kind_ = Kind::ZMod;
  int n_ = 1;                        // ZMod modulus / PolyQuotient base modulus
  std::vector<RingSpec> factors_;
  std::vector<int> modulus_;         // coefficients, low degree first
  std::vector<std::vector<int>> add_, mul_;
};

/// A finite commutative ring with identity. Elements are indices
/// 0..order-1 with index 0 the additive zero. Immutable after construction.
class FiniteRing {
public:
  int order() const { return order_; }
  int zero() const { return 0; }
  int one() const { return one_; }

  int add(int a, int b) const { return add_[static_cast<size_t>(a) * order_ + b]; }
  int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * order_ + b]; }
  int neg(int a) const { return neg_[static_cast<size_t>(a)]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int pow(int a, long long k) const;

  bool is_unit(int a) const;
  bool is_nilpotent(int a) const;
  bool is_idempotent(int a) const { return mul(a, a) == a; }
  bool is_zero_divisor(int a) const;

  int additive_order(int a) const;
  int characteristic() const { return additive_order(one_); }

  const RingSpec& spec() const { return spec_; }
  const std::string& name() const { return name_; }

  friend RingPtr make_ring_from_tables(std::string name, RingSpec provenance,
                                       std::vector<std::uint16_t> add,
                                       std::vector<std::uint16_t> mul);

private:
  FiniteRing() = default;
  int order_ = 1;
  int one_ = 0;
  std::vector<std::uint16_t> add_, mul_, neg_;
  RingSpec spec_ = RingSpec::zmod(1);
  std::string name_;
};

/// Builds and verifies a ring from its spec. Table specs get the full
/// exhaustive axiom scan; the structured variants are correct by
/// construction and receive the cheap checks only.
RingPtr build_ring(const RingSpec& spec, const BuildOptions& opts = {});

/// Trusted path for rings derived from already-verified ones (quotients,
/// idempotent carriers, section rings). Locates the identity, computes
/// additive inverses and checks commutativity; throws the Table* errors on
/// violation.
RingPtr make_ring_from_tables(std::string name, RingSpec provenance,
                              std::vector<std::uint16_t> add,
                              std::vector<std::uint16_t> mul);

/// Exhaustive associativity/distributivity scan, O(order^3). Throws
/// TableNotRing with a witness triple on failure.
void verify_ring_axioms(const FiniteRing& r);

/// Seeded random scan of the same axioms for rings too large to cover
/// exhaustively.
void verify_ring_axioms_sampled(const FiniteRing& r, int samples, std::uint64_t seed);

/// An element of a specific ring. Mixing elements of distinct ring objects
/// throws MixedRings.
class RingElement {
public:
  RingElement(RingPtr ring, int index);
  int index() const { return index_; }
  const RingPtr& ring() const { return ring_; }

  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  RingElement operator-() const;
  RingElement pow(long long k) const;
  bool operator==(const RingElement& other) const;
  bool operator!=(const RingElement& other) const { return !(*this == other); }

private:
  RingPtr ring_;
  int index_;
};

RingElement add(const RingElement& a, const RingElement& b);
RingElement mul(const RingElement& a, const RingElement& b);
RingElement neg(const RingElement& a);
RingElement pow(const RingElement& a, long long k);

struct ElementClass {
  bool is_unit = false;
  bool is_nilpotent = false;
  bool is_idempotent = false;
  bool is_zero_divisor = false;
};

ElementClass classify_element(const RingElement& a);

/// Least k >= 1 such that a^k is idempotent, together with that idempotent.
/// Always exists in a finite ring (the power sequence is eventually
/// periodic).
std::pair<RingElement, int> idempotent_power(const RingElement& a);
std::pair<int, int> idempotent_power(const FiniteRing& r, int a);

/// A unital ring homomorphism, stored as a total map on element indices.
class RingHom {
public:
  RingHom(RingPtr source, RingPtr target, std::vector<std::uint16_t> map);

  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }
  int apply(int a) const { return map_[static_cast<size_t>(a)]; }
  RingElement operator()(const RingElement& a) const;

  bool is_injective() const;
  bool is_surjective() const;
  bool is_bijective() const { return is_injective() && is_surjective(); }
  std::vector<std::uint16_t> kernel_elements() const;  // sorted

private:
  RingPtr source_, target_;
  std::vector<std::uint16_t> map_;
};

/// Verifies that map preserves 0, 1, + and *; throws NotAHom with a witness
/// pair otherwise.
RingHom build_hom(RingPtr source, RingPtr target, const std::vector<int>& map);
RingHom identity_hom(RingPtr ring);

/// compose(f: A->B, g: B->C) is the hom A->C.
RingHom compose(const RingHom& f, const RingHom& g);

}  // namespace qprim
