#include "doctest.h"
#include "qprim/sheaf.hpp"

using namespace qprim;

namespace {

RingPtr zmod(int n) { return build_ring(RingSpec::zmod(n)); }

OpenSet full_open(const SheafAssignment& sheaf) {
  for (const OpenSet& u : sheaf.topology().opens())
    if (static_cast<int>(u.points.size()) == sheaf.spectrum()->size()) return u;
  throw Error("no full open");
}

OpenSet empty_open(const SheafAssignment& sheaf) {
  for (const OpenSet& u : sheaf.topology().opens())
    if (u.points.empty()) return u;
  throw Error("no empty open");
}

}  // namespace

// ============================================================================
// Basic-open classes and restrictions
// ============================================================================

TEST_CASE("basic-open classes of Z/12") {
  SheafAssignment sheaf = build_sheaf(make_spectrum(zmod(12), SpectrumKind::QPrim));
  REQUIRE(sheaf.class_count() == 4);
  CHECK(sheaf.basic_class(0).representative == 0);  // empty open, zero ring
  CHECK(sheaf.basic_class(1).representative == 1);  // full space, R itself
  CHECK(sheaf.basic_class(2).representative == 2);
  CHECK(sheaf.basic_class(3).representative == 3);
  CHECK(sheaf.basic_class(0).loc.result->order() == 1);
  CHECK(sheaf.basic_class(1).loc.result->order() == 12);
  CHECK(sheaf.basic_class(2).loc.result->order() == 3);
  CHECK(sheaf.basic_class(3).loc.result->order() == 4);
  // members: nilpotents {0,6}; units {1,5,7,11}; radical classes of 2 and 3
  CHECK(sheaf.basic_class(0).members.size() == 2);
  CHECK(sheaf.basic_class(1).members.size() == 4);
  CHECK(sheaf.basic_class(2).members.size() == 4);
  CHECK(sheaf.basic_class(3).members.size() == 2);
}

TEST_CASE("restriction maps exist exactly for containments") {
  SheafAssignment sheaf = build_sheaf(make_spectrum(zmod(12), SpectrumKind::QPrim));
  // class 2 (one point) sits inside class 1 (everything)
  CHECK(sheaf.open_leq(2, 1));
  const RingHom& res = sheaf.restriction(1, 2);
  CHECK(res.source()->order() == 12);
  CHECK(res.target()->order() == 3);
  CHECK_THROWS_AS(sheaf.restriction(2, 1), NotContained);
  // restriction to itself is the identity
  const RingHom& id = sheaf.restriction(3, 3);
  for (int x = 0; x < id.source()->order(); ++x) CHECK(id.apply(x) == x);
}

TEST_CASE("equal basic opens give mutually inverse localizations") {
  // U_4 = U_2 in Z/12; the class machinery identifies them, and the two
  // localizations agree through the canonical maps.
  RingPtr r = zmod(12);
  SheafAssignment sheaf = build_sheaf(make_spectrum(r, SpectrumKind::QPrim));
  CHECK(sheaf.class_of_element(4) == sheaf.class_of_element(2));
  ElementLocalization l2 = localize_element(r, 2);
  ElementLocalization l4 = localize_element(r, 4);
  CHECK(l2.loc.result->order() == l4.loc.result->order());
  CHECK(l2.loc.canonical.kernel_elements() == l4.loc.canonical.kernel_elements());
}

TEST_CASE("presheaf laws") {
  for (auto spec : {RingSpec::zmod(12), RingSpec::zmod(36), RingSpec::zmod(60)}) {
    SheafAssignment sheaf =
        build_sheaf(make_spectrum(build_ring(spec), SpectrumKind::QPrim));
    std::string why;
    CHECK_MESSAGE(presheaf_laws_hold(sheaf, &why), why);
  }
}

TEST_CASE("restriction maps match the explicit fraction form") {
  for (auto spec : {RingSpec::zmod(12), RingSpec::zmod(36),
                    RingSpec::product({RingSpec::zmod(4), RingSpec::zmod(3)})}) {
    SheafAssignment sheaf =
        build_sheaf(make_spectrum(build_ring(spec), SpectrumKind::QPrim));
    for (int big = 0; big < sheaf.class_count(); ++big)
      for (int small = 0; small < sheaf.class_count(); ++small) {
        if (!sheaf.open_leq(small, big)) continue;
        std::string why;
        CHECK_MESSAGE(restriction_matches_fraction_formula(sheaf, big, small, &why), why);
      }
  }
}

// ============================================================================
// Section rings
// ============================================================================

TEST_CASE("section ring orders over Z/12") {
  SheafAssignment sheaf = build_sheaf(make_spectrum(zmod(12), SpectrumKind::QPrim));
  std::vector<int> orders;
  for (const OpenSet& u : sheaf.topology().opens()) orders.push_back(sections(sheaf, u).ring->order());
  std::sort(orders.begin(), orders.end());
  CHECK(orders == std::vector<int>{1, 3, 4, 12});
}

TEST_CASE("sections over a basic open recover the localization") {
  SheafAssignment sheaf = build_sheaf(make_spectrum(zmod(12), SpectrumKind::QPrim));
  for (int c = 0; c < sheaf.class_count(); ++c) {
    SectionRing s = sections(sheaf, sheaf.basic_class(c).open);
    CHECK(s.ring->order() == sheaf.basic_class(c).loc.result->order());
  }
}

TEST_CASE("sections over the empty set form the zero ring") {
  SheafAssignment sheaf = build_sheaf(make_spectrum(zmod(12), SpectrumKind::QPrim));
  SectionRing s = sections(sheaf, empty_open(sheaf));
  CHECK(s.ring->order() == 1);
}

TEST_CASE("restrict_section is functorial") {
  SheafAssignment sheaf = build_sheaf(make_spectrum(zmod(12), SpectrumKind::QPrim));
  SectionRing big = sections(sheaf, full_open(sheaf));
  CHECK(big.ring->order() == 12);
  // full space -> U_2 (one point) -> empty
  OpenSet u2 = sheaf.basic_class(2).open;
  SectionRing mid = sections(sheaf, u2);
  SectionRing small = sections(sheaf, empty_open(sheaf));
  RingHom big_mid = restrict_section(sheaf, big, mid);
  RingHom mid_small = restrict_section(sheaf, mid, small);
  RingHom big_small = restrict_section(sheaf, big, small);
  CHECK(big_mid.is_surjective());
  for (int x = 0; x < big.ring->order(); ++x)
    CHECK(mid_small.apply(big_mid.apply(x)) == big_small.apply(x));
  CHECK_THROWS_AS(restrict_section(sheaf, mid, big), NotContained);
}

// ============================================================================
// Sheaf axioms
// ============================================================================

TEST_CASE("sheaf axioms hold") {
  for (auto spec : {RingSpec::zmod(12), RingSpec::zmod(4), RingSpec::zmod(1),
                    RingSpec::product({RingSpec::zmod(2), RingSpec::zmod(2)}),
                    RingSpec::poly_quotient(RingSpec::zmod(2), {0, 0, 1})}) {
    SheafAssignment sheaf =
        build_sheaf(make_spectrum(build_ring(spec), SpectrumKind::QPrim));
    SheafAxiomReport rep = check_sheaf_axioms(sheaf);
    CHECK_MESSAGE(rep.ok, rep.failure);
    CHECK_FALSE(rep.truncated);
    CHECK(rep.covers_checked > 0);
  }
}

TEST_CASE("a disjoint cover glues to the product") {
  // U_2 and U_3 cover QPrim(Z/12) disjointly, so F glues to R itself.
  SheafAssignment sheaf = build_sheaf(make_spectrum(zmod(12), SpectrumKind::QPrim));
  SectionRing g = sections(sheaf, full_open(sheaf));
  CHECK(g.ring->order() == 12);  // 3 * 4 compatible pairs
  SheafAxiomReport rep = check_sheaf_axioms(sheaf);
  CHECK(rep.ok);
}

TEST_CASE("cover enumeration cap is recorded, not fatal") {
  SheafAssignment sheaf = build_sheaf(make_spectrum(zmod(60), SpectrumKind::QPrim));
  SheafAxiomReport rep = check_sheaf_axioms(sheaf, 2);  // tiny cap
  CHECK(rep.truncated);
  CHECK(rep.ok);  // nothing enumerated may fail
}

// ============================================================================
// Stalks
// ============================================================================

TEST_CASE("stalks of Z/12") {
  SpectrumPtr sp = make_spectrum(zmod(12), SpectrumKind::QPrim);
  SheafAssignment sheaf = build_sheaf(sp);
  for (int q = 0; q < sp->size(); ++q) {
    StalkResult st = stalk(sheaf, q);
    CHECK(st.is_local);
    CHECK(st.matches_prime_localization);
  }
  // point (4) has radical (2): the stalk is the order-4 local ring
  int p4 = sp->point_index(Ideal(sp->ring(), {0, 4, 8}));
  REQUIRE(p4 >= 0);
  CHECK(stalk(sheaf, p4).ring->order() == 4);
  int p3 = sp->point_index(Ideal(sp->ring(), {0, 3, 6, 9}));
  REQUIRE(p3 >= 0);
  CHECK(stalk(sheaf, p3).ring->order() == 3);
}

TEST_CASE("the stalk over a field's unique point is the field") {
  SpectrumPtr sp = make_spectrum(zmod(7), SpectrumKind::QPrim);
  SheafAssignment sheaf = build_sheaf(sp);
  StalkResult st = stalk(sheaf, 0);
  CHECK(st.ring->order() == 7);
  CHECK(st.is_local);
  CHECK(st.matches_prime_localization);
}

// ============================================================================
// Direct image
// ============================================================================

TEST_CASE("the sheaf is the direct image of the structure sheaf") {
  for (auto spec : {RingSpec::zmod(12), RingSpec::zmod(4),
                    RingSpec::product({RingSpec::zmod(2), RingSpec::zmod(2)}),
                    RingSpec::poly_quotient(RingSpec::zmod(2), {0, 0, 1})}) {
    DirectImageReport rep = direct_image_check(build_ring(spec));
    CHECK_MESSAGE(rep.ok, rep.failure);
    CHECK(rep.inclusion_continuous);
    CHECK(rep.representatives_match);
    CHECK(rep.restrictions_commute);
    CHECK(rep.global_sections_match);
  }
}

TEST_CASE("global sections of the zero ring") {
  DirectImageReport rep = direct_image_check(zmod(1));
  CHECK(rep.ok);
  CHECK(rep.global_sections_match);
}
