#include <algorithm>
#include <set>

#include "doctest.h"
#include "qprim/spectrum.hpp"

using namespace qprim;

namespace {

RingPtr zmod(int n) { return build_ring(RingSpec::zmod(n)); }

std::vector<std::uint16_t> elems(std::initializer_list<int> xs) {
  std::vector<std::uint16_t> out;
  for (int x : xs) out.push_back(static_cast<std::uint16_t>(x));
  return out;
}

// Point index by exact element set; requires presence.
int pt(const SpectrumPtr& sp, std::initializer_list<int> xs) {
  Ideal I(sp->ring(), elems(xs));
  int idx = sp->point_index(I);
  REQUIRE(idx >= 0);
  return idx;
}

}  // namespace

// ============================================================================
// Point sets
// ============================================================================

TEST_CASE("QPrim, Prim, Spec of Z/12") {
  RingPtr r = zmod(12);
  SpectrumPtr qp = make_spectrum(r, SpectrumKind::QPrim);
  REQUIRE(qp->size() == 3);
  CHECK(qp->point(0).ideal.elements() == elems({0, 2, 4, 6, 8, 10}));
  CHECK(qp->point(1).ideal.elements() == elems({0, 3, 6, 9}));
  CHECK(qp->point(2).ideal.elements() == elems({0, 4, 8}));
  CHECK(qp->point(2).radical_ideal.elements() == elems({0, 2, 4, 6, 8, 10}));

  SpectrumPtr sp = make_spectrum(r, SpectrumKind::Spec);
  REQUIRE(sp->size() == 2);
  CHECK(sp->point(0).ideal.elements() == elems({0, 2, 4, 6, 8, 10}));
  CHECK(sp->point(1).ideal.elements() == elems({0, 3, 6, 9}));

  SpectrumPtr pr = make_spectrum(r, SpectrumKind::Prim);
  CHECK(pr->size() == 3);  // (4) is primary
}

TEST_CASE("spectra nest: Spec inside Prim inside QPrim") {
  for (auto spec : {RingSpec::zmod(12), RingSpec::zmod(16), RingSpec::zmod(36),
                    RingSpec::poly_quotient(RingSpec::zmod(2), {0, 0, 0, 1}),
                    RingSpec::product({RingSpec::zmod(4), RingSpec::zmod(3)})}) {
    RingPtr r = build_ring(spec);
    SpectrumPtr sp = make_spectrum(r, SpectrumKind::Spec);
    SpectrumPtr pr = make_spectrum(r, SpectrumKind::Prim);
    SpectrumPtr qp = make_spectrum(r, SpectrumKind::QPrim);
    for (int i = 0; i < sp->size(); ++i) CHECK(pr->point_index(sp->point(i).ideal) >= 0);
    for (int i = 0; i < pr->size(); ++i) CHECK(qp->point_index(pr->point(i).ideal) >= 0);
    // prime points equal their radicals
    for (int i = 0; i < sp->size(); ++i)
      CHECK(sp->point(i).ideal == sp->point(i).radical_ideal);
  }
}

TEST_CASE("spectrum of a field and of the zero ring") {
  SpectrumPtr field = make_spectrum(zmod(5), SpectrumKind::QPrim);
  REQUIRE(field->size() == 1);
  CHECK(field->point(0).ideal.elements() == elems({0}));

  SpectrumPtr zero = make_spectrum(zmod(1), SpectrumKind::QPrim);
  CHECK(zero->size() == 0);
}

TEST_CASE("QPrim of Z/4 contains the zero ideal") {
  SpectrumPtr qp = make_spectrum(zmod(4), SpectrumKind::QPrim);
  REQUIRE(qp->size() == 2);
  CHECK(qp->point(0).ideal.elements() == elems({0}));
  CHECK(qp->point(1).ideal.elements() == elems({0, 2}));
}

// ============================================================================
// Closed sets and basic opens
// ============================================================================

TEST_CASE("v_q on Z/12") {
  RingPtr r = zmod(12);
  SpectrumPtr qp = make_spectrum(r, SpectrumKind::QPrim);
  CHECK(v_q(qp, std::vector<int>{2}).points == std::vector<int>{pt(qp, {0, 2, 4, 6, 8, 10}), pt(qp, {0, 4, 8})});
  CHECK(v_q(qp, std::vector<int>{0}).points == std::vector<int>{0, 1, 2});
  CHECK(v_q(qp, unit_ideal(r)).points.empty());
}

TEST_CASE("basic opens on Z/12") {
  SpectrumPtr qp = make_spectrum(zmod(12), SpectrumKind::QPrim);
  CHECK(basic_open(qp, 2).points == std::vector<int>{pt(qp, {0, 3, 6, 9})});
  CHECK(basic_open(qp, 0).points.empty());
  CHECK(basic_open(qp, 1).points == std::vector<int>{0, 1, 2});
  CHECK(basic_open(qp, 2).basic_witness == 2);
}

TEST_CASE("topology lattice sizes") {
  CHECK(topology_lattice(make_spectrum(zmod(12), SpectrumKind::QPrim)).size() == 4);
  CHECK(topology_lattice(make_spectrum(zmod(5), SpectrumKind::QPrim)).size() == 2);
  // all nonempty closed sets of Z/4 coincide
  CHECK(topology_lattice(make_spectrum(zmod(4), SpectrumKind::QPrim)).size() == 2);
}

TEST_CASE("closure and the failure of T0") {
  SpectrumPtr qp = make_spectrum(zmod(12), SpectrumKind::QPrim);
  int p2 = pt(qp, {0, 2, 4, 6, 8, 10});
  int p4 = pt(qp, {0, 4, 8});
  ClosedSet c2 = closure(qp, p2);
  ClosedSet c4 = closure(qp, p4);
  CHECK(c2.points == std::vector<int>{p2, p4});
  CHECK(c2.points == c4.points);  // distinct points, same closure
}

TEST_CASE("closure of a prime in Spec is the classical closed set") {
  RingPtr r = zmod(12);
  SpectrumPtr sp = make_spectrum(r, SpectrumKind::Spec);
  int p = pt(sp, {0, 2, 4, 6, 8, 10});
  CHECK(closure(sp, p).points == v_q(sp, generate(r, {2})).points);
}

TEST_CASE("basis_containment") {
  RingPtr r = zmod(12);
  SpectrumPtr qp = make_spectrum(r, SpectrumKind::QPrim);
  CHECK(basis_containment(r, 4, 2));
  CHECK(basic_open(qp, 4).points == basic_open(qp, 2).points);
  CHECK(basis_containment(r, 2, 4));
  for (int a = 0; a < 12; ++a) CHECK(basis_containment(r, a, a));
  CHECK_FALSE(basis_containment(r, 3, 2));
}

// ============================================================================
// Irreducibility, components, generic points
// ============================================================================

TEST_CASE("irreducibility") {
  TopologyLattice t12 = topology_lattice(make_spectrum(zmod(12), SpectrumKind::QPrim));
  CHECK_FALSE(space_irreducible(t12));

  TopologyLattice t4 = topology_lattice(make_spectrum(zmod(4), SpectrumKind::QPrim));
  CHECK(space_irreducible(t4));

  // single-point closed sets are irreducible
  for (int c = 0; c < t12.size(); ++c)
    if (t12[c].points.size() == 1) CHECK(is_irreducible(t12, t12[c]));
}

TEST_CASE("irreducible components of Z/12") {
  SpectrumPtr qp = make_spectrum(zmod(12), SpectrumKind::QPrim);
  TopologyLattice topo = topology_lattice(qp);
  auto comps = irreducible_components(topo);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].points == std::vector<int>{0, 2});  // {(2),(4)}
  CHECK(comps[1].points == std::vector<int>{1});     // {(3)}
}

TEST_CASE("components of an irreducible space and of a product of fields") {
  TopologyLattice t4 = topology_lattice(make_spectrum(zmod(4), SpectrumKind::QPrim));
  auto c4 = irreducible_components(t4);
  REQUIRE(c4.size() == 1);
  CHECK(c4[0].is_full());

  RingPtr r22 = build_ring(RingSpec::product({RingSpec::zmod(2), RingSpec::zmod(2)}));
  TopologyLattice t22 = topology_lattice(make_spectrum(r22, SpectrumKind::QPrim));
  auto c22 = irreducible_components(t22);
  REQUIRE(c22.size() == 2);
  CHECK(c22[0].points.size() == 1);
  CHECK(c22[1].points.size() == 1);
}

TEST_CASE("generic points may be non-unique") {
  SpectrumPtr qp = make_spectrum(zmod(12), SpectrumKind::QPrim);
  TopologyLattice topo = topology_lattice(qp);
  int c24 = topo.index_of_point_set({0, 2});
  REQUIRE(c24 >= 0);
  CHECK(generic_points(topo, topo[c24]) == std::vector<int>{0, 2});  // both are generic
  int c3 = topo.index_of_point_set({1});
  REQUIRE(c3 >= 0);
  CHECK(generic_points(topo, topo[c3]) == std::vector<int>{1});
  // a point always lies in its own closure's generic set
  for (int q = 0; q < qp->size(); ++q) {
    ClosedSet cl = closure(qp, q);
    int idx = topo.index_of_point_set(cl.points);
    REQUIRE(idx >= 0);
    auto gen = generic_points(topo, topo[idx]);
    CHECK(std::find(gen.begin(), gen.end(), q) != gen.end());
  }
  CHECK_THROWS_AS(generic_points(topo, topo.full_set()), NotIrreducible);
}

TEST_CASE("decompose_closed") {
  RingPtr r = zmod(12);
  SpectrumPtr qp = make_spectrum(r, SpectrumKind::QPrim);
  ClosedSet full = v_q(qp, zero_ideal(r));
  auto parts = decompose_closed(full);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].points == std::vector<int>{0, 2});
  CHECK(parts[1].points == std::vector<int>{1});

  ClosedSet vp = v_q(qp, generate(r, {2}));
  auto self = decompose_closed(vp);
  REQUIRE(self.size() == 1);
  CHECK(self[0].points == vp.points);

  // radical (6) = (2) cap (3), so V(6) decomposes into both components
  ClosedSet v6 = v_q(qp, generate(r, {6}));
  CHECK(v6.points == std::vector<int>{0, 1, 2});
  CHECK(decompose_closed(v6).size() == 2);

  CHECK(decompose_closed(v_q(qp, unit_ideal(r))).empty());
}

// ============================================================================
// Connectedness and dimension
// ============================================================================

TEST_CASE("connectedness") {
  CHECK_FALSE(is_connected(topology_lattice(make_spectrum(zmod(12), SpectrumKind::QPrim))));
  CHECK(is_connected(topology_lattice(make_spectrum(zmod(4), SpectrumKind::QPrim))));
  CHECK(is_connected(topology_lattice(make_spectrum(zmod(7), SpectrumKind::QPrim))));
  CHECK(is_connected(topology_lattice(make_spectrum(zmod(1), SpectrumKind::QPrim))));
}

TEST_CASE("chain dimension") {
  for (int n : {12, 4, 7}) {
    ChainDimension d = chain_dimension(topology_lattice(make_spectrum(zmod(n), SpectrumKind::QPrim)));
    CHECK(d.terms == 1);
    CHECK(d.krull == 0);
  }
  CHECK_THROWS_AS(chain_dimension(topology_lattice(make_spectrum(zmod(1), SpectrumKind::QPrim))),
                  EmptySpectrum);
}

TEST_CASE("subspace topology on prime points matches Spec") {
  RingPtr r = zmod(12);
  SpectrumPtr qp = make_spectrum(r, SpectrumKind::QPrim);
  SpectrumPtr sp = make_spectrum(r, SpectrumKind::Spec);
  TopologyLattice qt = topology_lattice(qp);
  TopologyLattice st = topology_lattice(sp);
  std::set<std::vector<int>> induced, direct;
  for (int c = 0; c < qt.size(); ++c) {
    std::vector<int> tr;
    for (int p = 0; p < sp->size(); ++p)
      if (qt[c].contains(qp->point_index(sp->point(p).ideal))) tr.push_back(p);
    induced.insert(tr);
  }
  for (int c = 0; c < st.size(); ++c) direct.insert(st[c].points);
  CHECK(induced == direct);
}

// ============================================================================
// Associated maps and product decomposition
// ============================================================================

TEST_CASE("associated map of the mod-4 projection") {
  RingPtr z12 = zmod(12), z4 = zmod(4);
  std::vector<int> mod4(12);
  for (int i = 0; i < 12; ++i) mod4[i] = i % 4;
  RingHom phi = build_hom(z12, z4, mod4);
  AssociatedMap m = associated_map(phi, SpectrumKind::QPrim);
  REQUIRE(m.target_spectrum->size() == 2);
  // (0) in Z/4 pulls back to (4), (2) pulls back to (2)
  int t0 = m.target_spectrum->point_index(zero_ideal(z4));
  int t2 = m.target_spectrum->point_index(generate(z4, {2}));
  CHECK(m.source_spectrum->point(m.point_map[t0]).ideal.elements() == elems({0, 4, 8}));
  CHECK(m.source_spectrum->point(m.point_map[t2]).ideal.elements() ==
        elems({0, 2, 4, 6, 8, 10}));
  CHECK(associated_map_continuous(m));
}

TEST_CASE("associated map of the identity is the identity") {
  RingPtr r = zmod(12);
  AssociatedMap m = associated_map(identity_hom(r), SpectrumKind::QPrim);
  for (int i = 0; i < m.target_spectrum->size(); ++i) CHECK(m.point_map[i] == i);
  CHECK(associated_map_continuous(m));
}

TEST_CASE("disjoint decomposition of product spectra") {
  SUBCASE("Z/2 x Z/2: two points, product count 1") {
    RingPtr r = build_ring(RingSpec::product({RingSpec::zmod(2), RingSpec::zmod(2)}));
    ProductDecomposition d = disjoint_decomposition(r);
    CHECK(d.spectrum->size() == 2);
    CHECK(d.is_partition);
    CHECK(d.blocks_clopen);
    CHECK(d.blocks_homeomorphic);
    CHECK(d.disjoint_union_count == 2);
    CHECK(d.product_count == 1);
    CHECK(d.matches_disjoint_union);
    CHECK_FALSE(d.matches_product);
  }
  SUBCASE("Z/4 x Z/3 matches QPrim(Z/12) size") {
    RingPtr r = build_ring(RingSpec::product({RingSpec::zmod(4), RingSpec::zmod(3)}));
    ProductDecomposition d = disjoint_decomposition(r);
    CHECK(d.spectrum->size() == 3);
    CHECK(d.disjoint_union_count == 3);
    CHECK(d.matches_disjoint_union);
    CHECK(d.blocks_homeomorphic);
  }
  SUBCASE("single factor is the identity partition") {
    RingPtr r = build_ring(RingSpec::product({RingSpec::zmod(12)}));
    ProductDecomposition d = disjoint_decomposition(r);
    REQUIRE(d.blocks.size() == 1);
    CHECK(static_cast<int>(d.blocks[0].size()) == d.spectrum->size());
    CHECK(d.is_partition);
    CHECK(d.blocks_homeomorphic);
  }
  SUBCASE("non-product specs are rejected") {
    CHECK_THROWS_AS(disjoint_decomposition(zmod(12)), NotAProductSpec);
  }
}
