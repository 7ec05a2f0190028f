#include "qprim/localization.hpp"

#include <algorithm>
#include <map>

namespace qprim {

namespace {

std::vector<std::uint16_t> multiplicative_closure(const FiniteRing& r, std::vector<int> seed) {
  std::vector<char> in(static_cast<size_t>(r.order()), 0);
  std::vector<std::uint16_t> work;
  auto push = [&](int x) {
    if (!in[static_cast<size_t>(x)]) {
      in[static_cast<size_t>(x)] = 1;
      work.push_back(static_cast<std::uint16_t>(x));
    }
  };
  push(r.one());
  for (int s : seed) {
    if (s < 0 || s >= r.order()) throw Error("multiplicative set element out of range");
    push(s);
  }
  for (size_t i = 0; i < work.size(); ++i)
    for (size_t j = 0; j <= i; ++j) push(r.mul(work[i], work[j]));
  std::sort(work.begin(), work.end());
  return work;
}

}  // namespace

LocalizedRing localize_multset(RingPtr ring, const std::vector<int>& seed) {
  auto mult = multiplicative_closure(*ring, seed);
  std::vector<std::uint16_t> kernel;
  for (int r = 0; r < ring->order(); ++r) {
    bool killed = false;
    for (auto s : mult)
      if (ring->mul(s, r) == 0) {
        killed = true;
        break;
      }
    if (killed) kernel.push_back(static_cast<std::uint16_t>(r));
  }
  Ideal ker(ring, std::move(kernel));
  auto [result, canonical] = quotient_map(ring, ker);
  for (auto s : mult)
    if (!result->is_unit(canonical.apply(s)))
      throw Error("localize_multset: image of set member " + std::to_string(s) +
                  " is not a unit (internal)");
  return LocalizedRing{std::move(ring), std::move(mult), std::move(result),
                       std::move(canonical)};
}

ElementLocalization localize_element(RingPtr ring, int a) {
  ElementLocalization out{a, localize_multset(ring, {a}), 0, 1, nullptr,
                          identity_hom(ring), identity_hom(ring)};

  auto [e, k] = idempotent_power(*ring, a);
  out.idempotent = e;
  out.idempotent_exponent = k;

  // Carrier realization: the subset e*R with identity e and the ambient
  // operations. Canonical indexing: sorted carrier elements, so 0 is first.
  std::vector<std::uint16_t> carrier_elems;
  {
    std::vector<char> in(static_cast<size_t>(ring->order()), 0);
    for (int r = 0; r < ring->order(); ++r) in[static_cast<size_t>(ring->mul(e, r))] = 1;
    for (int r = 0; r < ring->order(); ++r)
      if (in[static_cast<size_t>(r)]) carrier_elems.push_back(static_cast<std::uint16_t>(r));
  }
  const int m = static_cast<int>(carrier_elems.size());
  std::vector<int> pos(static_cast<size_t>(ring->order()), -1);
  for (int i = 0; i < m; ++i) pos[carrier_elems[static_cast<size_t>(i)]] = i;

  std::vector<std::uint16_t> add(static_cast<size_t>(m) * m), mul(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int s = ring->add(carrier_elems[static_cast<size_t>(i)], carrier_elems[static_cast<size_t>(j)]);
      int p = ring->mul(carrier_elems[static_cast<size_t>(i)], carrier_elems[static_cast<size_t>(j)]);
      if (pos[static_cast<size_t>(s)] < 0 || pos[static_cast<size_t>(p)] < 0)
        throw Error("localize_element: carrier not closed (internal)");
      add[static_cast<size_t>(i) * m + j] = static_cast<std::uint16_t>(pos[static_cast<size_t>(s)]);
      mul[static_cast<size_t>(i) * m + j] = static_cast<std::uint16_t>(pos[static_cast<size_t>(p)]);
    }
  std::vector<std::vector<int>> add_spec(static_cast<size_t>(m), std::vector<int>(static_cast<size_t>(m)));
  auto mul_spec = add_spec;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      add_spec[static_cast<size_t>(i)][static_cast<size_t>(j)] = add[static_cast<size_t>(i) * m + j];
      mul_spec[static_cast<size_t>(i)][static_cast<size_t>(j)] = mul[static_cast<size_t>(i) * m + j];
    }
  out.carrier = make_ring_from_tables(
      ring->name() + " carrier e=" + std::to_string(e),
      RingSpec::table(std::move(add_spec), std::move(mul_spec)), std::move(add), std::move(mul));

  std::vector<int> cmap(static_cast<size_t>(ring->order()));
  for (int r = 0; r < ring->order(); ++r)
    cmap[static_cast<size_t>(r)] = pos[static_cast<size_t>(ring->mul(e, r))];
  out.carrier_map = build_hom(ring, out.carrier, cmap);

  // Cross-validate the two realizations: the canonical quotient map is
  // surjective, so the commuting map is pinned by picking any preimage.
  const RingHom& can = out.loc.canonical;
  std::vector<int> iso(static_cast<size_t>(out.loc.result->order()), -1);
  for (int r = 0; r < ring->order(); ++r) {
    int c = can.apply(r);
    int v = out.carrier_map.apply(r);
    if (iso[static_cast<size_t>(c)] < 0)
      iso[static_cast<size_t>(c)] = v;
    else if (iso[static_cast<size_t>(c)] != v)
      throw Error("localize_element: realizations disagree at element " + std::to_string(r));
  }
  for (int c = 0; c < out.loc.result->order(); ++c)
    if (iso[static_cast<size_t>(c)] < 0)
      throw Error("localize_element: canonical map not surjective (internal)");
  out.realization_iso = build_hom(out.loc.result, out.carrier, iso);
  if (!out.realization_iso.is_bijective())
    throw Error("localize_element: realizations are not isomorphic for element " +
                std::to_string(a));
  return out;
}

bool is_local_ring(const RingPtr& ring, int ideal_cap) {
  IdealLattice lat = all_ideals(ring, ideal_cap);
  int maximal = 0;
  for (int i = 0; i < lat.size(); ++i) {
    if (!lat[i].is_proper()) continue;
    bool is_max = true;
    for (int j = 0; j < lat.size(); ++j)
      if (j != i && lat[j].is_proper() && lat.leq(i, j) && !(lat[j] == lat[i])) {
        is_max = false;
        break;
      }
    if (is_max) ++maximal;
  }
  return maximal == 1;
}

LocalizedRing localize_prime(RingPtr ring, const Ideal& P) {
  if (P.ring().get() != ring.get()) throw MixedRings("localize_prime: foreign ideal");
  if (!is_prime(P)) throw NotPrime("localize_prime: ideal is not prime");
  std::vector<int> seed;
  for (int r = 0; r < ring->order(); ++r)
    if (!P.contains(r)) seed.push_back(r);
  LocalizedRing loc = localize_multset(std::move(ring), seed);
  if (!is_local_ring(loc.result))
    throw Error("localize_prime: localization at a prime is not local (internal)");
  return loc;
}

UniversalFactorization universal_factorization(const LocalizedRing& loc, const RingHom& psi) {
  UniversalFactorization out;
  if (psi.source().get() != loc.source.get())
    throw MixedRings("universal_factorization: psi does not start at the localized ring");
  for (auto s : loc.mult_set)
    if (!psi.target()->is_unit(psi.apply(s))) return out;  // hypothesis fails

  std::vector<int> factor(static_cast<size_t>(loc.result->order()), -1);
  for (int r = 0; r < loc.source->order(); ++r) {
    int c = loc.canonical.apply(r);
    int v = psi.apply(r);
    if (factor[static_cast<size_t>(c)] < 0)
      factor[static_cast<size_t>(c)] = v;
    else if (factor[static_cast<size_t>(c)] != v)
      return out;  // no well-defined factorization
  }
  RingHom h = build_hom(loc.result, psi.target(), factor);
  out.exists = true;
  // Any two factorizations agree on the image of the canonical map, which
  // is everything.
  out.unique = loc.canonical.is_surjective();
  out.factor_map.assign(factor.begin(), factor.end());
  return out;
}

ContractionExtensionReport contraction_extension_checks(const RingPtr& ring, int a) {
  ContractionExtensionReport rep;
  auto fail = [&](std::string why) {
    rep.ok = false;
    if (rep.failure.empty()) rep.failure = std::move(why);
  };

  ElementLocalization el = localize_element(ring, a);
  const RingHom& can = el.loc.canonical;
  SpectrumPtr qp_source = make_spectrum(ring, SpectrumKind::QPrim);
  SpectrumPtr qp_local = make_spectrum(el.loc.result, SpectrumKind::QPrim);
  OpenSet u_a = basic_open(qp_source, a);
  rep.localized_points = qp_local->size();
  rep.basic_open_points = static_cast<int>(u_a.points.size());

  auto disjoint_from_set = [&](const Ideal& I) {
    for (auto s : el.loc.mult_set)
      if (I.contains(s)) return false;
    return true;
  };

  // Contraction: every point of the localized spectrum pulls back to a
  // point of U_a.
  std::vector<int> contracted;
  for (int q = 0; q < qp_local->size(); ++q) {
    Ideal c = preimage_ideal(can, qp_local->point(q).ideal);
    if (!is_quasi_primary(c)) {
      fail("contraction of localized point " + std::to_string(q) + " is not quasi-primary");
      continue;
    }
    if (!disjoint_from_set(radical(c)))
      fail("contraction of localized point " + std::to_string(q) +
           " meets the multiplicative set");
    int idx = qp_source->point_index(c);
    if (idx < 0 || !u_a.contains(idx)) {
      fail("contraction of localized point " + std::to_string(q) + " is not in U_a");
      continue;
    }
    contracted.push_back(idx);
  }

  // Extension: every point of U_a pushes forward to a localized point, and
  // the two maps are mutually inverse.
  for (int idx : u_a.points) {
    const Ideal& Q = qp_source->point(idx).ideal;
    if (!disjoint_from_set(radical(Q))) {
      fail("U_a point " + std::to_string(idx) + " has radical meeting the multiplicative set");
      continue;
    }
    std::vector<int> image;
    for (auto x : Q.elements()) image.push_back(can.apply(x));
    Ideal ext = generate(el.loc.result, image);
    if (!is_quasi_primary(ext)) {
      fail("extension of U_a point " + std::to_string(idx) + " is not quasi-primary");
      continue;
    }
    Ideal back = preimage_ideal(can, ext);
    if (!(back == Q)) fail("extension then contraction does not return U_a point " +
                           std::to_string(idx));
  }

  std::vector<int> sorted_contracted = contracted;
  std::sort(sorted_contracted.begin(), sorted_contracted.end());
  if (sorted_contracted != u_a.points)
    fail("contraction is not a bijection onto U_a");

  // Homeomorphism: closed sets of the localized spectrum, pushed through
  // the contraction, are exactly the traces of closed sets on U_a.
  if (rep.ok) {
    TopologyLattice ltopo = topology_lattice(qp_local);
    std::vector<std::vector<int>> pushed;
    for (int c = 0; c < ltopo.size(); ++c) {
      std::vector<int> img;
      for (int q : ltopo[c].points) img.push_back(contracted[static_cast<size_t>(q)]);
      std::sort(img.begin(), img.end());
      pushed.push_back(std::move(img));
    }
    std::sort(pushed.begin(), pushed.end());
    pushed.erase(std::unique(pushed.begin(), pushed.end()), pushed.end());

    TopologyLattice stopo = topology_lattice(qp_source);
    std::vector<std::vector<int>> traces;
    for (int c = 0; c < stopo.size(); ++c) {
      std::vector<int> tr;
      std::set_intersection(stopo[c].points.begin(), stopo[c].points.end(), u_a.points.begin(),
                            u_a.points.end(), std::back_inserter(tr));
      traces.push_back(std::move(tr));
    }
    std::sort(traces.begin(), traces.end());
    traces.erase(std::unique(traces.begin(), traces.end()), traces.end());
    if (pushed != traces) fail("localized topology does not match the subspace topology on U_a");
  }
  return rep;
}

}  // namespace qprim
