#include "qprim/spectrum.hpp"

#include <algorithm>
#include <map>

namespace qprim {

namespace {

bool sorted_contains(const std::vector<int>& v, int x) {
  return std::binary_search(v.begin(), v.end(), x);
}

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

std::string kind_name(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::Spec: return "spec";
    case SpectrumKind::Prim: return "prim";
    case SpectrumKind::QPrim: return "qprim";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Spectrum
// ---------------------------------------------------------------------------

Spectrum::Spectrum(RingPtr ring, SpectrumKind kind, IdealLattice lattice)
    : ring_(std::move(ring)), kind_(kind), lattice_(std::move(lattice)) {
  for (int i = 0; i < lattice_.size(); ++i) {
    const Ideal& I = lattice_[i];
    bool admit = false;
    switch (kind_) {
      case SpectrumKind::Spec: admit = is_prime(I); break;
      case SpectrumKind::Prim: admit = is_primary(I); break;
      case SpectrumKind::QPrim: admit = is_quasi_primary(I); break;
    }
    if (admit) points_.push_back(SpectrumPoint{I, radical(I)});
  }
  // Lattice order is already canonical, so points inherit it.
}

int Spectrum::point_index(const Ideal& I) const {
  for (int i = 0; i < size(); ++i)
    if (points_[static_cast<size_t>(i)].ideal == I) return i;
  return -1;
}

SpectrumPtr make_spectrum(RingPtr ring, SpectrumKind kind, int ideal_cap) {
  IdealLattice lattice = all_ideals(ring, ideal_cap);
  return std::make_shared<Spectrum>(std::move(ring), kind, std::move(lattice));
}

SpectrumPtr make_spectrum(RingPtr ring, SpectrumKind kind, IdealLattice lattice) {
  return std::make_shared<Spectrum>(std::move(ring), kind, std::move(lattice));
}

// ---------------------------------------------------------------------------
// Closed and open sets
// ---------------------------------------------------------------------------

bool ClosedSet::contains(int point_idx) const { return sorted_contains(points, point_idx); }
bool OpenSet::contains(int point_idx) const { return sorted_contains(points, point_idx); }

ClosedSet v_q(SpectrumPtr spectrum, const Ideal& I) {
  if (I.ring().get() != spectrum->ring().get()) throw MixedRings("v_q: foreign ideal");
  std::vector<int> pts;
  for (int i = 0; i < spectrum->size(); ++i)
    if (spectrum->point(i).radical_ideal.contains_ideal(I)) pts.push_back(i);
  return ClosedSet{std::move(spectrum), std::move(pts), I};
}

ClosedSet v_q(SpectrumPtr spectrum, const std::vector<int>& generators) {
  Ideal witness = generate(spectrum->ring(), generators);
  return v_q(std::move(spectrum), witness);
}

OpenSet complement(const ClosedSet& closed) {
  std::vector<int> pts;
  for (int i = 0; i < closed.spectrum->size(); ++i)
    if (!closed.contains(i)) pts.push_back(i);
  return OpenSet{closed.spectrum, std::move(pts), closed.witness, std::nullopt};
}

OpenSet basic_open(SpectrumPtr spectrum, int a) {
  ClosedSet c = v_q(spectrum, std::vector<int>{a});
  OpenSet u = complement(c);
  u.basic_witness = a;
  return u;
}

ClosedSet closure(SpectrumPtr spectrum, int point_idx) {
  Ideal q = spectrum->point(point_idx).ideal;
  return v_q(std::move(spectrum), q);
}

bool basis_containment(const RingPtr& ring, int a, int b) {
  return radical(generate(ring, {b})).contains(a);
}

// ---------------------------------------------------------------------------
// Topology lattice
// ---------------------------------------------------------------------------

TopologyLattice::TopologyLattice(SpectrumPtr spectrum, std::vector<ClosedSet> closed_sets)
    : spectrum_(std::move(spectrum)), closed_(std::move(closed_sets)) {
  std::sort(closed_.begin(), closed_.end(),
            [](const ClosedSet& a, const ClosedSet& b) { return a.points < b.points; });
}

int TopologyLattice::index_of_point_set(const std::vector<int>& pts) const {
  for (int i = 0; i < size(); ++i)
    if (closed_[static_cast<size_t>(i)].points == pts) return i;
  return -1;
}

const ClosedSet& TopologyLattice::full_set() const {
  for (const auto& c : closed_)
    if (c.is_full()) return c;
  throw Error("topology lattice has no full closed set (internal)");
}

std::vector<OpenSet> TopologyLattice::opens() const {
  std::vector<OpenSet> out;
  out.reserve(closed_.size());
  for (const auto& c : closed_) out.push_back(complement(c));
  return out;
}

TopologyLattice topology_lattice(SpectrumPtr spectrum) {
  const IdealLattice& lat = spectrum->lattice();
  std::map<std::vector<int>, ClosedSet> dedup;
  for (int i = 0; i < lat.size(); ++i) {
    ClosedSet c = v_q(spectrum, lat[i]);
    auto key = c.points;
    dedup.emplace(std::move(key), std::move(c));  // keeps first witness
  }
  std::vector<ClosedSet> closed;
  closed.reserve(dedup.size());
  for (auto& [key, c] : dedup) closed.push_back(std::move(c));
  return TopologyLattice(std::move(spectrum), std::move(closed));
}

// ---------------------------------------------------------------------------
// Topological properties
// ---------------------------------------------------------------------------

bool is_irreducible(const TopologyLattice& topo, const ClosedSet& c) {
  if (c.points.empty()) return false;
  std::vector<const ClosedSet*> below;
  for (int i = 0; i < topo.size(); ++i) {
    const ClosedSet& d = topo[i];
    if (d.points != c.points && subset(d.points, c.points)) below.push_back(&d);
  }
  for (size_t i = 0; i < below.size(); ++i)
    for (size_t j = 0; j <= i; ++j)
      if (sorted_union(below[i]->points, below[j]->points) == c.points) return false;
  return true;
}

bool space_irreducible(const TopologyLattice& topo) {
  if (topo.spectrum()->size() == 0) return false;
  return is_irreducible(topo, topo.full_set());
}

std::vector<ClosedSet> irreducible_components(const TopologyLattice& topo) {
  std::vector<ClosedSet> irr;
  for (int i = 0; i < topo.size(); ++i)
    if (is_irreducible(topo, topo[i])) irr.push_back(topo[i]);
  std::vector<ClosedSet> out;
  for (const auto& c : irr) {
    bool maximal = true;
    for (const auto& d : irr)
      if (d.points != c.points && subset(c.points, d.points)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(c);
  }
  return out;
}

std::vector<int> generic_points(const TopologyLattice& topo, const ClosedSet& c) {
  if (!is_irreducible(topo, c)) throw NotIrreducible("generic_points: set is not irreducible");
  std::vector<int> out;
  for (int q : c.points)
    if (closure(c.spectrum, q).points == c.points) out.push_back(q);
  return out;
}

std::vector<ClosedSet> decompose_closed(const ClosedSet& c) {
  if (c.points.empty()) return {};
  const Spectrum& sp = *c.spectrum;
  std::vector<ClosedSet> out;
  for (const Ideal& p : minimal_primes_over(c.witness, sp.lattice()))
    out.push_back(v_q(c.spectrum, p));
  return out;
}

bool is_connected(const TopologyLattice& topo) {
  const int n = topo.spectrum()->size();
  for (int i = 0; i < topo.size(); ++i) {
    const auto& a = topo[i].points;
    if (a.empty() || static_cast<int>(a.size()) == n) continue;
    for (int j = 0; j < topo.size(); ++j) {
      const auto& b = topo[j].points;
      if (b.empty()) continue;
      if (static_cast<int>(a.size() + b.size()) != n) continue;
      std::vector<int> inter;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
      if (inter.empty()) return false;
    }
  }
  return true;
}

ChainDimension chain_dimension(const TopologyLattice& topo) {
  if (topo.spectrum()->size() == 0) throw EmptySpectrum("chain_dimension: empty spectrum");
  std::vector<const ClosedSet*> irr;
  for (int i = 0; i < topo.size(); ++i)
    if (is_irreducible(topo, topo[i])) irr.push_back(&topo[i]);
  // Lattice order sorts by point list, which is not monotone in size, so
  // order by size before the longest-chain scan.
  std::sort(irr.begin(), irr.end(), [](const ClosedSet* a, const ClosedSet* b) {
    return a->points.size() < b->points.size();
  });
  std::vector<int> best(irr.size(), 1);
  int terms = irr.empty() ? 0 : 1;
  for (size_t i = 0; i < irr.size(); ++i) {
    for (size_t j = 0; j < i; ++j)
      if (irr[j]->points != irr[i]->points && subset(irr[j]->points, irr[i]->points))
        best[i] = std::max(best[i], best[j] + 1);
    terms = std::max(terms, best[i]);
  }
  return ChainDimension{terms, terms - 1};
}

// ---------------------------------------------------------------------------
// Associated map
// ---------------------------------------------------------------------------

AssociatedMap associated_map(const RingHom& phi, SpectrumPtr source_spectrum,
                             SpectrumPtr target_spectrum) {
  if (source_spectrum->ring().get() != phi.source().get() ||
      target_spectrum->ring().get() != phi.target().get())
    throw MixedRings("associated_map: spectra do not match the hom");
  std::vector<int> point_map;
  point_map.reserve(static_cast<size_t>(target_spectrum->size()));
  for (int i = 0; i < target_spectrum->size(); ++i) {
    Ideal pre = preimage_ideal(phi, target_spectrum->point(i).ideal);
    int idx = source_spectrum->point_index(pre);
    if (idx < 0)
      throw Error("associated_map: preimage of point " + std::to_string(i) +
                  " is not a spectrum point (internal)");
    point_map.push_back(idx);
  }
  return AssociatedMap{phi, std::move(source_spectrum), std::move(target_spectrum),
                       std::move(point_map)};
}

AssociatedMap associated_map(const RingHom& phi, SpectrumKind kind) {
  return associated_map(phi, make_spectrum(phi.source(), kind),
                        make_spectrum(phi.target(), kind));
}

bool associated_map_continuous(const AssociatedMap& m, std::string* why) {
  const IdealLattice& lat = m.source_spectrum->lattice();
  for (int i = 0; i < lat.size(); ++i) {
    ClosedSet v_source = v_q(m.source_spectrum, lat[i]);
    std::vector<int> pulled;
    for (int t = 0; t < m.target_spectrum->size(); ++t)
      if (v_source.contains(m.point_map[static_cast<size_t>(t)])) pulled.push_back(t);
    std::vector<int> image;
    for (auto x : lat[i].elements()) image.push_back(m.phi.apply(x));
    ClosedSet v_target = v_q(m.target_spectrum, image);
    if (pulled != v_target.points) {
      if (why)
        *why = "preimage of closed set of lattice ideal " + std::to_string(i) +
               " differs from the closed set of its image";
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Product decomposition
// ---------------------------------------------------------------------------

ProductDecomposition disjoint_decomposition(const RingPtr& ring, SpectrumKind kind) {
  if (ring->spec().kind() != RingSpec::Kind::Product)
    throw NotAProductSpec("disjoint_decomposition: ring was not built from a product spec");
  const auto& factor_specs = ring->spec().factors();
  const size_t k = factor_specs.size();

  std::vector<RingPtr> factors;
  factors.reserve(k);
  for (const auto& fs : factor_specs) factors.push_back(build_ring(fs));

  std::vector<int> radix(k);
  for (size_t i = 0; i < k; ++i) radix[i] = factors[i]->order();
  auto component = [&](int idx, size_t slot) {
    for (size_t i = k; i-- > slot + 1;) idx /= radix[i];
    return idx % radix[slot];
  };

  ProductDecomposition d;
  d.ring = ring;
  d.spectrum = make_spectrum(ring, kind);
  SpectrumPtr sp = d.spectrum;

  // Block i: ideals that are the full ring in every slot except slot i.
  d.blocks.assign(k, {});
  std::vector<char> assigned(static_cast<size_t>(sp->size()), 0);
  bool partition_ok = true;
  for (int p = 0; p < sp->size(); ++p) {
    const Ideal& Q = sp->point(p).ideal;
    int home = -1;
    bool unique_home = true;
    for (size_t i = 0; i < k; ++i) {
      // Proper in slot i means some component value of slot i is missing.
      std::vector<char> hit(static_cast<size_t>(radix[i]), 0);
      for (auto e : Q.elements()) hit[static_cast<size_t>(component(e, i))] = 1;
      bool full_slot = std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
      if (!full_slot) {
        if (home >= 0) unique_home = false;
        home = static_cast<int>(i);
      }
    }
    if (home < 0 || !unique_home) {
      partition_ok = false;
      continue;
    }
    d.blocks[static_cast<size_t>(home)].push_back(p);
    assigned[static_cast<size_t>(p)] = 1;
  }
  partition_ok = partition_ok &&
                 std::all_of(assigned.begin(), assigned.end(), [](char c) { return c != 0; });
  d.is_partition = partition_ok;

  TopologyLattice topo = topology_lattice(sp);

  // Clopen: each block and its complement are closed.
  bool clopen = true;
  for (const auto& block : d.blocks) {
    std::vector<int> comp;
    for (int p = 0; p < sp->size(); ++p)
      if (!std::binary_search(block.begin(), block.end(), p)) comp.push_back(p);
    if (topo.index_of_point_set(block) < 0 || topo.index_of_point_set(comp) < 0) clopen = false;
  }
  d.blocks_clopen = clopen;

  // Per-factor homeomorphism: the index embedding is a bijection onto the
  // block and matches the closed-set families on both sides.
  bool homeo = true;
  d.factor_counts.assign(k, 0);
  for (size_t i = 0; i < k; ++i) {
    SpectrumPtr fsp = make_spectrum(factors[i], kind);
    d.factor_counts[i] = fsp->size();
    // Embed: component i ranges over the factor ideal, others over all.
    auto embed = [&](const Ideal& Qi) {
      std::vector<std::uint16_t> elems;
      for (int e = 0; e < ring->order(); ++e)
        if (Qi.contains(component(e, i))) elems.push_back(static_cast<std::uint16_t>(e));
      return Ideal(ring, std::move(elems));
    };
    std::vector<int> image;
    bool embeds = true;
    for (int q = 0; q < fsp->size(); ++q) {
      int idx = sp->point_index(embed(fsp->point(q).ideal));
      if (idx < 0) {
        embeds = false;
        break;
      }
      image.push_back(idx);
    }
    std::sort(image.begin(), image.end());
    if (!embeds || image != d.blocks[i]) {
      homeo = false;
      continue;
    }
    // Compare induced topology on the block with the factor topology.
    std::vector<int> order_map(static_cast<size_t>(fsp->size()));
    for (int q = 0; q < fsp->size(); ++q)
      order_map[static_cast<size_t>(q)] = sp->point_index(embed(fsp->point(q).ideal));
    TopologyLattice ftopo = topology_lattice(fsp);
    std::vector<std::vector<int>> factor_family;
    for (int c = 0; c < ftopo.size(); ++c) {
      std::vector<int> mapped;
      for (int q : ftopo[c].points) mapped.push_back(order_map[static_cast<size_t>(q)]);
      std::sort(mapped.begin(), mapped.end());
      factor_family.push_back(std::move(mapped));
    }
    std::sort(factor_family.begin(), factor_family.end());
    factor_family.erase(std::unique(factor_family.begin(), factor_family.end()),
                        factor_family.end());
    std::vector<std::vector<int>> induced_family;
    for (int c = 0; c < topo.size(); ++c) {
      std::vector<int> inter;
      std::set_intersection(topo[c].points.begin(), topo[c].points.end(), d.blocks[i].begin(),
                            d.blocks[i].end(), std::back_inserter(inter));
      induced_family.push_back(std::move(inter));
    }
    std::sort(induced_family.begin(), induced_family.end());
    induced_family.erase(std::unique(induced_family.begin(), induced_family.end()),
                         induced_family.end());
    if (factor_family != induced_family) homeo = false;
  }
  d.blocks_homeomorphic = homeo;

  d.disjoint_union_count = 0;
  d.product_count = 1;
  for (long long c : d.factor_counts) {
    d.disjoint_union_count += c;
    d.product_count *= c;
  }
  d.matches_disjoint_union = d.disjoint_union_count == sp->size();
  d.matches_product = d.product_count == sp->size();
  return d;
}

}  // namespace qprim
