#include "qprim/sheaf.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace qprim {

namespace {

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Index maps between two rings produced by the same deterministic
// construction should be literally equal; this is the cheap exact test.
bool same_tables(const FiniteRing& a, const FiniteRing& b) {
  if (a.order() != b.order() || a.one() != b.one()) return false;
  for (int x = 0; x < a.order(); ++x)
    for (int y = 0; y < a.order(); ++y)
      if (a.add(x, y) != b.add(x, y) || a.mul(x, y) != b.mul(x, y)) return false;
  return true;
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace

// ---------------------------------------------------------------------------
// SheafAssignment
// ---------------------------------------------------------------------------

SheafAssignment::SheafAssignment(SpectrumPtr spectrum)
    : spectrum_(spectrum), topology_(topology_lattice(spectrum)) {
  const RingPtr& ring = spectrum_->ring();
  const int n = ring->order();
  element_class_.assign(static_cast<size_t>(n), -1);

  std::map<std::vector<int>, int> class_of_points;
  for (int a = 0; a < n; ++a) {
    OpenSet u = basic_open(spectrum_, a);
    auto it = class_of_points.find(u.points);
    if (it == class_of_points.end()) {
      int idx = static_cast<int>(classes_.size());
      class_of_points.emplace(u.points, idx);
      ElementLocalization el = localize_element(ring, a);
      classes_.push_back(BasicOpenClass{a, {static_cast<std::uint16_t>(a)}, std::move(u),
                                        std::move(el.loc)});
      element_class_[static_cast<size_t>(a)] = idx;
    } else {
      classes_[static_cast<size_t>(it->second)].members.push_back(static_cast<std::uint16_t>(a));
      element_class_[static_cast<size_t>(a)] = it->second;
    }
  }

  // Restriction maps, induced on the quotient realizations: the map pins
  // can_big(x) -> can_small(x), well defined because shrinking the open
  // grows the kernel.
  const int k = class_count();
  res_.assign(static_cast<size_t>(k), std::vector<std::optional<RingHom>>(static_cast<size_t>(k)));
  for (int big = 0; big < k; ++big) {
    for (int small = 0; small < k; ++small) {
      if (!subset(classes_[static_cast<size_t>(small)].open.points,
                  classes_[static_cast<size_t>(big)].open.points))
        continue;
      const LocalizedRing& lb = classes_[static_cast<size_t>(big)].loc;
      const LocalizedRing& ls = classes_[static_cast<size_t>(small)].loc;
      std::vector<int> map(static_cast<size_t>(lb.result->order()), -1);
      for (int x = 0; x < n; ++x) {
        int from = lb.canonical.apply(x);
        int to = ls.canonical.apply(x);
        if (map[static_cast<size_t>(from)] < 0)
          map[static_cast<size_t>(from)] = to;
        else if (map[static_cast<size_t>(from)] != to)
          throw Error("restriction map ill-defined between classes " + std::to_string(big) +
                      " and " + std::to_string(small));
      }
      res_[static_cast<size_t>(big)][static_cast<size_t>(small)] =
          build_hom(lb.result, ls.result, map);
    }
  }
}

bool SheafAssignment::open_leq(int small_class, int big_class) const {
  return subset(classes_[static_cast<size_t>(small_class)].open.points,
                classes_[static_cast<size_t>(big_class)].open.points);
}

const RingHom& SheafAssignment::restriction(int big_class, int small_class) const {
  const auto& h = res_[static_cast<size_t>(big_class)][static_cast<size_t>(small_class)];
  if (!h)
    throw NotContained("no restriction: class " + std::to_string(small_class) +
                       " is not contained in class " + std::to_string(big_class));
  return *h;
}

SheafAssignment build_sheaf(SpectrumPtr spectrum) { return SheafAssignment(std::move(spectrum)); }

// ---------------------------------------------------------------------------
// Sections
// ---------------------------------------------------------------------------

int SectionRing::tuple_index(const std::vector<std::uint16_t>& t) const {
  auto it = std::lower_bound(tuples.begin(), tuples.end(), t);
  if (it != tuples.end() && *it == t) return static_cast<int>(it - tuples.begin());
  return -1;
}

namespace {

// Enumerates all assignments var -> component value satisfying the given
// forcing edges (value of child = res(value of parent)). Variables are
// processed largest open first, so every constraint has its parent side
// assigned before the child side.
std::vector<std::vector<std::uint16_t>> enumerate_compatible(
    const SheafAssignment& sheaf, const std::vector<int>& vars,
    const std::vector<std::pair<int, int>>& edges /* (big var pos, small var pos) */) {
  const size_t nv = vars.size();
  // parents[i]: positions j with an edge (j, i).
  std::vector<std::vector<int>> parents(nv);
  for (auto [big, small] : edges) parents[static_cast<size_t>(small)].push_back(big);

  std::vector<std::vector<std::uint16_t>> out;
  std::vector<std::uint16_t> value(nv, 0);
  std::function<void(size_t)> rec = [&](size_t pos) {
    if (pos == nv) {
      out.push_back(value);
      return;
    }
    const int cls = vars[pos];
    const int order = sheaf.basic_class(cls).loc.result->order();
    if (parents[pos].empty()) {
      for (int v = 0; v < order; ++v) {
        value[pos] = static_cast<std::uint16_t>(v);
        rec(pos + 1);
      }
      return;
    }
    int forced = -1;
    bool consistent = true;
    for (int par : parents[pos]) {
      int v = sheaf.restriction(vars[static_cast<size_t>(par)], cls)
                  .apply(value[static_cast<size_t>(par)]);
      if (forced < 0)
        forced = v;
      else if (forced != v) {
        consistent = false;
        break;
      }
    }
    if (!consistent) return;
    value[pos] = static_cast<std::uint16_t>(forced);
    rec(pos + 1);
  };
  rec(0);
  return out;
}

// Variable processing order: largest open first, class index as tiebreak.
// Returns positions_in_vars sorted accordingly plus the permutation back to
// storage order.
std::vector<int> processing_order(const SheafAssignment& sheaf, const std::vector<int>& vars) {
  std::vector<int> order(vars.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& pa = sheaf.basic_class(vars[static_cast<size_t>(a)]).open.points;
    const auto& pb = sheaf.basic_class(vars[static_cast<size_t>(b)]).open.points;
    if (pa.size() != pb.size()) return pa.size() > pb.size();
    return vars[static_cast<size_t>(a)] < vars[static_cast<size_t>(b)];
  });
  return order;
}

}  // namespace

SectionRing sections(const SheafAssignment& sheaf, const OpenSet& u) {
  std::vector<int> class_idxs;
  for (int c = 0; c < sheaf.class_count(); ++c)
    if (subset(sheaf.basic_class(c).open.points, u.points)) class_idxs.push_back(c);

  // Reorder for enumeration: big opens first so contained ones are forced.
  std::vector<int> order = processing_order(sheaf, class_idxs);
  std::vector<int> proc_vars;
  proc_vars.reserve(order.size());
  for (int pos : order) proc_vars.push_back(class_idxs[static_cast<size_t>(pos)]);
  std::vector<std::pair<int, int>> edges;
  for (size_t i = 0; i < proc_vars.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (sheaf.open_leq(proc_vars[i], proc_vars[j]))
        edges.emplace_back(static_cast<int>(j), static_cast<int>(i));
  auto proc_tuples = enumerate_compatible(sheaf, proc_vars, edges);

  // Back to storage order (ascending class index), then canonical sort.
  std::vector<std::vector<std::uint16_t>> tuples;
  tuples.reserve(proc_tuples.size());
  for (const auto& pt : proc_tuples) {
    std::vector<std::uint16_t> t(class_idxs.size());
    for (size_t i = 0; i < order.size(); ++i) t[static_cast<size_t>(order[i])] = pt[i];
    tuples.push_back(std::move(t));
  }
  std::sort(tuples.begin(), tuples.end());

  const int m = static_cast<int>(tuples.size());
  auto index_of = [&](const std::vector<std::uint16_t>& t) {
    auto it = std::lower_bound(tuples.begin(), tuples.end(), t);
    if (it == tuples.end() || *it != t)
      throw Error("sections: componentwise operation left the compatible set (internal)");
    return static_cast<int>(it - tuples.begin());
  };

  std::vector<std::uint16_t> add(static_cast<size_t>(m) * m), mul(static_cast<size_t>(m) * m);
  std::vector<std::uint16_t> tmp(class_idxs.size());
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      for (size_t c = 0; c < class_idxs.size(); ++c)
        tmp[c] = static_cast<std::uint16_t>(sheaf.basic_class(class_idxs[c])
                                                .loc.result->add(tuples[static_cast<size_t>(a)][c],
                                                                 tuples[static_cast<size_t>(b)][c]));
      add[static_cast<size_t>(a) * m + b] = static_cast<std::uint16_t>(index_of(tmp));
      for (size_t c = 0; c < class_idxs.size(); ++c)
        tmp[c] = static_cast<std::uint16_t>(sheaf.basic_class(class_idxs[c])
                                                .loc.result->mul(tuples[static_cast<size_t>(a)][c],
                                                                 tuples[static_cast<size_t>(b)][c]));
      mul[static_cast<size_t>(a) * m + b] = static_cast<std::uint16_t>(index_of(tmp));
    }

  std::vector<std::vector<int>> add_spec(static_cast<size_t>(m), std::vector<int>(static_cast<size_t>(m)));
  auto mul_spec = add_spec;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      add_spec[static_cast<size_t>(a)][static_cast<size_t>(b)] = add[static_cast<size_t>(a) * m + b];
      mul_spec[static_cast<size_t>(a)][static_cast<size_t>(b)] = mul[static_cast<size_t>(a) * m + b];
    }
  RingPtr ring = make_ring_from_tables(
      "sections over " + std::to_string(u.points.size()) + " points of " +
          sheaf.spectrum()->ring()->name(),
      RingSpec::table(std::move(add_spec), std::move(mul_spec)), std::move(add), std::move(mul));
  return SectionRing{u, std::move(class_idxs), std::move(tuples), std::move(ring)};
}

RingHom restrict_section(const SheafAssignment& sheaf, const SectionRing& v,
                         const SectionRing& u) {
  (void)sheaf;
  if (!subset(u.open.points, v.open.points))
    throw NotContained("restrict_section: target open is not contained in the source open");
  std::vector<size_t> sel;
  sel.reserve(u.class_idxs.size());
  for (int c : u.class_idxs) {
    auto it = std::lower_bound(v.class_idxs.begin(), v.class_idxs.end(), c);
    if (it == v.class_idxs.end() || *it != c)
      throw Error("restrict_section: class of the smaller open missing from the larger (internal)");
    sel.push_back(static_cast<size_t>(it - v.class_idxs.begin()));
  }
  std::vector<int> map;
  map.reserve(v.tuples.size());
  std::vector<std::uint16_t> t(u.class_idxs.size());
  for (const auto& tuple : v.tuples) {
    for (size_t i = 0; i < sel.size(); ++i) t[i] = tuple[sel[i]];
    int idx = u.tuple_index(t);
    if (idx < 0) throw Error("restrict_section: projected tuple is not compatible (internal)");
    map.push_back(idx);
  }
  return build_hom(v.ring, u.ring, map);
}

bool presheaf_laws_hold(const SheafAssignment& sheaf, std::string* why) {
  const int k = sheaf.class_count();
  for (int i = 0; i < k; ++i) {
    const RingHom& id = sheaf.restriction(i, i);
    for (int x = 0; x < id.source()->order(); ++x)
      if (id.apply(x) != x) {
        if (why) *why = "restriction of class " + std::to_string(i) + " to itself is not identity";
        return false;
      }
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j || !sheaf.open_leq(j, i)) continue;
      for (int l = 0; l < k; ++l) {
        if (!sheaf.open_leq(l, j)) continue;
        const RingHom& ij = sheaf.restriction(i, j);
        const RingHom& jl = sheaf.restriction(j, l);
        const RingHom& il = sheaf.restriction(i, l);
        for (int x = 0; x < ij.source()->order(); ++x)
          if (jl.apply(ij.apply(x)) != il.apply(x)) {
            if (why)
              *why = "restrictions do not compose along chain " + std::to_string(i) + " -> " +
                     std::to_string(j) + " -> " + std::to_string(l);
            return false;
          }
      }
    }
  return true;
}

bool restriction_matches_fraction_formula(const SheafAssignment& sheaf, int big_class,
                                          int small_class, std::string* why) {
  if (!sheaf.open_leq(small_class, big_class)) throw NotContained("not a containment pair");
  const RingPtr& ring = sheaf.spectrum()->ring();
  const int a = sheaf.basic_class(small_class).representative;
  const int b = sheaf.basic_class(big_class).representative;
  const LocalizedRing& lb = sheaf.basic_class(big_class).loc;
  const LocalizedRing& la = sheaf.basic_class(small_class).loc;
  const RingHom& res = sheaf.restriction(big_class, small_class);

  auto unit_inverse = [](const FiniteRing& r, int u) {
    for (int x = 0; x < r.order(); ++x)
      if (r.mul(u, x) == r.one()) return x;
    throw Error("fraction formula: denominator image is not a unit");
  };
  const int inv_b = unit_inverse(*lb.result, lb.canonical.apply(b));
  const int inv_a = unit_inverse(*la.result, la.canonical.apply(a));

  // All witness pairs (n, t) with a^n = t*b, capped for the larger rings.
  int witnesses = 0;
  for (int n = 1; n <= ring->order() && witnesses < 8; ++n) {
    const int an = ring->pow(a, n);
    for (int t = 0; t < ring->order() && witnesses < 8; ++t) {
      if (ring->mul(t, b) != an) continue;
      ++witnesses;
      for (int m = 0; m <= 3; ++m) {
        const int denom_b = lb.result->pow(inv_b, m);
        const int denom_a = la.result->pow(inv_a, static_cast<long long>(n) * m);
        const int t_pow = la.result->pow(la.canonical.apply(t), m);
        for (int r = 0; r < ring->order(); ++r) {
          int lhs = res.apply(lb.result->mul(lb.canonical.apply(r), denom_b));
          int rhs = la.result->mul(t_pow, la.result->mul(la.canonical.apply(r), denom_a));
          if (lhs != rhs) {
            if (why)
              *why = "fraction formula disagrees at r=" + std::to_string(r) +
                     " m=" + std::to_string(m) + " witness (n=" + std::to_string(n) +
                     ", t=" + std::to_string(t) + ")";
            return false;
          }
        }
      }
    }
  }
  if (witnesses == 0) {
    if (why) *why = "no witness pair found for a containment (internal)";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Sheaf axioms
// ---------------------------------------------------------------------------

SheafAxiomReport check_sheaf_axioms(const SheafAssignment& sheaf, int cover_cap_log2) {
  SheafAxiomReport rep;
  std::vector<OpenSet> opens = sheaf.topology().opens();
  std::sort(opens.begin(), opens.end(),
            [](const OpenSet& a, const OpenSet& b) { return a.points < b.points; });

  std::map<std::vector<int>, SectionRing> memo;
  auto get_sections = [&](const OpenSet& u) -> const SectionRing& {
    auto it = memo.find(u.points);
    if (it == memo.end()) it = memo.emplace(u.points, sections(sheaf, u)).first;
    return it->second;
  };

  for (const OpenSet& u : opens) {
    ++rep.opens_checked;
    std::vector<int> subs;
    for (size_t i = 0; i < opens.size(); ++i)
      if (subset(opens[i].points, u.points)) subs.push_back(static_cast<int>(i));
    const int m = static_cast<int>(subs.size());

    long long masks = 1LL << std::min(m, cover_cap_log2);
    if (m > cover_cap_log2) rep.truncated = true;

    const SectionRing& fu = get_sections(u);

    for (long long mask = 0; mask < masks; ++mask) {
      // Union of the selected opens must be exactly u.
      std::vector<char> in_union(static_cast<size_t>(sheaf.spectrum()->size()), 0);
      for (int b = 0; b < m; ++b)
        if (mask & (1LL << b))
          for (int p : opens[static_cast<size_t>(subs[static_cast<size_t>(b)])].points)
            in_union[static_cast<size_t>(p)] = 1;
      std::vector<int> uni;
      for (int p = 0; p < sheaf.spectrum()->size(); ++p)
        if (in_union[static_cast<size_t>(p)]) uni.push_back(p);
      if (uni != u.points) continue;
      ++rep.covers_checked;

      // Family variables: classes contained in some cover member.
      // Constraints: containment pairs that fit inside one member.
      std::vector<int> vars;
      std::vector<std::vector<int>> member_classes;
      for (int b = 0; b < m; ++b) {
        if (!(mask & (1LL << b))) continue;
        const OpenSet& o = opens[static_cast<size_t>(subs[static_cast<size_t>(b)])];
        std::vector<int> mc;
        for (int c = 0; c < sheaf.class_count(); ++c)
          if (subset(sheaf.basic_class(c).open.points, o.points)) mc.push_back(c);
        for (int c : mc) vars.push_back(c);
        member_classes.push_back(std::move(mc));
      }
      std::sort(vars.begin(), vars.end());
      vars.erase(std::unique(vars.begin(), vars.end()), vars.end());

      std::vector<int> order = processing_order(sheaf, vars);
      std::vector<int> proc_vars;
      for (int pos : order) proc_vars.push_back(vars[static_cast<size_t>(pos)]);
      std::vector<int> proc_pos_of_class(static_cast<size_t>(sheaf.class_count()), -1);
      for (size_t i = 0; i < proc_vars.size(); ++i)
        proc_pos_of_class[static_cast<size_t>(proc_vars[i])] = static_cast<int>(i);

      std::vector<std::pair<int, int>> edges;
      for (const auto& mc : member_classes)
        for (int c1 : mc)
          for (int c2 : mc) {
            if (c1 == c2) continue;
            if (sheaf.open_leq(c1, c2)) {
              int big = proc_pos_of_class[static_cast<size_t>(c2)];
              int small = proc_pos_of_class[static_cast<size_t>(c1)];
              if (big < small) edges.emplace_back(big, small);
            }
          }
      std::sort(edges.begin(), edges.end());
      edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

      auto proc_families = enumerate_compatible(sheaf, proc_vars, edges);
      std::vector<std::vector<std::uint16_t>> families;
      families.reserve(proc_families.size());
      for (const auto& pf : proc_families) {
        std::vector<std::uint16_t> f(vars.size());
        for (size_t i = 0; i < order.size(); ++i) f[static_cast<size_t>(order[i])] = pf[i];
        families.push_back(std::move(f));
      }
      std::sort(families.begin(), families.end());

      // Project sections of u onto the family variables.
      std::vector<size_t> sel;
      for (int c : vars) {
        auto it = std::lower_bound(fu.class_idxs.begin(), fu.class_idxs.end(), c);
        sel.push_back(static_cast<size_t>(it - fu.class_idxs.begin()));
      }
      std::vector<std::vector<std::uint16_t>> projections;
      projections.reserve(fu.tuples.size());
      for (const auto& t : fu.tuples) {
        std::vector<std::uint16_t> p(vars.size());
        for (size_t i = 0; i < sel.size(); ++i) p[i] = t[sel[i]];
        projections.push_back(std::move(p));
      }
      std::sort(projections.begin(), projections.end());
      bool injective =
          std::adjacent_find(projections.begin(), projections.end()) == projections.end();

      if (!injective || projections != families) {
        rep.ok = false;
        if (rep.failure.empty()) {
          rep.failure = injective ? "gluing failed: compatible family without a unique section"
                                  : "identity failed: two sections with equal restrictions";
          nlohmann::json cover = nlohmann::json::array();
          for (int b = 0; b < m; ++b)
            if (mask & (1LL << b))
              cover.push_back(opens[static_cast<size_t>(subs[static_cast<size_t>(b)])].points);
          rep.counterexample = {{"open", u.points},
                                {"cover", cover},
                                {"sections", static_cast<int>(fu.tuples.size())},
                                {"families", static_cast<int>(families.size())}};
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Stalks
// ---------------------------------------------------------------------------

StalkResult stalk(const SheafAssignment& sheaf, int point_idx) {
  StalkResult out;
  out.point = point_idx;

  std::vector<int> cls;
  for (int c = 0; c < sheaf.class_count(); ++c)
    if (sheaf.basic_class(c).open.contains(point_idx)) cls.push_back(c);
  if (cls.empty()) throw Error("stalk: no basic open contains the point (internal)");

  // The intersection of all basic opens through the point is itself basic;
  // that class realizes the direct limit.
  std::vector<int> inter = sheaf.basic_class(cls[0]).open.points;
  for (int c : cls) {
    std::vector<int> next;
    const auto& pts = sheaf.basic_class(c).open.points;
    std::set_intersection(inter.begin(), inter.end(), pts.begin(), pts.end(),
                          std::back_inserter(next));
    inter = std::move(next);
  }
  int min_class = -1;
  for (int c : cls)
    if (sheaf.basic_class(c).open.points == inter) min_class = c;
  if (min_class < 0)
    throw Error("stalk: intersection of basic opens through the point is not basic (internal)");
  out.min_class = min_class;

  // Eventually-equal quotient of the tagged disjoint union.
  std::vector<int> offset(cls.size() + 1, 0);
  for (size_t i = 0; i < cls.size(); ++i)
    offset[i + 1] = offset[i] + sheaf.basic_class(cls[i]).loc.result->order();
  Dsu dsu(offset.back());
  for (size_t i = 0; i < cls.size(); ++i)
    for (size_t j = 0; j < cls.size(); ++j) {
      if (i == j || !sheaf.open_leq(cls[j], cls[i])) continue;
      const RingHom& res = sheaf.restriction(cls[i], cls[j]);
      for (int v = 0; v < res.source()->order(); ++v)
        dsu.unite(offset[i] + v, offset[j] + res.apply(v));
    }

  size_t min_pos = static_cast<size_t>(std::find(cls.begin(), cls.end(), min_class) - cls.begin());
  const RingPtr& min_ring = sheaf.basic_class(min_class).loc.result;
  std::vector<int> root_of_value(static_cast<size_t>(min_ring->order()));
  std::vector<char> seen_root(static_cast<size_t>(offset.back()), 0);
  for (int v = 0; v < min_ring->order(); ++v) {
    int r = dsu.find(offset[min_pos] + v);
    if (seen_root[static_cast<size_t>(r)])
      throw Error("stalk: two limit elements collapse in the minimal class (internal)");
    seen_root[static_cast<size_t>(r)] = 1;
    root_of_value[static_cast<size_t>(v)] = r;
  }
  for (int node = 0; node < offset.back(); ++node)
    if (!seen_root[static_cast<size_t>(dsu.find(node))])
      throw Error("stalk: limit class not represented in the minimal open (internal)");

  out.ring = min_ring;
  out.is_local = is_local_ring(min_ring);

  // Cross-check against localization at the radical: both are quotients of
  // the ambient ring, so equal kernels force identical tables.
  const Ideal& rad = sheaf.spectrum()->point(point_idx).radical_ideal;
  LocalizedRing at_prime = localize_prime(sheaf.spectrum()->ring(), rad);
  out.matches_prime_localization =
      at_prime.canonical.kernel_elements() ==
          sheaf.basic_class(min_class).loc.canonical.kernel_elements() &&
      same_tables(*at_prime.result, *min_ring);
  return out;
}

// ---------------------------------------------------------------------------
// Direct image
// ---------------------------------------------------------------------------

namespace {

OpenSet open_from_points(const TopologyLattice& topo, const std::vector<int>& pts) {
  std::vector<int> comp;
  for (int p = 0; p < topo.spectrum()->size(); ++p)
    if (!std::binary_search(pts.begin(), pts.end(), p)) comp.push_back(p);
  int idx = topo.index_of_point_set(comp);
  if (idx < 0) throw Error("open_from_points: complement is not closed");
  return complement(topo[idx]);
}

}  // namespace

DirectImageReport direct_image_check(const RingPtr& ring) {
  DirectImageReport rep;
  auto fail = [&](std::string why) {
    rep.ok = false;
    if (rep.failure.empty()) rep.failure = std::move(why);
  };

  IdealLattice lattice = all_ideals(ring);
  SpectrumPtr qp = make_spectrum(ring, SpectrumKind::QPrim, lattice);
  SpectrumPtr sp = make_spectrum(ring, SpectrumKind::Spec, lattice);
  SheafAssignment fq = build_sheaf(qp);
  SheafAssignment fo = build_sheaf(sp);

  // The inclusion of prime points into the quasi-primary spectrum.
  std::vector<int> iota(static_cast<size_t>(sp->size()));
  for (int p = 0; p < sp->size(); ++p) {
    int idx = qp->point_index(sp->point(p).ideal);
    if (idx < 0) {
      fail("prime point missing from the larger spectrum");
      return rep;
    }
    iota[static_cast<size_t>(p)] = idx;
  }

  rep.inclusion_continuous = true;
  for (int c = 0; c < fq.topology().size(); ++c) {
    std::vector<int> pre;
    for (int p = 0; p < sp->size(); ++p)
      if (fq.topology()[c].contains(iota[static_cast<size_t>(p)])) pre.push_back(p);
    if (fo.topology().index_of_point_set(pre) < 0) {
      rep.inclusion_continuous = false;
      fail("preimage of a closed set is not closed in the prime spectrum");
    }
  }

  rep.representatives_match = fq.class_count() == fo.class_count();
  for (int a = 0; a < ring->order() && rep.representatives_match; ++a)
    if (fq.basic_class(fq.class_of_element(a)).representative !=
        fo.basic_class(fo.class_of_element(a)).representative)
      rep.representatives_match = false;
  if (!rep.representatives_match) fail("basic-open representative systems differ");

  if (!rep.ok) return rep;

  // Sections agree open by open, and restriction maps coincide.
  std::map<std::vector<int>, SectionRing> memo_q, memo_o;
  auto get_q = [&](const OpenSet& u) -> const SectionRing& {
    auto it = memo_q.find(u.points);
    if (it == memo_q.end()) it = memo_q.emplace(u.points, sections(fq, u)).first;
    return it->second;
  };
  auto get_o = [&](const OpenSet& u) -> const SectionRing& {
    auto it = memo_o.find(u.points);
    if (it == memo_o.end()) it = memo_o.emplace(u.points, sections(fo, u)).first;
    return it->second;
  };

  std::vector<OpenSet> qp_opens = fq.topology().opens();
  std::sort(qp_opens.begin(), qp_opens.end(),
            [](const OpenSet& a, const OpenSet& b) { return a.points < b.points; });
  std::vector<OpenSet> sp_opens;
  for (const OpenSet& u : qp_opens) {
    std::vector<int> pre;
    for (int p = 0; p < sp->size(); ++p)
      if (u.contains(iota[static_cast<size_t>(p)])) pre.push_back(p);
    sp_opens.push_back(open_from_points(fo.topology(), pre));
  }

  for (size_t i = 0; i < qp_opens.size(); ++i) {
    ++rep.opens_checked;
    const SectionRing& su = get_q(qp_opens[i]);
    const SectionRing& so = get_o(sp_opens[i]);
    if (su.class_idxs.size() != so.class_idxs.size()) {
      fail("section systems differ over an open");
      continue;
    }
    bool classes_agree = true;
    for (size_t c = 0; c < su.class_idxs.size(); ++c)
      if (fq.basic_class(su.class_idxs[c]).representative !=
          fo.basic_class(so.class_idxs[c]).representative)
        classes_agree = false;
    if (!classes_agree || su.tuples != so.tuples || !same_tables(*su.ring, *so.ring))
      fail("sections differ over an open with " +
           std::to_string(qp_opens[i].points.size()) + " points");
  }

  rep.restrictions_commute = rep.ok;
  for (size_t i = 0; i < qp_opens.size() && rep.restrictions_commute; ++i)
    for (size_t j = 0; j < qp_opens.size(); ++j) {
      if (i == j || !subset(qp_opens[j].points, qp_opens[i].points)) continue;
      RingHom rq = restrict_section(fq, get_q(qp_opens[i]), get_q(qp_opens[j]));
      RingHom ro = restrict_section(fo, get_o(sp_opens[i]), get_o(sp_opens[j]));
      for (int x = 0; x < rq.source()->order(); ++x)
        if (rq.apply(x) != ro.apply(x)) {
          rep.restrictions_commute = false;
          fail("restriction maps disagree between the two sheaves");
          break;
        }
    }

  // Global sections recover the ring through the per-class canonical maps.
  {
    OpenSet full = open_from_points(fq.topology(), [&] {
      std::vector<int> all(static_cast<size_t>(qp->size()));
      std::iota(all.begin(), all.end(), 0);
      return all;
    }());
    const SectionRing& g = get_q(full);
    std::vector<int> to_sections;
    bool good = true;
    for (int r = 0; r < ring->order(); ++r) {
      std::vector<std::uint16_t> t(g.class_idxs.size());
      for (size_t c = 0; c < g.class_idxs.size(); ++c)
        t[c] = static_cast<std::uint16_t>(
            fq.basic_class(g.class_idxs[c]).loc.canonical.apply(r));
      int idx = g.tuple_index(t);
      if (idx < 0) {
        good = false;
        break;
      }
      to_sections.push_back(idx);
    }
    if (good) {
      RingHom h = build_hom(ring, g.ring, to_sections);
      rep.global_sections_match = h.is_bijective();
    }
    if (!rep.global_sections_match) fail("global sections do not recover the ring");
  }
  return rep;
}

}  // namespace qprim
