#include "qprim/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>

#include "qprim/dot_export.hpp"
#include "qprim/isomorphism.hpp"
#include "qprim/json_io.hpp"
#include "qprim/sheaf.hpp"

namespace qprim {

using nlohmann::json;

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::SkippedCap: return "skipped(cap)";
  }
  return "?";
}

Corpus Corpus::default_corpus() {
  Corpus c;
  for (int n : {2, 3, 4, 6, 8, 9, 12, 16, 24, 36, 60})
    c.entries.push_back({"Z/" + std::to_string(n), RingSpec::zmod(n)});
  c.entries.push_back({"F2[x]/(x^2)", RingSpec::poly_quotient(RingSpec::zmod(2), {0, 0, 1})});
  c.entries.push_back({"F2[x]/(x^3)", RingSpec::poly_quotient(RingSpec::zmod(2), {0, 0, 0, 1})});
  c.entries.push_back({"F3[x]/(x^2)", RingSpec::poly_quotient(RingSpec::zmod(3), {0, 0, 1})});
  c.entries.push_back({"F2[x]/(x^2+x+1)", RingSpec::poly_quotient(RingSpec::zmod(2), {1, 1, 1})});
  c.entries.push_back({"Z/2 x Z/2", RingSpec::product({RingSpec::zmod(2), RingSpec::zmod(2)})});
  c.entries.push_back({"Z/4 x Z/3", RingSpec::product({RingSpec::zmod(4), RingSpec::zmod(3)})});
  c.entries.push_back(
      {"Z/2 x Z/2 x Z/3",
       RingSpec::product({RingSpec::zmod(2), RingSpec::zmod(2), RingSpec::zmod(3)})});
  c.entries.push_back(
      {"Z/4 x F2[x]/(x^2)",
       RingSpec::product({RingSpec::zmod(4),
                          RingSpec::poly_quotient(RingSpec::zmod(2), {0, 0, 1})})});
  return c;
}

Corpus corpus_from_json(const json& j) {
  if (!j.is_array()) throw InputError("corpus: expected an array of {label, spec} objects");
  Corpus c;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("spec"))
      throw InputError("corpus: each entry needs a \"spec\"");
    RingSpec spec = ring_spec_from_json(e["spec"]);
    std::string label =
        e.contains("label") && e["label"].is_string() ? e["label"].get<std::string>() : spec.label();
    c.entries.push_back({std::move(label), std::move(spec)});
  }
  return c;
}

// ---------------------------------------------------------------------------
// Per-ring analysis context, built lazily and shared across checks
// ---------------------------------------------------------------------------

namespace {

int kind_index(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::Spec: return 0;
    case SpectrumKind::Prim: return 1;
    case SpectrumKind::QPrim: return 2;
  }
  return 2;
}

struct RingContext {
  RingPtr ring;
  std::string label;
  const SuiteOptions& opts;

  std::optional<IdealLattice> lattice_;
  SpectrumPtr spectra_[3];
  std::optional<TopologyLattice> topologies_[3];
  std::optional<SheafAssignment> sheaves_[3];
  std::optional<std::vector<std::vector<int>>> basic_points_;  // U_a per element
  std::optional<std::vector<Ideal>> principal_radicals_;

  RingContext(RingPtr r, std::string l, const SuiteOptions& o)
      : ring(std::move(r)), label(std::move(l)), opts(o) {}

  const IdealLattice& lattice() {
    if (!lattice_) lattice_ = all_ideals(ring, opts.ideal_cap);
    return *lattice_;
  }
  SpectrumPtr spectrum(SpectrumKind k) {
    int i = kind_index(k);
    if (!spectra_[i]) spectra_[i] = make_spectrum(ring, k, lattice());
    return spectra_[i];
  }
  const TopologyLattice& topology(SpectrumKind k) {
    int i = kind_index(k);
    if (!topologies_[i]) topologies_[i] = topology_lattice(spectrum(k));
    return *topologies_[i];
  }
  const SheafAssignment& sheaf(SpectrumKind k) {
    int i = kind_index(k);
    if (!sheaves_[i]) sheaves_[i] = build_sheaf(spectrum(k));
    return *sheaves_[i];
  }
  const std::vector<std::vector<int>>& basic_points() {
    if (!basic_points_) {
      std::vector<std::vector<int>> out;
      SpectrumPtr sp = spectrum(SpectrumKind::QPrim);
      for (int a = 0; a < ring->order(); ++a) out.push_back(basic_open(sp, a).points);
      basic_points_ = std::move(out);
    }
    return *basic_points_;
  }
  const std::vector<Ideal>& principal_radicals() {
    if (!principal_radicals_) {
      std::vector<Ideal> out;
      for (int a = 0; a < ring->order(); ++a) out.push_back(radical(generate(ring, {a})));
      principal_radicals_ = std::move(out);
    }
    return *principal_radicals_;
  }

  std::mt19937_64 rng(const std::string& check_id) const {
    std::uint64_t h = opts.seed;
    for (char c : check_id) h = h * 1099511628211ULL + static_cast<unsigned char>(c);
    for (char c : label) h = h * 1099511628211ULL + static_cast<unsigned char>(c);
    return std::mt19937_64(h);
  }
};

struct Outcome {
  CheckStatus status = CheckStatus::Pass;
  json counterexample;
  json info;
  bool sampled = false;
  bool hard_cap = false;
};

Outcome pass_outcome() { return Outcome{}; }

Outcome fail_outcome(json counterexample) {
  Outcome o;
  o.status = CheckStatus::Fail;
  o.counterexample = std::move(counterexample);
  return o;
}

json ideal_json(const Ideal& I) { return json(I.elements()); }

// Pairs (or triples) of lattice indexes: exhaustive when the lattice is
// small, a seeded uniform sample otherwise.
std::vector<std::vector<int>> tuple_plan(RingContext& ctx, const std::string& check_id,
                                         int arity, bool* sampled) {
  const int l = ctx.lattice().size();
  std::vector<std::vector<int>> out;
  if (l <= ctx.opts.exhaustive_lattice_limit) {
    *sampled = false;
    std::vector<int> t(static_cast<size_t>(arity), 0);
    std::function<void(int)> rec = [&](int pos) {
      if (pos == arity) {
        out.push_back(t);
        return;
      }
      for (int i = 0; i < l; ++i) {
        t[static_cast<size_t>(pos)] = i;
        rec(pos + 1);
      }
    };
    rec(0);
  } else {
    *sampled = true;
    auto rng = ctx.rng(check_id);
    std::uniform_int_distribution<int> pick(0, l - 1);
    for (int s = 0; s < ctx.opts.sample_count; ++s) {
      std::vector<int> t(static_cast<size_t>(arity));
      for (int& x : t) x = pick(rng);
      out.push_back(std::move(t));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

Outcome check_vq_identities(RingContext& ctx) {
  SpectrumPtr sp = ctx.spectrum(SpectrumKind::QPrim);
  const IdealLattice& lat = ctx.lattice();

  std::vector<int> all_points(static_cast<size_t>(sp->size()));
  for (int i = 0; i < sp->size(); ++i) all_points[static_cast<size_t>(i)] = i;
  if (v_q(sp, zero_ideal(ctx.ring)).points != all_points)
    return fail_outcome({{"identity", "V(0) != whole space"}});
  if (!v_q(sp, unit_ideal(ctx.ring)).points.empty())
    return fail_outcome({{"identity", "V(R) != empty"}});

  std::vector<std::vector<int>> vq(static_cast<size_t>(lat.size()));
  for (int i = 0; i < lat.size(); ++i) vq[static_cast<size_t>(i)] = v_q(sp, lat[i]).points;

  for (int i = 0; i < lat.size(); ++i) {
    if (v_q(sp, radical(lat[i])).points != vq[static_cast<size_t>(i)])
      return fail_outcome({{"identity", "V(I) != V(radical I)"}, {"I", ideal_json(lat[i])}});
    for (int j = 0; j < lat.size(); ++j) {
      const auto& vi = vq[static_cast<size_t>(i)];
      const auto& vj = vq[static_cast<size_t>(j)];
      if (lat.leq(i, j) && !std::includes(vi.begin(), vi.end(), vj.begin(), vj.end()))
        return fail_outcome(
            {{"identity", "I <= J but V(J) not inside V(I)"}, {"I", ideal_json(lat[i])},
             {"J", ideal_json(lat[j])}});
      std::vector<int> uni;
      std::set_union(vi.begin(), vi.end(), vj.begin(), vj.end(), std::back_inserter(uni));
      if (v_q(sp, intersect(lat[i], lat[j])).points != uni ||
          v_q(sp, product(lat[i], lat[j])).points != uni)
        return fail_outcome({{"identity", "V(I cap J) = V(IJ) = V(I) u V(J) fails"},
                             {"I", ideal_json(lat[i])},
                             {"J", ideal_json(lat[j])}});
      std::vector<int> inter;
      std::set_intersection(vi.begin(), vi.end(), vj.begin(), vj.end(),
                            std::back_inserter(inter));
      if (v_q(sp, sum(lat[i], lat[j])).points != inter)
        return fail_outcome({{"identity", "V(I+J) = V(I) cap V(J) fails"},
                             {"I", ideal_json(lat[i])},
                             {"J", ideal_json(lat[j])}});
    }
  }

  Outcome o;
  for (const auto& t : tuple_plan(ctx, "C01", 3, &o.sampled)) {
    Ideal s = sum(sum(lat[t[0]], lat[t[1]]), lat[t[2]]);
    std::vector<int> inter;
    std::set_intersection(vq[static_cast<size_t>(t[0])].begin(), vq[static_cast<size_t>(t[0])].end(),
                          vq[static_cast<size_t>(t[1])].begin(), vq[static_cast<size_t>(t[1])].end(),
                          std::back_inserter(inter));
    std::vector<int> inter3;
    std::set_intersection(inter.begin(), inter.end(), vq[static_cast<size_t>(t[2])].begin(),
                          vq[static_cast<size_t>(t[2])].end(), std::back_inserter(inter3));
    if (v_q(sp, s).points != inter3)
      return fail_outcome({{"identity", "V(I+J+K) = triple intersection fails"},
                           {"I", ideal_json(lat[t[0]])},
                           {"J", ideal_json(lat[t[1]])},
                           {"K", ideal_json(lat[t[2]])}});
  }
  return o;
}

Outcome check_closed_set_axioms(RingContext& ctx) {
  const TopologyLattice& topo = ctx.topology(SpectrumKind::QPrim);
  std::set<std::vector<int>> family;
  for (int i = 0; i < topo.size(); ++i) family.insert(topo[i].points);

  std::vector<int> all_points(static_cast<size_t>(topo.spectrum()->size()));
  for (size_t i = 0; i < all_points.size(); ++i) all_points[i] = static_cast<int>(i);
  if (!family.count({}) || !family.count(all_points))
    return fail_outcome({{"axiom", "empty or full set missing from the closed family"}});

  for (int i = 0; i < topo.size(); ++i)
    for (int j = 0; j < topo.size(); ++j) {
      std::vector<int> uni, inter;
      std::set_union(topo[i].points.begin(), topo[i].points.end(), topo[j].points.begin(),
                     topo[j].points.end(), std::back_inserter(uni));
      std::set_intersection(topo[i].points.begin(), topo[i].points.end(),
                            topo[j].points.begin(), topo[j].points.end(),
                            std::back_inserter(inter));
      if (!family.count(uni))
        return fail_outcome({{"axiom", "union of two closed sets not closed"},
                             {"i", i},
                             {"j", j}});
      if (!family.count(inter))
        return fail_outcome({{"axiom", "intersection of two closed sets not closed"},
                             {"i", i},
                             {"j", j}});
    }

  // Intersection of the entire family at once.
  std::vector<int> total = all_points;
  for (int i = 0; i < topo.size(); ++i) {
    std::vector<int> next;
    std::set_intersection(total.begin(), total.end(), topo[i].points.begin(),
                          topo[i].points.end(), std::back_inserter(next));
    total = std::move(next);
  }
  if (!family.count(total))
    return fail_outcome({{"axiom", "intersection of the whole family not closed"}});
  return pass_outcome();
}

Outcome check_basis(RingContext& ctx) {
  const TopologyLattice& topo = ctx.topology(SpectrumKind::QPrim);
  const auto& ua = ctx.basic_points();
  for (const OpenSet& u : topo.opens()) {
    std::vector<char> covered(static_cast<size_t>(topo.spectrum()->size()), 0);
    for (int a = 0; a < ctx.ring->order(); ++a) {
      const auto& pts = ua[static_cast<size_t>(a)];
      if (std::includes(u.points.begin(), u.points.end(), pts.begin(), pts.end()))
        for (int p : pts) covered[static_cast<size_t>(p)] = 1;
    }
    std::vector<int> uni;
    for (int p = 0; p < topo.spectrum()->size(); ++p)
      if (covered[static_cast<size_t>(p)]) uni.push_back(p);
    if (uni != u.points)
      return fail_outcome({{"open", u.points}, {"reason", "not a union of basic opens"}});
  }
  return pass_outcome();
}

Outcome check_ua_properties(RingContext& ctx) {
  const auto& ua = ctx.basic_points();
  const auto& rads = ctx.principal_radicals();
  const FiniteRing& r = *ctx.ring;
  const int n = r.order();

  for (int a = 0; a < n; ++a) {
    if ((ua[static_cast<size_t>(a)].empty()) != r.is_nilpotent(a))
      return fail_outcome({{"element", a}, {"reason", "U_a empty iff a nilpotent fails"}});
    for (int b = 0; b < n; ++b) {
      bool same_radical = rads[static_cast<size_t>(a)] == rads[static_cast<size_t>(b)];
      if (same_radical != (ua[static_cast<size_t>(a)] == ua[static_cast<size_t>(b)]))
        return fail_outcome(
            {{"a", a}, {"b", b}, {"reason", "U_a = U_b iff radical((a)) = radical((b)) fails"}});
      std::vector<int> inter;
      std::set_intersection(ua[static_cast<size_t>(a)].begin(), ua[static_cast<size_t>(a)].end(),
                            ua[static_cast<size_t>(b)].begin(), ua[static_cast<size_t>(b)].end(),
                            std::back_inserter(inter));
      if (ua[static_cast<size_t>(r.mul(a, b))] != inter)
        return fail_outcome({{"a", a}, {"b", b}, {"reason", "U_ab = U_a cap U_b fails"}});
      bool pointwise = std::includes(ua[static_cast<size_t>(b)].begin(),
                                     ua[static_cast<size_t>(b)].end(),
                                     ua[static_cast<size_t>(a)].begin(),
                                     ua[static_cast<size_t>(a)].end());
      if (basis_containment(ctx.ring, a, b) != pointwise)
        return fail_outcome(
            {{"a", a}, {"b", b}, {"reason", "U_a inside U_b iff a in radical((b)) fails"}});
    }
  }

  // Finite-subcover witness: the family of basic opens inside U_a is itself
  // a finite cover of U_a. Degenerate at this scale, asserted anyway.
  for (int a = 0; a < n; ++a) {
    std::vector<char> covered(static_cast<size_t>(ctx.spectrum(SpectrumKind::QPrim)->size()), 0);
    long long members = 0;
    for (int b = 0; b < n; ++b)
      if (std::includes(ua[static_cast<size_t>(a)].begin(), ua[static_cast<size_t>(a)].end(),
                        ua[static_cast<size_t>(b)].begin(), ua[static_cast<size_t>(b)].end())) {
        ++members;
        for (int p : ua[static_cast<size_t>(b)]) covered[static_cast<size_t>(p)] = 1;
      }
    std::vector<int> uni;
    for (size_t p = 0; p < covered.size(); ++p)
      if (covered[p]) uni.push_back(static_cast<int>(p));
    if (uni != ua[static_cast<size_t>(a)] || members > n)
      return fail_outcome({{"element", a}, {"reason", "finite basic cover of U_a failed"}});
  }
  return pass_outcome();
}

Outcome check_qp_basics(RingContext& ctx) {
  const IdealLattice& lat = ctx.lattice();
  for (int i = 0; i < lat.size(); ++i) {
    const Ideal& I = lat[i];
    if (is_primary(I) && !is_quasi_primary(I))
      return fail_outcome({{"ideal", ideal_json(I)}, {"reason", "primary but not quasi-primary"}});
    if (is_quasi_primary(I)) {
      auto mins = minimal_primes_over(I, lat);
      if (mins.size() != 1 || !(mins[0] == radical(I)))
        return fail_outcome({{"ideal", ideal_json(I)},
                             {"reason", "quasi-primary ideal without unique minimal prime"}});
    }
  }
  return pass_outcome();
}

Outcome check_localization_spectrum(RingContext& ctx) {
  for (int a = 0; a < ctx.ring->order(); ++a) {
    ContractionExtensionReport rep = contraction_extension_checks(ctx.ring, a);
    if (!rep.ok) return fail_outcome({{"element", a}, {"reason", rep.failure}});
  }
  // Universal property spot checks: factor the carrier realization through
  // the kernel-quotient one.
  int tried = 0;
  for (int a = 0; a < ctx.ring->order() && tried < 3; ++a, ++tried) {
    ElementLocalization el = localize_element(ctx.ring, a);
    UniversalFactorization uf = universal_factorization(el.loc, el.carrier_map);
    if (!uf.exists || !uf.unique)
      return fail_outcome({{"element", a}, {"reason", "universal factorization failed"}});
  }
  return pass_outcome();
}

Outcome check_qp_product_radical(RingContext& ctx) {
  const IdealLattice& lat = ctx.lattice();
  for (int i = 0; i < lat.size(); ++i) {
    if (!is_quasi_primary(lat[i])) continue;
    for (int j = 0; j < lat.size(); ++j) {
      if (!is_quasi_primary(lat[j])) continue;
      if (!radical(lat[j]).contains_ideal(radical(lat[i]))) continue;
      Ideal p = product(lat[i], lat[j]);
      if (!is_quasi_primary(p) || !(radical(p) == radical(lat[i])))
        return fail_outcome({{"Q1", ideal_json(lat[i])},
                             {"Q2", ideal_json(lat[j])},
                             {"product", ideal_json(p)},
                             {"reason", "product not quasi-primary with radical of Q1"}});
    }
  }
  return pass_outcome();
}

Outcome check_vq_product_member(RingContext& ctx) {
  const IdealLattice& lat = ctx.lattice();
  for (int i = 0; i < lat.size(); ++i) {
    if (!is_quasi_primary(lat[i])) continue;
    for (int j = 0; j < lat.size(); ++j) {
      if (!is_quasi_primary(lat[j]) || !lat.leq(i, j)) continue;
      Ideal p = product(lat[i], lat[j]);
      Ideal rad_q1 = radical(lat[i]);
      Ideal rad_p = radical(p);
      for (int k = 0; k < lat.size(); ++k) {
        bool q1_in = rad_q1.contains_ideal(lat[k]);
        bool p_in = is_quasi_primary(p) && rad_p.contains_ideal(lat[k]);
        if (q1_in && !p_in)
          return fail_outcome({{"Q1", ideal_json(lat[i])},
                               {"Q2", ideal_json(lat[j])},
                               {"I", ideal_json(lat[k])},
                               {"reason", "Q1 in V(I) but Q1Q2 not in V(I)"}});
      }
    }
  }
  return pass_outcome();
}

Outcome check_closure_formula(RingContext& ctx) {
  SpectrumPtr sp = ctx.spectrum(SpectrumKind::QPrim);
  const TopologyLattice& topo = ctx.topology(SpectrumKind::QPrim);
  for (int q = 0; q < sp->size(); ++q) {
    ClosedSet cl = closure(sp, q);
    if (cl.points != v_q(sp, sp->point(q).ideal).points)
      return fail_outcome({{"point", ideal_json(sp->point(q).ideal)},
                           {"reason", "closure differs from V(Q)"}});
    std::vector<int> meet;
    bool first = true;
    for (int c = 0; c < topo.size(); ++c) {
      if (!topo[c].contains(q)) continue;
      if (first) {
        meet = topo[c].points;
        first = false;
      } else {
        std::vector<int> next;
        std::set_intersection(meet.begin(), meet.end(), topo[c].points.begin(),
                              topo[c].points.end(), std::back_inserter(next));
        meet = std::move(next);
      }
    }
    if (meet != cl.points)
      return fail_outcome({{"point", ideal_json(sp->point(q).ideal)},
                           {"reason", "closure differs from meet of closed sets containing Q"}});
  }
  return pass_outcome();
}

Outcome check_irreducible_nilradical(RingContext& ctx) {
  const TopologyLattice& topo = ctx.topology(SpectrumKind::QPrim);
  bool irr = ctx.spectrum(SpectrumKind::QPrim)->size() > 0 && space_irreducible(topo);
  Ideal nil = radical(zero_ideal(ctx.ring));
  if (irr != is_quasi_primary(nil))
    return fail_outcome({{"nilradical", ideal_json(nil)},
                         {"space_irreducible", irr},
                         {"reason", "irreducibility does not match the nilradical test"}});
  return pass_outcome();
}

Outcome check_correspondence(RingContext& ctx) {
  SpectrumPtr sp = ctx.spectrum(SpectrumKind::QPrim);
  const TopologyLattice& topo = ctx.topology(SpectrumKind::QPrim);
  std::set<std::vector<int>> closures;
  for (int q = 0; q < sp->size(); ++q) closures.insert(closure(sp, q).points);
  for (int c = 0; c < topo.size(); ++c) {
    bool irr = is_irreducible(topo, topo[c]);
    bool is_closure = closures.count(topo[c].points) > 0;
    if (irr != is_closure)
      return fail_outcome({{"closed", topo[c].points},
                           {"irreducible", irr},
                           {"reason", "irreducible iff point closure fails"}});
  }
  return pass_outcome();
}

Outcome check_closed_decomposition(RingContext& ctx) {
  const TopologyLattice& topo = ctx.topology(SpectrumKind::QPrim);
  for (int c = 0; c < topo.size(); ++c) {
    if (topo[c].points.empty()) continue;
    auto parts = decompose_closed(topo[c]);
    if (parts.empty())
      return fail_outcome({{"closed", topo[c].points}, {"reason", "empty decomposition"}});
    std::vector<int> uni;
    for (const auto& part : parts) {
      if (!is_irreducible(topo, part) || !is_prime(part.witness))
        return fail_outcome({{"closed", topo[c].points},
                             {"reason", "decomposition part not an irreducible prime set"}});
      std::vector<int> next;
      std::set_union(uni.begin(), uni.end(), part.points.begin(), part.points.end(),
                     std::back_inserter(next));
      uni = std::move(next);
    }
    if (uni != topo[c].points)
      return fail_outcome({{"closed", topo[c].points}, {"reason", "decomposition union differs"}});
    for (size_t i = 0; i < parts.size(); ++i)
      for (size_t j = 0; j < parts.size(); ++j)
        if (i != j && std::includes(parts[j].points.begin(), parts[j].points.end(),
                                    parts[i].points.begin(), parts[i].points.end()))
          return fail_outcome(
              {{"closed", topo[c].points}, {"reason", "decomposition not irredundant"}});
  }
  return pass_outcome();
}

Outcome check_generic_points(RingContext& ctx) {
  SpectrumPtr sp = ctx.spectrum(SpectrumKind::QPrim);
  const TopologyLattice& topo = ctx.topology(SpectrumKind::QPrim);
  bool probed_error = false;
  for (int c = 0; c < topo.size(); ++c) {
    if (is_irreducible(topo, topo[c])) {
      auto gen = generic_points(topo, topo[c]);
      if (gen.empty())
        return fail_outcome({{"closed", topo[c].points}, {"reason", "no generic point"}});
      for (int g : gen)
        if (closure(sp, g).points != topo[c].points)
          return fail_outcome(
              {{"closed", topo[c].points}, {"reason", "generic point closure differs"}});
    } else if (!topo[c].points.empty() && !probed_error) {
      probed_error = true;
      try {
        generic_points(topo, topo[c]);
        return fail_outcome(
            {{"closed", topo[c].points}, {"reason", "reducible set accepted for generic points"}});
      } catch (const NotIrreducible&) {
      }
    }
  }
  return pass_outcome();
}

Outcome check_components(RingContext& ctx) {
  SpectrumPtr sp = ctx.spectrum(SpectrumKind::QPrim);
  const TopologyLattice& topo = ctx.topology(SpectrumKind::QPrim);
  auto comps = irreducible_components(topo);
  if (sp->size() == 0) {
    if (!comps.empty())
      return fail_outcome({{"reason", "components of an empty space must be empty"}});
    return pass_outcome();
  }
  std::set<std::vector<int>> expected;
  for (const Ideal& p : minimal_primes_over(zero_ideal(ctx.ring), ctx.lattice()))
    expected.insert(v_q(sp, p).points);
  std::set<std::vector<int>> got;
  for (const auto& c : comps) got.insert(c.points);
  if (expected != got)
    return fail_outcome({{"reason", "components differ from minimal-prime closed sets"},
                         {"components", json(std::vector<std::vector<int>>(got.begin(), got.end()))}});
  for (const auto& c : comps)
    if (generic_points(topo, c).empty())
      return fail_outcome({{"component", c.points}, {"reason", "component without generic point"}});
  return pass_outcome();
}

Outcome check_product_decomposition(RingContext& ctx) {
  if (ctx.ring->spec().kind() != RingSpec::Kind::Product) {
    Outcome o;
    o.info = {{"applicable", false}};
    return o;
  }
  ProductDecomposition d = disjoint_decomposition(ctx.ring);
  Outcome o;
  o.info = {{"applicable", true},
            {"factor_counts", d.factor_counts},
            {"point_count", d.spectrum->size()},
            {"disjoint_union_count", d.disjoint_union_count},
            {"product_count", d.product_count},
            {"matches_disjoint_union", d.matches_disjoint_union},
            {"matches_product", d.matches_product}};
  if (!d.is_partition || !d.blocks_clopen || !d.blocks_homeomorphic || !d.matches_disjoint_union) {
    o.status = CheckStatus::Fail;
    o.counterexample = {{"is_partition", d.is_partition},
                        {"blocks_clopen", d.blocks_clopen},
                        {"blocks_homeomorphic", d.blocks_homeomorphic},
                        {"matches_disjoint_union", d.matches_disjoint_union}};
  }
  return o;
}

Outcome check_connectedness(RingContext& ctx) {
  const TopologyLattice& topo = ctx.topology(SpectrumKind::QPrim);
  bool connected = is_connected(topo);
  bool has_nontrivial_idempotent = false;
  for (int e = 0; e < ctx.ring->order(); ++e)
    if (ctx.ring->is_idempotent(e) && e != 0 && e != ctx.ring->one())
      has_nontrivial_idempotent = true;
  if (connected == has_nontrivial_idempotent)
    return fail_outcome({{"connected", connected},
                         {"nontrivial_idempotent", has_nontrivial_idempotent},
                         {"reason", "connectedness does not match the idempotent test"}});
  return pass_outcome();
}

Outcome check_dimension_subspace(RingContext& ctx) {
  SpectrumPtr qp = ctx.spectrum(SpectrumKind::QPrim);
  SpectrumPtr sp = ctx.spectrum(SpectrumKind::Spec);
  const TopologyLattice& qtopo = ctx.topology(SpectrumKind::QPrim);
  const TopologyLattice& stopo = ctx.topology(SpectrumKind::Spec);

  if (qp->size() == 0) {
    try {
      chain_dimension(qtopo);
      return fail_outcome({{"reason", "empty spectrum accepted for chain dimension"}});
    } catch (const EmptySpectrum&) {
    }
    return pass_outcome();
  }

  ChainDimension dq = chain_dimension(qtopo);
  ChainDimension ds = chain_dimension(stopo);
  if (dq.terms < 1 || dq.krull != dq.terms - 1 || dq.terms != ds.terms)
    return fail_outcome({{"qprim_terms", dq.terms},
                         {"spec_terms", ds.terms},
                         {"reason", "dimension conventions disagree"}});

  // Subspace topology on the prime points matches the directly computed
  // prime-spectrum topology.
  std::vector<int> iota(static_cast<size_t>(sp->size()));
  for (int p = 0; p < sp->size(); ++p) iota[static_cast<size_t>(p)] = qp->point_index(sp->point(p).ideal);
  std::set<std::vector<int>> induced;
  for (int c = 0; c < qtopo.size(); ++c) {
    std::vector<int> tr;
    for (int p = 0; p < sp->size(); ++p)
      if (qtopo[c].contains(iota[static_cast<size_t>(p)])) tr.push_back(p);
    induced.insert(std::move(tr));
  }
  std::set<std::vector<int>> direct;
  for (int c = 0; c < stopo.size(); ++c) direct.insert(stopo[c].points);
  if (induced != direct)
    return fail_outcome({{"reason", "induced topology on prime points differs from Zariski"}});
  return pass_outcome();
}

Outcome check_associated_map(RingContext& ctx) {
  const IdealLattice& lat = ctx.lattice();
  std::vector<RingHom> homs;
  for (int i = 0; i < lat.size(); ++i) homs.push_back(quotient_map(ctx.ring, lat[i]).second);
  const SheafAssignment& sheaf = ctx.sheaf(SpectrumKind::QPrim);
  for (int c = 0; c < sheaf.class_count(); ++c)
    homs.push_back(sheaf.basic_class(c).loc.canonical);

  for (size_t h = 0; h < homs.size(); ++h) {
    for (SpectrumKind kind : {SpectrumKind::Spec, SpectrumKind::Prim, SpectrumKind::QPrim}) {
      AssociatedMap m = associated_map(homs[h], ctx.spectrum(kind),
                                       make_spectrum(homs[h].target(), kind));
      std::string why;
      if (!associated_map_continuous(m, &why))
        return fail_outcome({{"hom", static_cast<int>(h)},
                             {"kind", kind_name(kind)},
                             {"reason", why}});
    }
  }
  return pass_outcome();
}

Outcome check_sheaf(RingContext& ctx) {
  const SheafAssignment& sheaf = ctx.sheaf(SpectrumKind::QPrim);
  std::string why;
  if (!presheaf_laws_hold(sheaf, &why)) return fail_outcome({{"reason", why}});
  for (int big = 0; big < sheaf.class_count(); ++big)
    for (int small = 0; small < sheaf.class_count(); ++small)
      if (sheaf.open_leq(small, big) &&
          !restriction_matches_fraction_formula(sheaf, big, small, &why))
        return fail_outcome({{"reason", why}, {"big", big}, {"small", small}});
  SheafAxiomReport rep = check_sheaf_axioms(sheaf, ctx.opts.cover_cap_log2);
  Outcome o;
  o.info = {{"opens", rep.opens_checked},
            {"covers", rep.covers_checked},
            {"truncated", rep.truncated}};
  if (!rep.ok) {
    o.status = CheckStatus::Fail;
    o.counterexample = {{"reason", rep.failure}, {"detail", rep.counterexample}};
    return o;
  }
  SpectrumPtr sp = ctx.spectrum(SpectrumKind::QPrim);
  for (int q = 0; q < sp->size(); ++q) {
    StalkResult st = stalk(sheaf, q);
    if (!st.matches_prime_localization || !st.is_local) {
      o.status = CheckStatus::Fail;
      o.counterexample = {{"point", ideal_json(sp->point(q).ideal)},
                          {"is_local", st.is_local},
                          {"matches_prime_localization", st.matches_prime_localization}};
      return o;
    }
  }
  return o;
}

Outcome check_direct_image(RingContext& ctx) {
  DirectImageReport rep = direct_image_check(ctx.ring);
  if (!rep.ok)
    return fail_outcome({{"reason", rep.failure},
                         {"inclusion_continuous", rep.inclusion_continuous},
                         {"global_sections", rep.global_sections_match}});
  Outcome o;
  o.info = {{"opens", rep.opens_checked}};
  return o;
}

Outcome check_qp_eq_primary(RingContext& ctx) {
  const IdealLattice& lat = ctx.lattice();
  for (int i = 0; i < lat.size(); ++i)
    if (is_quasi_primary(lat[i]) != is_primary(lat[i]))
      return fail_outcome({{"ideal", ideal_json(lat[i])},
                           {"quasi_primary", is_quasi_primary(lat[i])},
                           {"primary", is_primary(lat[i])}});
  return pass_outcome();
}

Outcome check_ideal_oracle(RingContext& ctx) {
  const int n = ctx.ring->order();
  if (n > 16) {
    Outcome o;
    o.status = CheckStatus::SkippedCap;
    o.info = {{"reason", "brute-force subset oracle restricted to order <= 16"},
              {"cap_kind", "oracle_order"}};
    return o;
  }
  const FiniteRing& r = *ctx.ring;
  std::set<std::vector<std::uint16_t>> brute;
  const std::uint32_t masks = n >= 1 ? (1u << (n - 1)) : 1;
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    std::vector<std::uint16_t> elems{0};
    for (int x = 1; x < n; ++x)
      if (mask & (1u << (x - 1))) elems.push_back(static_cast<std::uint16_t>(x));
    std::vector<char> in(static_cast<size_t>(n), 0);
    for (auto x : elems) in[x] = 1;
    bool ok = true;
    for (auto x : elems) {
      for (auto y : elems)
        if (!in[static_cast<size_t>(r.add(x, y))]) {
          ok = false;
          break;
        }
      if (!ok) break;
      for (int s = 0; s < n; ++s)
        if (!in[static_cast<size_t>(r.mul(s, x))]) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    if (ok) brute.insert(std::move(elems));
  }
  const IdealLattice& lat = ctx.lattice();
  std::set<std::vector<std::uint16_t>> fast;
  for (int i = 0; i < lat.size(); ++i) fast.insert(lat[i].elements());
  if (brute != fast)
    return fail_outcome({{"brute_count", brute.size()}, {"lattice_count", fast.size()}});
  return pass_outcome();
}

struct CheckEntry {
  CheckInfo info;
  Outcome (*run)(RingContext&);
};

const std::vector<CheckEntry>& checks() {
  static const std::vector<CheckEntry> table = {
      {{"C01_VQ_IDENTITIES",
        "V(0)=X and V(R)=empty; I<=J gives V(J)<=V(I); V(I cap J)=V(IJ)=V(I) u V(J); "
        "V(sum)=intersection; V(I)=V(radical I)"},
       check_vq_identities},
      {{"C02_CLOSED_SET_AXIOMS",
        "the distinct sets V(I) contain empty and X and are closed under finite union and "
        "arbitrary intersection"},
       check_closed_set_axioms},
      {{"C03_BASIS", "every open set is a union of basic opens U_a"}, check_basis},
      {{"C04_UA_PROPERTIES",
        "U_a=U_b iff radical((a))=radical((b)); U_ab=U_a cap U_b; U_a empty iff a nilpotent; "
        "U_a<=U_b iff a in radical((b)); basic opens have finite subcovers"},
       check_ua_properties},
      {{"C05_QP_BASICS",
        "primary ideals are quasi-primary; a quasi-primary ideal has exactly one minimal prime, "
        "its radical"},
       check_qp_basics},
      {{"C06_LOCALIZATION_SPECTRUM",
        "contraction and extension along R -> R_a preserve quasi-primariness and give a "
        "homeomorphism onto U_a; localization universal property holds"},
       check_localization_spectrum},
      {{"C07_QP_PRODUCT_RADICAL",
        "for quasi-primary Q1, Q2 with radical(Q1) <= radical(Q2), the product Q1Q2 is "
        "quasi-primary with radical(Q1)"},
       check_qp_product_radical},
      {{"C08_VQ_PRODUCT_MEMBER",
        "for quasi-primary Q1 <= Q2 and any ideal I: Q1 in V(I) implies Q1Q2 in V(I)"},
       check_vq_product_member},
      {{"C09_CLOSURE_FORMULA",
        "the closure of a point Q is V(Q), the intersection of all closed sets containing Q"},
       check_closure_formula},
      {{"C10_IRREDUCIBLE_NILRADICAL",
        "the space is irreducible iff the nilradical is quasi-primary"},
       check_irreducible_nilradical},
      {{"C11_CORRESPONDENCE",
        "a closed subset is irreducible iff it is the closure V(Q) of some point Q"},
       check_correspondence},
      {{"C12_CLOSED_DECOMP",
        "every nonempty closed set is the irredundant finite union of V(P) over the minimal "
        "primes P of its witness"},
       check_closed_decomposition},
      {{"C13_GENERIC_POINTS", "every irreducible closed subset has a generic point"},
       check_generic_points},
      {{"C14_COMPONENTS",
        "the irreducible components are the V(P) with P a minimal prime of the ring, each with "
        "a generic point"},
       check_components},
      {{"C15_PRODUCT_DECOMP",
        "the spectrum of a product ring splits into clopen blocks homeomorphic to the factor "
        "spectra; disjoint-union and product point counts reported"},
       check_product_decomposition},
      {{"C16_CONNECTEDNESS",
        "the space is connected iff the ring has no idempotent outside {0,1}"},
       check_connectedness},
      {{"C17_DIMENSION_SUBSPACE",
        "chain dimension is finite and agrees between conventions; prime points carry the "
        "classical Zariski subspace topology"},
       check_dimension_subspace},
      {{"C18_ASSOCIATED_MAP",
        "the spectrum map of a ring hom is continuous: its preimage of V(A) is V(image of A)"},
       check_associated_map},
      {{"C19_SHEAF_AXIOMS",
        "presheaf laws hold; identity and gluing hold for every open and every enumerated "
        "cover; stalks are the localizations at point radicals and are local"},
       check_sheaf},
      {{"C20_DIRECT_IMAGE",
        "sections over the whole spectrum match structure-sheaf sections pulled back along the "
        "prime inclusion, naturally in restrictions; global sections recover R"},
       check_direct_image},
      {{"C21_QP_EQ_PRIMARY",
        "structural fact over this corpus of finite rings: quasi-primary equals primary"},
       check_qp_eq_primary},
      {{"C22_IDEAL_ORACLE",
        "the ideal lattice equals brute-force enumeration of all subsets satisfying the ideal "
        "axioms (order <= 16)"},
       check_ideal_oracle},
  };
  return table;
}

}  // namespace

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> out;
    for (const auto& c : checks()) out.push_back(c.info);
    return out;
  }();
  return infos;
}

std::vector<Verdict> run_suite(const Corpus& corpus, const SuiteOptions& opts) {
  std::vector<Verdict> verdicts;
  auto wanted = [&](const std::string& id) {
    if (opts.check_filter.empty()) return true;
    return std::find(opts.check_filter.begin(), opts.check_filter.end(), id) !=
           opts.check_filter.end();
  };

  for (const CorpusEntry& entry : corpus.entries) {
    RingPtr ring;
    std::string build_error;
    bool build_cap = false;
    try {
      ring = build_ring(entry.spec, BuildOptions{opts.order_cap});
    } catch (const OrderCapExceeded& e) {
      build_error = e.what();
      build_cap = true;
    } catch (const Error& e) {
      build_error = e.what();
    }

    RingContext ctx(ring, entry.label, opts);
    for (const CheckEntry& check : checks()) {
      if (!wanted(check.info.id)) continue;
      Verdict v;
      v.check_id = check.info.id;
      v.anchor = check.info.anchor;
      v.ring_label = entry.label;
      v.ring_spec = entry.spec;

      auto t0 = std::chrono::steady_clock::now();
      if (!ring) {
        v.status = build_cap ? CheckStatus::SkippedCap : CheckStatus::Fail;
        v.hard_cap = build_cap;
        v.info = {{"reason", build_error}};
        if (!build_cap) v.counterexample = {{"build_error", build_error}};
      } else {
        try {
          Outcome o = check.run(ctx);
          v.status = o.status;
          v.counterexample = std::move(o.counterexample);
          v.info = std::move(o.info);
          v.sampled = o.sampled;
          v.hard_cap = o.hard_cap;
        } catch (const IdealCountCapExceeded& e) {
          v.status = CheckStatus::SkippedCap;
          v.hard_cap = true;
          v.info = {{"reason", e.what()}, {"cap_kind", "ideal_count"}};
        } catch (const SearchCapExceeded& e) {
          v.status = CheckStatus::SkippedCap;
          v.hard_cap = true;
          v.info = {{"reason", e.what()}, {"cap_kind", "search"}};
        } catch (const Error& e) {
          v.status = CheckStatus::Fail;
          v.counterexample = {{"error", e.what()}};
        }
      }
      auto t1 = std::chrono::steady_clock::now();
      v.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      verdicts.push_back(std::move(v));
    }
  }
  return verdicts;
}

json report_json(const std::vector<Verdict>& verdicts, const SuiteOptions& opts) {
  json entries = json::array();
  int pass = 0, fail = 0, skipped = 0;
  for (const Verdict& v : verdicts) {
    switch (v.status) {
      case CheckStatus::Pass: ++pass; break;
      case CheckStatus::Fail: ++fail; break;
      case CheckStatus::SkippedCap: ++skipped; break;
    }
    entries.push_back({{"anchor", v.anchor},
                       {"check", v.check_id},
                       {"counterexample", v.counterexample},
                       {"info", v.info},
                       {"label", v.ring_label},
                       {"ms", opts.timings ? static_cast<long long>(v.ms + 0.5) : 0},
                       {"ring", ring_spec_to_json(v.ring_spec)},
                       {"sampled", v.sampled},
                       {"status", status_name(v.status)}});
  }
  return json{{"seed", opts.seed},
              {"summary", {{"pass", pass}, {"fail", fail}, {"skipped", skipped},
                           {"total", static_cast<int>(verdicts.size())}}},
              {"verdicts", entries}};
}

std::string report_string(const std::vector<Verdict>& verdicts, const SuiteOptions& opts) {
  return report_json(verdicts, opts).dump(2) + "\n";
}

}  // namespace qprim
