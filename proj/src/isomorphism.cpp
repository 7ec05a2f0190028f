#include "qprim/isomorphism.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace qprim {

namespace {

struct Signature {
  int additive_order;
  bool unit, idempotent, nilpotent;
  auto tie() const { return std::tuple(additive_order, unit, idempotent, nilpotent); }
  bool operator==(const Signature& o) const { return tie() == o.tie(); }
  bool operator<(const Signature& o) const { return tie() < o.tie(); }
};

std::vector<Signature> signatures(const FiniteRing& r) {
  std::vector<Signature> out;
  out.reserve(static_cast<size_t>(r.order()));
  for (int x = 0; x < r.order(); ++x)
    out.push_back(Signature{r.additive_order(x), r.is_unit(x), r.is_idempotent(x),
                            r.is_nilpotent(x)});
  return out;
}

// Subring generated by {0, 1} and the chosen generators.
std::vector<char> subring_closure(const FiniteRing& r, const std::vector<int>& gens) {
  std::vector<char> in(static_cast<size_t>(r.order()), 0);
  std::vector<int> work;
  auto push = [&](int x) {
    if (!in[static_cast<size_t>(x)]) {
      in[static_cast<size_t>(x)] = 1;
      work.push_back(x);
    }
  };
  push(0);
  push(r.one());
  for (int g : gens) push(g);
  for (size_t i = 0; i < work.size(); ++i)
    for (size_t j = 0; j <= i; ++j) {
      push(r.add(work[i], work[j]));
      push(r.mul(work[i], work[j]));
    }
  return in;
}

// Extends the partial map by the images of sums and products of already
// mapped elements; returns false on any conflict (hom law or injectivity).
bool propagate(const FiniteRing& a, const FiniteRing& b, std::vector<int>& map,
               std::vector<int>& used_by, std::vector<int>& defined) {
  auto set_image = [&](int x, int y) {
    if (map[static_cast<size_t>(x)] >= 0) return map[static_cast<size_t>(x)] == y;
    if (used_by[static_cast<size_t>(y)] >= 0) return false;
    map[static_cast<size_t>(x)] = y;
    used_by[static_cast<size_t>(y)] = x;
    defined.push_back(x);
    return true;
  };
  for (size_t i = 0; i < defined.size(); ++i)
    for (size_t j = 0; j <= i; ++j) {
      int x = defined[i], y = defined[j];
      if (!set_image(a.add(x, y), b.add(map[static_cast<size_t>(x)], map[static_cast<size_t>(y)])))
        return false;
      if (!set_image(a.mul(x, y), b.mul(map[static_cast<size_t>(x)], map[static_cast<size_t>(y)])))
        return false;
    }
  return true;
}

bool extend(const FiniteRing& a, const FiniteRing& b, const std::vector<int>& gens,
            const std::vector<Signature>& sig_a, const std::vector<Signature>& sig_b,
            size_t gen_idx, std::vector<int> map, std::vector<int> used_by,
            std::vector<int> defined, std::vector<int>& out) {
  if (!propagate(a, b, map, used_by, defined)) return false;
  if (gen_idx == gens.size()) {
    if (static_cast<int>(defined.size()) != a.order()) return false;
    out = map;
    return true;
  }
  int g = gens[gen_idx];
  if (map[static_cast<size_t>(g)] >= 0)
    return extend(a, b, gens, sig_a, sig_b, gen_idx + 1, std::move(map), std::move(used_by),
                  std::move(defined), out);
  for (int h = 0; h < b.order(); ++h) {
    if (used_by[static_cast<size_t>(h)] >= 0) continue;
    if (!(sig_a[static_cast<size_t>(g)] == sig_b[static_cast<size_t>(h)])) continue;
    auto map2 = map;
    auto used2 = used_by;
    auto def2 = defined;
    map2[static_cast<size_t>(g)] = h;
    used2[static_cast<size_t>(h)] = g;
    def2.push_back(g);
    if (extend(a, b, gens, sig_a, sig_b, gen_idx + 1, std::move(map2), std::move(used2),
               std::move(def2), out))
      return true;
  }
  return false;
}

}  // namespace

std::optional<RingHom> ring_isomorphic(const RingPtr& a, const RingPtr& b, int order_cap) {
  if (a->order() != b->order()) return std::nullopt;
  if (a->order() > order_cap)
    throw SearchCapExceeded("isomorphism search capped at order " + std::to_string(order_cap));

  auto sig_a = signatures(*a);
  auto sig_b = signatures(*b);
  {
    auto sa = sig_a;
    auto sb = sig_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (!(sa == sb)) return std::nullopt;  // invariant histograms differ
  }

  // Greedy generating sequence: least element outside the current subring.
  std::vector<int> gens;
  std::vector<char> closed = subring_closure(*a, gens);
  for (int x = 0; x < a->order(); ++x) {
    if (closed[static_cast<size_t>(x)]) continue;
    gens.push_back(x);
    closed = subring_closure(*a, gens);
  }

  std::vector<int> map(static_cast<size_t>(a->order()), -1);
  std::vector<int> used_by(static_cast<size_t>(b->order()), -1);
  std::vector<int> defined;
  map[0] = 0;
  used_by[0] = 0;
  defined.push_back(0);
  if (a->one() != 0) {
    if (used_by[static_cast<size_t>(b->one())] >= 0 && b->one() != 0) return std::nullopt;
    map[static_cast<size_t>(a->one())] = b->one();
    used_by[static_cast<size_t>(b->one())] = a->one();
    defined.push_back(a->one());
  } else if (b->one() != 0) {
    return std::nullopt;  // zero ring vs larger ring already excluded by order
  }

  std::vector<int> found;
  if (!extend(*a, *b, gens, sig_a, sig_b, 0, std::move(map), std::move(used_by),
              std::move(defined), found))
    return std::nullopt;
  return build_hom(a, b, found);
}

}  // namespace qprim
