#include "qprim/ideal.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace qprim {

namespace {

std::vector<std::uint16_t> sorted_unique(std::vector<std::uint16_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Additive closure of a set that is already closed under multiplication by
// ring elements. In a finite ring additive closure gives a subgroup (the
// inverse of x appears as a repeated sum of x).
std::vector<std::uint16_t> additive_closure(const FiniteRing& r,
                                            std::vector<std::uint16_t> seed) {
  std::vector<char> in(static_cast<size_t>(r.order()), 0);
  std::vector<std::uint16_t> work;
  for (auto x : sorted_unique(std::move(seed))) {
    if (!in[x]) {
      in[x] = 1;
      work.push_back(x);
    }
  }
  for (size_t i = 0; i < work.size(); ++i) {
    for (size_t j = 0; j <= i; ++j) {
      int s = r.add(work[i], work[j]);
      if (!in[static_cast<size_t>(s)]) {
        in[static_cast<size_t>(s)] = 1;
        work.push_back(static_cast<std::uint16_t>(s));
      }
    }
  }
  return sorted_unique(std::move(work));
}

}  // namespace

// ---------------------------------------------------------------------------
// Ideal
// ---------------------------------------------------------------------------

Ideal::Ideal(RingPtr ring, std::vector<std::uint16_t> elements)
    : ring_(std::move(ring)), elems_(sorted_unique(std::move(elements))) {
  member_.assign(static_cast<size_t>(ring_->order()), 0);
  for (auto x : elems_) {
    if (x >= ring_->order()) throw Error("Ideal: element index out of range");
    member_[x] = 1;
  }
  if (elems_.empty() || elems_[0] != 0) throw Error("Ideal: must contain 0");
  for (auto x : elems_)
    for (auto y : elems_)
      if (!member_[static_cast<size_t>(ring_->add(x, y))])
        throw Error("Ideal: not closed under addition at (" + std::to_string(x) + "," +
                    std::to_string(y) + ")");
  for (int rr = 0; rr < ring_->order(); ++rr)
    for (auto x : elems_)
      if (!member_[static_cast<size_t>(ring_->mul(rr, x))])
        throw Error("Ideal: not closed under multiplication at (" + std::to_string(rr) + "," +
                    std::to_string(x) + ")");
}

bool Ideal::contains_ideal(const Ideal& other) const {
  for (auto x : other.elems_)
    if (!member_[x]) return false;
  return true;
}

bool Ideal::operator==(const Ideal& other) const {
  return ring_.get() == other.ring_.get() && elems_ == other.elems_;
}

bool Ideal::canonical_less(const Ideal& a, const Ideal& b) {
  return std::lexicographical_compare(a.elems_.begin(), a.elems_.end(), b.elems_.begin(),
                                      b.elems_.end());
}

// ---------------------------------------------------------------------------
// Construction and arithmetic
// ---------------------------------------------------------------------------

Ideal generate(RingPtr ring, const std::vector<int>& gens) {
  std::vector<std::uint16_t> seed;
  seed.push_back(0);
  for (int g : gens) {
    if (g < 0 || g >= ring->order()) throw Error("generate: generator out of range");
    for (int r = 0; r < ring->order(); ++r)
      seed.push_back(static_cast<std::uint16_t>(ring->mul(r, g)));
  }
  auto elems = additive_closure(*ring, std::move(seed));
  return Ideal(std::move(ring), std::move(elems));
}

Ideal zero_ideal(RingPtr ring) { return Ideal(std::move(ring), {0}); }

Ideal unit_ideal(RingPtr ring) {
  std::vector<std::uint16_t> all(static_cast<size_t>(ring->order()));
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::uint16_t>(i);
  return Ideal(std::move(ring), std::move(all));
}

namespace {
void require_same_ring(const Ideal& I, const Ideal& J) {
  if (I.ring().get() != J.ring().get())
    throw MixedRings("ideals of different rings cannot be combined");
}
}  // namespace

Ideal sum(const Ideal& I, const Ideal& J) {
  require_same_ring(I, J);
  std::vector<std::uint16_t> seed = I.elements();
  seed.insert(seed.end(), J.elements().begin(), J.elements().end());
  auto elems = additive_closure(*I.ring(), std::move(seed));
  return Ideal(I.ring(), std::move(elems));
}

Ideal product(const Ideal& I, const Ideal& J) {
  require_same_ring(I, J);
  std::vector<std::uint16_t> seed;
  seed.push_back(0);
  const FiniteRing& r = *I.ring();
  for (auto a : I.elements())
    for (auto b : J.elements()) seed.push_back(static_cast<std::uint16_t>(r.mul(a, b)));
  auto elems = additive_closure(r, std::move(seed));
  return Ideal(I.ring(), std::move(elems));
}

Ideal intersect(const Ideal& I, const Ideal& J) {
  require_same_ring(I, J);
  std::vector<std::uint16_t> elems;
  for (auto x : I.elements())
    if (J.contains(x)) elems.push_back(x);
  return Ideal(I.ring(), std::move(elems));
}

Ideal radical(const Ideal& I) {
  if (!I.radical_cache_) {
    const FiniteRing& r = *I.ring();
    std::vector<std::uint16_t> elems;
    std::vector<char> seen(static_cast<size_t>(r.order()));
    for (int x = 0; x < r.order(); ++x) {
      std::fill(seen.begin(), seen.end(), 0);
      int p = x;
      bool in = false;
      while (!seen[static_cast<size_t>(p)]) {
        if (I.contains(p)) {
          in = true;
          break;
        }
        seen[static_cast<size_t>(p)] = 1;
        p = r.mul(p, x);
      }
      if (in) elems.push_back(static_cast<std::uint16_t>(x));
    }
    I.radical_cache_ = std::make_shared<const std::vector<std::uint16_t>>(std::move(elems));
  }
  return Ideal(I.ring(), *I.radical_cache_);
}

bool is_prime(const Ideal& I) {
  if (!I.prime_cache_) {
    bool result = I.is_proper();
    if (result) {
      const FiniteRing& r = *I.ring();
      for (int a = 0; a < r.order() && result; ++a) {
        if (I.contains(a)) continue;
        for (int b = 0; b < r.order(); ++b) {
          if (I.contains(b)) continue;
          if (I.contains(r.mul(a, b))) {
            result = false;
            break;
          }
        }
      }
    }
    I.prime_cache_ = result;
  }
  return *I.prime_cache_;
}

bool is_primary(const Ideal& I) {
  if (!I.primary_cache_) {
    bool result = I.is_proper();
    if (result) {
      const FiniteRing& r = *I.ring();
      Ideal rad = radical(I);
      for (int a = 0; a < r.order() && result; ++a) {
        if (I.contains(a)) continue;
        for (int b = 0; b < r.order(); ++b) {
          if (rad.contains(b)) continue;
          if (I.contains(r.mul(a, b))) {
            result = false;
            break;
          }
        }
      }
    }
    I.primary_cache_ = result;
  }
  return *I.primary_cache_;
}

bool is_quasi_primary(const Ideal& I) {
  if (!I.quasi_primary_cache_)
    I.quasi_primary_cache_ = I.is_proper() && is_prime(radical(I));
  return *I.quasi_primary_cache_;
}

// ---------------------------------------------------------------------------
// Lattice
// ---------------------------------------------------------------------------

IdealLattice::IdealLattice(RingPtr ring, std::vector<Ideal> ideals)
    : ring_(std::move(ring)), ideals_(std::move(ideals)) {
  std::sort(ideals_.begin(), ideals_.end(), Ideal::canonical_less);
  const size_t n = ideals_.size();
  leq_.assign(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      leq_[i][j] = ideals_[j].contains_ideal(ideals_[i]);
}

int IdealLattice::index_of(const Ideal& I) const {
  auto it = std::lower_bound(ideals_.begin(), ideals_.end(), I, Ideal::canonical_less);
  if (it != ideals_.end() && *it == I) return static_cast<int>(it - ideals_.begin());
  return -1;
}

std::vector<int> IdealLattice::prime_indexes() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (is_prime(ideals_[static_cast<size_t>(i)])) out.push_back(i);
  return out;
}

IdealLattice all_ideals(RingPtr ring, int ideal_cap) {
  std::map<std::vector<std::uint16_t>, Ideal> found;
  std::vector<Ideal> work;
  auto add_ideal = [&](Ideal I) {
    auto key = I.elements();
    if (found.find(key) == found.end()) {
      found.emplace(std::move(key), I);
      work.push_back(std::move(I));
      if (static_cast<int>(found.size()) > ideal_cap)
        throw IdealCountCapExceeded("ideal count exceeds cap " + std::to_string(ideal_cap) +
                                    " in " + work.front().ring()->name());
    }
  };

  for (int g = 0; g < ring->order(); ++g) add_ideal(generate(ring, {g}));

  // Close under pairwise sums to a fixpoint.
  for (size_t i = 0; i < work.size(); ++i)
    for (size_t j = 0; j < i; ++j) add_ideal(sum(work[i], work[j]));

  std::vector<Ideal> ideals;
  ideals.reserve(found.size());
  for (auto& [key, ideal] : found) ideals.push_back(std::move(ideal));
  return IdealLattice(std::move(ring), std::move(ideals));
}

std::vector<Ideal> minimal_primes_over(const Ideal& I, const IdealLattice& lattice) {
  if (!I.is_proper()) throw ImproperIdeal("minimal_primes_over: ideal is the whole ring");
  if (I.ring().get() != lattice.ring().get())
    throw MixedRings("minimal_primes_over: ideal not from the lattice's ring");
  std::vector<int> primes;
  for (int p : lattice.prime_indexes())
    if (lattice[p].contains_ideal(I)) primes.push_back(p);
  std::vector<Ideal> out;
  for (int p : primes) {
    bool minimal = true;
    for (int q : primes)
      if (q != p && lattice[p].contains_ideal(lattice[q]) && !(lattice[q] == lattice[p])) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(lattice[p]);
  }
  std::sort(out.begin(), out.end(), Ideal::canonical_less);
  return out;
}

Ideal preimage_ideal(const RingHom& phi, const Ideal& J) {
  if (J.ring().get() != phi.target().get())
    throw MixedRings("preimage_ideal: ideal not in the hom's target");
  std::vector<std::uint16_t> elems;
  for (int r = 0; r < phi.source()->order(); ++r)
    if (J.contains(phi.apply(r))) elems.push_back(static_cast<std::uint16_t>(r));
  return Ideal(phi.source(), std::move(elems));
}

std::pair<RingPtr, RingHom> quotient_map(const RingPtr& ring, const Ideal& I) {
  if (I.ring().get() != ring.get()) throw MixedRings("quotient_map: foreign ideal");
  const int n = ring->order();
  std::vector<int> coset_of(static_cast<size_t>(n), -1);
  std::vector<int> rep_of;
  for (int x = 0; x < n; ++x) {
    if (coset_of[static_cast<size_t>(x)] >= 0) continue;
    int id = static_cast<int>(rep_of.size());
    rep_of.push_back(x);
    for (auto i : I.elements()) coset_of[static_cast<size_t>(ring->add(x, i))] = id;
  }
  const int m = static_cast<int>(rep_of.size());
  std::vector<std::uint16_t> add(static_cast<size_t>(m) * m), mul(static_cast<size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      add[static_cast<size_t>(a) * m + b] =
          static_cast<std::uint16_t>(coset_of[static_cast<size_t>(ring->add(rep_of[static_cast<size_t>(a)], rep_of[static_cast<size_t>(b)]))]);
      mul[static_cast<size_t>(a) * m + b] =
          static_cast<std::uint16_t>(coset_of[static_cast<size_t>(ring->mul(rep_of[static_cast<size_t>(a)], rep_of[static_cast<size_t>(b)]))]);
    }
  std::vector<std::vector<int>> add_spec(static_cast<size_t>(m), std::vector<int>(static_cast<size_t>(m)));
  std::vector<std::vector<int>> mul_spec = add_spec;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      add_spec[static_cast<size_t>(a)][static_cast<size_t>(b)] = add[static_cast<size_t>(a) * m + b];
      mul_spec[static_cast<size_t>(a)][static_cast<size_t>(b)] = mul[static_cast<size_t>(a) * m + b];
    }
  RingPtr q = make_ring_from_tables(ring->name() + "/(" + std::to_string(I.size()) + " elts)",
                                    RingSpec::table(std::move(add_spec), std::move(mul_spec)),
                                    std::move(add), std::move(mul));
  std::vector<int> map(coset_of.begin(), coset_of.end());
  RingHom pi = build_hom(ring, q, map);
  // The kernel of the canonical surjection is exactly I.
  if (pi.kernel_elements() != I.elements())
    throw Error("quotient_map: kernel mismatch (internal)");
  return {q, pi};
}

}  // namespace qprim
