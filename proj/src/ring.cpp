#include "qprim/ring.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace qprim {

namespace {

std::string poly_string(const std::vector<int>& coeffs) {
  // Render descending, e.g. [1,1,1] -> "x^2+x+1".
  std::string out;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    int c = coeffs[static_cast<size_t>(i)];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c);
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

// ---------------------------------------------------------------------------
// RingSpec
// ---------------------------------------------------------------------------

RingSpec RingSpec::zmod(int n) {
  if (n < 1) throw InputError("zmod: modulus must be >= 1, got " + std::to_string(n));
  RingSpec s;
  s.kind_ = Kind::ZMod;
  s.n_ = n;
  return s;
}

RingSpec RingSpec::product(std::vector<RingSpec> factors) {
  if (factors.empty()) throw InputError("product: factor list must be nonempty");
  RingSpec s;
  s.kind_ = Kind::Product;
  s.factors_ = std::move(factors);
  return s;
}

RingSpec RingSpec::poly_quotient(const RingSpec& base, std::vector<int> modulus) {
  if (base.kind() != Kind::ZMod)
    throw InputError("poly_quotient: base must be a zmod spec");
  if (modulus.size() < 2)
    throw BadModulus("poly_quotient: modulus degree must be >= 1");
  RingSpec s;
  s.kind_ = Kind::PolyQuotient;
  s.n_ = base.zmod_n();
  s.modulus_ = std::move(modulus);
  return s;
}

RingSpec RingSpec::table(std::vector<std::vector<int>> add,
                         std::vector<std::vector<int>> mul) {
  RingSpec s;
  s.kind_ = Kind::Table;
  s.add_ = std::move(add);
  s.mul_ = std::move(mul);
  return s;
}

int RingSpec::zmod_n() const {
  if (kind_ != Kind::ZMod) throw Error("zmod_n on non-zmod spec");
  return n_;
}

const std::vector<RingSpec>& RingSpec::factors() const {
  if (kind_ != Kind::Product) throw Error("factors on non-product spec");
  return factors_;
}

int RingSpec::base_n() const {
  if (kind_ != Kind::PolyQuotient) throw Error("base_n on non-poly-quotient spec");
  return n_;
}

const std::vector<int>& RingSpec::modulus() const {
  if (kind_ != Kind::PolyQuotient) throw Error("modulus on non-poly-quotient spec");
  return modulus_;
}

const std::vector<std::vector<int>>& RingSpec::table_add() const {
  if (kind_ != Kind::Table) throw Error("table_add on non-table spec");
  return add_;
}

const std::vector<std::vector<int>>& RingSpec::table_mul() const {
  if (kind_ != Kind::Table) throw Error("table_mul on non-table spec");
  return mul_;
}

long long RingSpec::order() const {
  constexpr long long kSaturate = 1LL << 40;
  switch (kind_) {
    case Kind::ZMod:
      return n_;
    case Kind::Product: {
      long long total = 1;
      for (const auto& f : factors_) {
        total *= f.order();
        if (total > kSaturate) return kSaturate;
      }
      return total;
    }
    case Kind::PolyQuotient: {
      long long total = 1;
      for (size_t i = 0; i + 1 < modulus_.size(); ++i) {
        total *= n_;
        if (total > kSaturate) return kSaturate;
      }
      return total;
    }
    case Kind::Table:
      return static_cast<long long>(add_.size());
  }
  return 1;
}

std::string RingSpec::label() const {
  switch (kind_) {
    case Kind::ZMod:
      return "Z/" + std::to_string(n_);
    case Kind::Product: {
      std::string out;
      for (const auto& f : factors_) {
        if (!out.empty()) out += " x ";
        out += f.label();
      }
      return out;
    }
    case Kind::PolyQuotient:
      return "Z/" + std::to_string(n_) + "[x]/(" + poly_string(modulus_) + ")";
    case Kind::Table:
      return "table(order=" + std::to_string(add_.size()) + ")";
  }
  return "?";
}

bool RingSpec::operator==(const RingSpec& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::ZMod:
      return n_ == other.n_;
    case Kind::Product:
      return factors_ == other.factors_;
    case Kind::PolyQuotient:
      return n_ == other.n_ && modulus_ == other.modulus_;
    case Kind::Table:
      return add_ == other.add_ && mul_ == other.mul_;
  }
  return false;
}

// ---------------------------------------------------------------------------
// FiniteRing construction
// ---------------------------------------------------------------------------

RingPtr make_ring_from_tables(std::string name, RingSpec provenance,
                              std::vector<std::uint16_t> add,
                              std::vector<std::uint16_t> mul) {
  const size_t n2 = add.size();
  const int n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(n2))));
  if (n <= 0 || static_cast<size_t>(n) * n != n2 || mul.size() != n2)
    throw Error("make_ring_from_tables: bad table dimensions for " + name);

  auto r = std::shared_ptr<FiniteRing>(new FiniteRing());
  r->order_ = n;
  r->add_ = std::move(add);
  r->mul_ = std::move(mul);
  r->spec_ = std::move(provenance);
  r->name_ = std::move(name);

  auto at = [&](const std::vector<std::uint16_t>& t, int a, int b) {
    return t[static_cast<size_t>(a) * n + b];
  };

  for (int x = 0; x < n; ++x) {
    if (at(r->add_, 0, x) != x || at(r->add_, x, 0) != x)
      throw TableNotRing("element 0 is not the additive identity (witness " +
                         std::to_string(x) + ") in " + r->name_);
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (at(r->add_, a, b) != at(r->add_, b, a))
        throw TableNotCommutative("addition not commutative at (" + std::to_string(a) +
                                  "," + std::to_string(b) + ") in " + r->name_);
      if (at(r->mul_, a, b) != at(r->mul_, b, a))
        throw TableNotCommutative("multiplication not commutative at (" + std::to_string(a) +
                                  "," + std::to_string(b) + ") in " + r->name_);
    }

  r->neg_.assign(static_cast<size_t>(n), 0);
  for (int a = 0; a < n; ++a) {
    int found = -1;
    for (int b = 0; b < n; ++b)
      if (at(r->add_, a, b) == 0) {
        found = b;
        break;
      }
    if (found < 0)
      throw TableNotRing("element " + std::to_string(a) + " has no additive inverse in " +
                         r->name_);
    r->neg_[static_cast<size_t>(a)] = static_cast<std::uint16_t>(found);
  }

  int one = -1;
  for (int e = 0; e < n && one < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n; ++x)
      if (at(r->mul_, e, x) != x) {
        ok = false;
        break;
      }
    if (ok) one = e;
  }
  if (one < 0) throw TableNoIdentity("no multiplicative identity in " + r->name_);
  r->one_ = one;
  return r;
}

void verify_ring_axioms(const FiniteRing& r) {
  const int n = r.order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c)))
          throw TableNotRing("addition not associative at (" + std::to_string(a) + "," +
                             std::to_string(b) + "," + std::to_string(c) + ") in " + r.name());
        if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)))
          throw TableNotRing("multiplication not associative at (" + std::to_string(a) + "," +
                             std::to_string(b) + "," + std::to_string(c) + ") in " + r.name());
        if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)))
          throw TableNotRing("distributivity fails at (" + std::to_string(a) + "," +
                             std::to_string(b) + "," + std::to_string(c) + ") in " + r.name());
      }
}

void verify_ring_axioms_sampled(const FiniteRing& r, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, r.order() - 1);
  for (int i = 0; i < samples; ++i) {
    int a = pick(rng), b = pick(rng), c = pick(rng);
    if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c)) ||
        r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)) ||
        r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)) ||
        r.add(a, b) != r.add(b, a) || r.mul(a, b) != r.mul(b, a))
      throw TableNotRing("sampled axiom failure at (" + std::to_string(a) + "," +
                         std::to_string(b) + "," + std::to_string(c) + ") in " + r.name());
  }
}

namespace {

RingPtr build_zmod(int n) {
  std::vector<std::uint16_t> add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      add[static_cast<size_t>(a) * n + b] = static_cast<std::uint16_t>((a + b) % n);
      mul[static_cast<size_t>(a) * n + b] =
          static_cast<std::uint16_t>((static_cast<long long>(a) * b) % n);
    }
  return make_ring_from_tables("Z/" + std::to_string(n), RingSpec::zmod(n), std::move(add),
                               std::move(mul));
}

RingPtr build_product(const RingSpec& spec, const BuildOptions& opts) {
  std::vector<RingPtr> parts;
  parts.reserve(spec.factors().size());
  for (const auto& f : spec.factors()) parts.push_back(build_ring(f, opts));

  long long total = 1;
  for (const auto& p : parts) total *= p->order();
  const int n = static_cast<int>(total);

  // Mixed-radix pairing, first factor most significant.
  const size_t k = parts.size();
  std::vector<int> radix(k);
  for (size_t i = 0; i < k; ++i) radix[i] = parts[i]->order();

  auto decode = [&](int idx, std::vector<int>& out) {
    for (size_t i = k; i-- > 0;) {
      out[i] = idx % radix[i];
      idx /= radix[i];
    }
  };
  auto encode = [&](const std::vector<int>& comps) {
    int idx = 0;
    for (size_t i = 0; i < k; ++i) idx = idx * radix[i] + comps[i];
    return idx;
  };

  std::vector<std::uint16_t> add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n);
  std::vector<int> ca(k), cb(k), cc(k);
  for (int a = 0; a < n; ++a) {
    decode(a, ca);
    for (int b = 0; b < n; ++b) {
      decode(b, cb);
      for (size_t i = 0; i < k; ++i) cc[i] = parts[i]->add(ca[i], cb[i]);
      add[static_cast<size_t>(a) * n + b] = static_cast<std::uint16_t>(encode(cc));
      for (size_t i = 0; i < k; ++i) cc[i] = parts[i]->mul(ca[i], cb[i]);
      mul[static_cast<size_t>(a) * n + b] = static_cast<std::uint16_t>(encode(cc));
    }
  }
  return make_ring_from_tables(spec.label(), spec, std::move(add), std::move(mul));
}

RingPtr build_poly_quotient(const RingSpec& spec) {
  const int p = spec.base_n();
  std::vector<int> mod = spec.modulus();
  for (int& c : mod) c = ((c % p) + p) % p;
  const int deg = static_cast<int>(mod.size()) - 1;
  const int lead = mod[static_cast<size_t>(deg)];

  // The leading coefficient must be a unit mod p so division is defined.
  int lead_inv = -1;
  for (int x = 0; x < p; ++x)
    if ((lead * x) % p == 1 % p) {
      lead_inv = x;
      break;
    }
  if (p > 1 && (lead == 0 || lead_inv < 0))
    throw BadModulus("leading coefficient " + std::to_string(lead) + " is not a unit mod " +
                     std::to_string(p));
  if (p == 1) lead_inv = 0;

  long long total = 1;
  for (int i = 0; i < deg; ++i) total *= p;
  const int n = static_cast<int>(total);

  auto decode = [&](int idx, std::vector<int>& out) {
    for (int i = 0; i < deg; ++i) {
      out[static_cast<size_t>(i)] = idx % p;
      idx /= p;
    }
  };
  auto encode = [&](const std::vector<int>& coeffs) {
    int idx = 0;
    for (int i = deg - 1; i >= 0; --i) idx = idx * p + coeffs[static_cast<size_t>(i)];
    return idx;
  };
  auto reduce = [&](std::vector<int>& c) {
    for (int i = static_cast<int>(c.size()) - 1; i >= deg; --i) {
      int f = (c[static_cast<size_t>(i)] * lead_inv) % p;
      if (f == 0) continue;
      for (int j = 0; j <= deg; ++j) {
        int& slot = c[static_cast<size_t>(i - deg + j)];
        slot = ((slot - f * mod[static_cast<size_t>(j)]) % p + p) % p;
      }
    }
    c.resize(static_cast<size_t>(deg));
  };

  std::vector<std::uint16_t> add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n);
  std::vector<int> ca(static_cast<size_t>(deg)), cb(static_cast<size_t>(deg));
  for (int a = 0; a < n; ++a) {
    decode(a, ca);
    for (int b = 0; b < n; ++b) {
      decode(b, cb);
      std::vector<int> s(static_cast<size_t>(deg));
      for (int i = 0; i < deg; ++i)
        s[static_cast<size_t>(i)] = (ca[static_cast<size_t>(i)] + cb[static_cast<size_t>(i)]) % p;
      add[static_cast<size_t>(a) * n + b] = static_cast<std::uint16_t>(encode(s));

      std::vector<int> m(static_cast<size_t>(2 * deg - 1), 0);
      for (int i = 0; i < deg; ++i)
        for (int j = 0; j < deg; ++j) {
          size_t idx = static_cast<size_t>(i + j);
          m[idx] = (m[idx] + ca[static_cast<size_t>(i)] * cb[static_cast<size_t>(j)]) % p;
        }
      reduce(m);
      mul[static_cast<size_t>(a) * n + b] = static_cast<std::uint16_t>(encode(m));
    }
  }
  return make_ring_from_tables(spec.label(), spec, std::move(add), std::move(mul));
}

RingPtr build_table(const RingSpec& spec) {
  const auto& A = spec.table_add();
  const auto& M = spec.table_mul();
  const int n = static_cast<int>(A.size());
  if (n < 1 || M.size() != A.size())
    throw InputError("table spec: add/mul must be nonempty square matrices of equal order");
  std::vector<std::uint16_t> add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(A[static_cast<size_t>(a)].size()) != n ||
        static_cast<int>(M[static_cast<size_t>(a)].size()) != n)
      throw InputError("table spec: row " + std::to_string(a) + " has wrong length");
    for (int b = 0; b < n; ++b) {
      int va = A[static_cast<size_t>(a)][static_cast<size_t>(b)];
      int vm = M[static_cast<size_t>(a)][static_cast<size_t>(b)];
      if (va < 0 || va >= n || vm < 0 || vm >= n)
        throw InputError("table spec: entry out of range at (" + std::to_string(a) + "," +
                         std::to_string(b) + ")");
      add[static_cast<size_t>(a) * n + b] = static_cast<std::uint16_t>(va);
      mul[static_cast<size_t>(a) * n + b] = static_cast<std::uint16_t>(vm);
    }
  }
  RingPtr r = make_ring_from_tables(spec.label(), spec, std::move(add), std::move(mul));
  verify_ring_axioms(*r);
  return r;
}

}  // namespace

RingPtr build_ring(const RingSpec& spec, const BuildOptions& opts) {
  long long n = spec.order();
  if (n > opts.order_cap)
    throw OrderCapExceeded("ring order " + std::to_string(n) + " exceeds cap " +
                           std::to_string(opts.order_cap));
  switch (spec.kind()) {
    case RingSpec::Kind::ZMod:
      return build_zmod(spec.zmod_n());
    case RingSpec::Kind::Product:
      return build_product(spec, opts);
    case RingSpec::Kind::PolyQuotient:
      return build_poly_quotient(spec);
    case RingSpec::Kind::Table:
      return build_table(spec);
  }
  throw Error("unreachable ring spec kind");
}

// ---------------------------------------------------------------------------
// Element operations
// ---------------------------------------------------------------------------

int FiniteRing::pow(int a, long long k) const {
  if (k < 0) throw Error("pow: negative exponent");
  int result = one_;
  int base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

bool FiniteRing::is_unit(int a) const {
  for (int b = 0; b < order_; ++b)
    if (mul(a, b) == one_) return true;
  return false;
}

bool FiniteRing::is_nilpotent(int a) const {
  std::vector<char> seen(static_cast<size_t>(order_), 0);
  int p = a;
  while (!seen[static_cast<size_t>(p)]) {
    if (p == 0) return true;
    seen[static_cast<size_t>(p)] = 1;
    p = mul(p, a);
  }
  return p == 0;
}

bool FiniteRing::is_zero_divisor(int a) const {
  for (int b = 1; b < order_; ++b)
    if (mul(a, b) == 0) return true;
  return false;
}

int FiniteRing::additive_order(int a) const {
  int m = 1;
  int x = a;
  while (x != 0) {
    x = add(x, a);
    ++m;
  }
  return m;
}

RingElement::RingElement(RingPtr ring, int index) : ring_(std::move(ring)), index_(index) {
  if (!ring_) throw Error("RingElement: null ring");
  if (index_ < 0 || index_ >= ring_->order())
    throw Error("RingElement: index " + std::to_string(index_) + " out of range for order " +
                std::to_string(ring_->order()));
}

namespace {
void require_same_ring(const RingElement& a, const RingElement& b) {
  if (a.ring().get() != b.ring().get())
    throw MixedRings("elements of " + a.ring()->name() + " and " + b.ring()->name() +
                     " cannot be combined");
}
}  // namespace

RingElement operator+(const RingElement& a, const RingElement& b) {
  require_same_ring(a, b);
  return RingElement(a.ring(), a.ring()->add(a.index(), b.index()));
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  require_same_ring(a, b);
  return RingElement(a.ring(), a.ring()->mul(a.index(), b.index()));
}

RingElement RingElement::operator-() const {
  return RingElement(ring_, ring_->neg(index_));
}

RingElement RingElement::pow(long long k) const {
  return RingElement(ring_, ring_->pow(index_, k));
}

bool RingElement::operator==(const RingElement& other) const {
  require_same_ring(*this, other);
  return index_ == other.index_;
}

RingElement add(const RingElement& a, const RingElement& b) { return a + b; }
RingElement mul(const RingElement& a, const RingElement& b) { return a * b; }
RingElement neg(const RingElement& a) { return -a; }
RingElement pow(const RingElement& a, long long k) { return a.pow(k); }

ElementClass classify_element(const RingElement& a) {
  const FiniteRing& r = *a.ring();
  ElementClass c;
  c.is_unit = r.is_unit(a.index());
  c.is_nilpotent = r.is_nilpotent(a.index());
  c.is_idempotent = r.is_idempotent(a.index());
  c.is_zero_divisor = r.is_zero_divisor(a.index());
  return c;
}

std::pair<int, int> idempotent_power(const FiniteRing& r, int a) {
  int p = a;
  for (int k = 1; k <= 2 * r.order() + 1; ++k) {
    if (r.mul(p, p) == p) return {p, k};
    p = r.mul(p, a);
  }
  throw Error("idempotent_power: no idempotent power found (not a finite ring?)");
}

std::pair<RingElement, int> idempotent_power(const RingElement& a) {
  auto [e, k] = idempotent_power(*a.ring(), a.index());
  return {RingElement(a.ring(), e), k};
}

// ---------------------------------------------------------------------------
// Homomorphisms
// ---------------------------------------------------------------------------

RingHom::RingHom(RingPtr source, RingPtr target, std::vector<std::uint16_t> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (static_cast<int>(map_.size()) != source_->order())
    throw Error("RingHom: map length must equal source order");
}

RingElement RingHom::operator()(const RingElement& a) const {
  if (a.ring().get() != source_.get()) throw MixedRings("hom applied to foreign element");
  return RingElement(target_, apply(a.index()));
}

bool RingHom::is_injective() const {
  std::vector<char> seen(static_cast<size_t>(target_->order()), 0);
  for (auto v : map_) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool RingHom::is_surjective() const {
  std::vector<char> seen(static_cast<size_t>(target_->order()), 0);
  for (auto v : map_) seen[v] = 1;
  for (char s : seen)
    if (!s) return false;
  return true;
}

std::vector<std::uint16_t> RingHom::kernel_elements() const {
  std::vector<std::uint16_t> out;
  for (int a = 0; a < source_->order(); ++a)
    if (apply(a) == 0) out.push_back(static_cast<std::uint16_t>(a));
  return out;
}

RingHom build_hom(RingPtr source, RingPtr target, const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != source->order())
    throw NotAHom("map length " + std::to_string(map.size()) + " != source order " +
                  std::to_string(source->order()));
  std::vector<std::uint16_t> m(map.size());
  for (size_t i = 0; i < map.size(); ++i) {
    if (map[i] < 0 || map[i] >= target->order())
      throw NotAHom("map value out of range at element " + std::to_string(i));
    m[i] = static_cast<std::uint16_t>(map[i]);
  }
  if (m[0] != 0) throw NotAHom("map does not send 0 to 0");
  if (m[static_cast<size_t>(source->one())] != target->one())
    throw NotAHom("map does not send 1 to 1");
  const int n = source->order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (m[static_cast<size_t>(source->add(a, b))] != target->add(m[static_cast<size_t>(a)], m[static_cast<size_t>(b)]))
        throw NotAHom("additivity fails at witness pair (" + std::to_string(a) + "," +
                      std::to_string(b) + ")");
      if (m[static_cast<size_t>(source->mul(a, b))] != target->mul(m[static_cast<size_t>(a)], m[static_cast<size_t>(b)]))
        throw NotAHom("multiplicativity fails at witness pair (" + std::to_string(a) + "," +
                      std::to_string(b) + ")");
    }
  return RingHom(std::move(source), std::move(target), std::move(m));
}

RingHom identity_hom(RingPtr ring) {
  std::vector<std::uint16_t> m(static_cast<size_t>(ring->order()));
  for (size_t i = 0; i < m.size(); ++i) m[i] = static_cast<std::uint16_t>(i);
  RingPtr copy = ring;
  return RingHom(std::move(copy), std::move(ring), std::move(m));
}

RingHom compose(const RingHom& f, const RingHom& g) {
  if (f.target().get() != g.source().get())
    throw MixedRings("compose: inner target does not match outer source");
  std::vector<std::uint16_t> m(static_cast<size_t>(f.source()->order()));
  for (int a = 0; a < f.source()->order(); ++a)
    m[static_cast<size_t>(a)] = static_cast<std::uint16_t>(g.apply(f.apply(a)));
  return RingHom(f.source(), g.target(), std::move(m));
}

}  // namespace qprim
