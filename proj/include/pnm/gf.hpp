/*
   Copyright 2026 The pnm Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef PNM_GF_HPP
#define PNM_GF_HPP

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pnm {

// Largest field order build_field accepts by default; bounds the memory of
// per-field tables and of the occupancy bitmaps used by bijection tests.
inline constexpr std::uint64_t default_field_cap = std::uint64_t{1} << 22;

// Fields up to this order get discrete-log/antilog tables for O(1) mul/pow.
inline constexpr std::uint64_t log_table_limit = std::uint64_t{1} << 16;

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t mod_pow_u64(std::uint64_t base, std::uint64_t exp,
                                 std::uint64_t m) {
  std::uint64_t acc = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) acc = acc * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return acc;
}

inline std::uint64_t mod_inverse_u64(std::uint64_t a, std::uint64_t p) {
  // p prime, a != 0 mod p
  std::int64_t t = 0, t1 = 1;
  std::int64_t r = static_cast<std::int64_t>(p), r1 = static_cast<std::int64_t>(a % p);
  while (r1 != 0) {
    const std::int64_t qt = r / r1;
    t -= qt * t1;
    std::swap(t, t1);
    r -= qt * r1;
    std::swap(r, r1);
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

inline std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// --- dense polynomials over GF(p), coefficient vectors indexed by degree ---
// Only used while constructing a field (modulus search); element arithmetic
// afterwards goes through the packed-index representation.

using PV = std::vector<std::uint32_t>;

inline void pv_trim(PV& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PV pv_mulmod(const PV& a, const PV& b, const PV& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  const std::size_t r = f.size() - 1;  // f monic of degree r
  std::vector<std::uint64_t> prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  }
  for (std::size_t d = prod.size(); d-- > r;) {
    const std::uint64_t v = prod[d] % p;
    prod[d] = 0;
    if (v == 0) continue;
    for (std::size_t j = 0; j < r; ++j)
      prod[d - r + j] = (prod[d - r + j] + v * (p - f[j])) % p;
  }
  PV out(r, 0);
  for (std::size_t i = 0; i < r && i < prod.size(); ++i)
    out[i] = static_cast<std::uint32_t>(prod[i] % p);
  pv_trim(out);
  return out;
}

inline PV pv_powmod(PV base, std::uint64_t e, const PV& f, std::uint64_t p) {
  PV acc = {1};
  while (e) {
    if (e & 1) acc = pv_mulmod(acc, base, f, p);
    base = pv_mulmod(base, base, f, p);
    e >>= 1;
  }
  return acc;
}

inline PV pv_sub(PV a, const PV& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i)
    a[i] = static_cast<std::uint32_t>((a[i] + p - b[i]) % p);
  pv_trim(a);
  return a;
}

inline PV pv_mod(PV a, const PV& m, std::uint64_t p) {
  pv_trim(a);
  while (a.size() >= m.size()) {
    const std::uint64_t lead =
        std::uint64_t{a.back()} * mod_inverse_u64(m.back(), p) % p;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = static_cast<std::uint32_t>(
          (a[shift + i] + p - lead * m[i] % p) % p);
    pv_trim(a);
  }
  return a;
}

inline PV pv_gcd(PV a, PV b, std::uint64_t p) {
  pv_trim(a);
  pv_trim(b);
  while (!b.empty()) {
    PV r = pv_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin's criterion: monic f of degree r is irreducible over GF(p) iff
// x^(p^r) = x mod f and gcd(x^(p^(r/l)) - x, f) = 1 for every prime l | r.
inline bool pv_irreducible(const PV& f, std::uint64_t p) {
  const std::size_t r = f.size() - 1;
  if (r == 1) return true;
  std::vector<PV> frob(r + 1);  // frob[k] = x^(p^k) mod f
  frob[0] = {0, 1};
  for (std::size_t k = 1; k <= r; ++k)
    frob[k] = pv_powmod(frob[k - 1], p, f, p);
  if (frob[r] != PV{0, 1}) return false;
  for (std::uint64_t l : prime_factors_u64(r)) {
    const PV g = pv_gcd(pv_sub(frob[r / l], PV{0, 1}, p), f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

class FieldElement;
class ElementRange;

/// A concrete GF(p^r): characteristic, degree, a deterministic monic
/// irreducible modulus, and (for q <= 2^16) discrete-log tables. Immutable
/// after construction and safe to share across threads.
///
/// Elements are packed as indices: the element with polynomial-basis
/// coordinates (c_0, ..., c_{r-1}) has index sum(c_i * p^i). Index order is
/// the enumeration order.
class FieldSpec {
 public:
  FieldSpec(std::uint64_t p, std::uint32_t r,
            std::uint64_t cap = default_field_cap) {
    if (!detail::is_prime_u64(p)) throw std::invalid_argument("not prime");
    if (r < 1) throw std::invalid_argument("extension degree must be positive");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
      if (q > cap / p) throw std::invalid_argument("field too large");
      q *= p;
    }
    if (q > cap) throw std::invalid_argument("field too large");
    p_ = p;
    r_ = r;
    q_ = q;
    modulus_ = find_modulus(p, r);
    xr_reduction_.resize(r);
    for (std::uint32_t i = 0; i < r; ++i)
      xr_reduction_[i] = static_cast<std::uint32_t>((p - modulus_[i]) % p);
    if (q_ <= log_table_limit) build_log_tables();
  }

  std::uint64_t p() const { return p_; }
  std::uint32_t r() const { return r_; }
  std::uint64_t q() const { return q_; }

  /// Monic irreducible modulus, coefficients indexed by degree (size r+1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  bool has_log_tables() const { return !exp_.empty(); }

  bool same_field(const FieldSpec& other) const {
    if (this == &other) return true;
    return p_ == other.p_ && q_ == other.q_ && modulus_ == other.modulus_;
  }

  // ---- index-level arithmetic (the hot path for searches) ----

  std::uint32_t add_idx(std::uint32_t a, std::uint32_t b) const {
    if (r_ == 1) {
      const std::uint64_t s = std::uint64_t{a} + b;
      return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
    }
    if (p_ == 2) return a ^ b;
    return digitwise(a, b, /*subtract=*/false);
  }

  std::uint32_t sub_idx(std::uint32_t a, std::uint32_t b) const {
    if (r_ == 1) {
      const std::uint64_t s = std::uint64_t{a} + p_ - b;
      return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
    }
    if (p_ == 2) return a ^ b;
    return digitwise(a, b, /*subtract=*/true);
  }

  std::uint32_t neg_idx(std::uint32_t a) const { return sub_idx(0, a); }

  std::uint32_t mul_idx(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (!exp_.empty()) {
      std::uint64_t e = std::uint64_t{log_[a]} + log_[b];
      if (e >= q_ - 1) e -= q_ - 1;
      return exp_[e];
    }
    return mul_basic(a, b);
  }

  std::uint32_t inv_idx(std::uint32_t a) const {
    if (a == 0) throw std::domain_error("zero has no inverse");
    if (!exp_.empty()) {
      const std::uint64_t e = (q_ - 1 - log_[a]) % (q_ - 1);
      return exp_[e];
    }
    return pow_basic(a, q_ - 2);
  }

  std::uint32_t pow_idx(std::uint32_t a, std::uint64_t n) const {
    if (a == 0) return n == 0 ? 1 : 0;
    if (!exp_.empty()) {
      const std::uint64_t e = std::uint64_t{log_[a]} * (n % (q_ - 1)) % (q_ - 1);
      return exp_[e];
    }
    return pow_basic(a, n);
  }

  /// Polynomial-basis product, independent of the log tables. Exposed so the
  /// table path can be cross-validated.
  std::uint32_t mul_basic(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    std::array<std::uint64_t, 24> da{}, db{};
    unpack(a, da);
    unpack(b, db);
    std::array<std::uint64_t, 47> prod{};
    for (std::uint32_t i = 0; i < r_; ++i) {
      if (da[i] == 0) continue;
      for (std::uint32_t j = 0; j < r_; ++j) prod[i + j] += da[i] * db[j];
    }
    for (std::uint32_t d = 2 * r_ - 2; d >= r_ && d < 47; --d) {
      const std::uint64_t v = prod[d] % p_;
      prod[d] = 0;
      if (v == 0) continue;
      for (std::uint32_t j = 0; j < r_; ++j)
        prod[d - r_ + j] += v * xr_reduction_[j];
      if (d == r_) break;
    }
    std::uint64_t idx = 0, pw = 1;
    for (std::uint32_t i = 0; i < r_; ++i) {
      idx += (prod[i] % p_) * pw;
      pw *= p_;
    }
    return static_cast<std::uint32_t>(idx);
  }

  // ---- element factories ----

  FieldElement zero() const;
  FieldElement one() const;
  /// The prime-subfield constant v mod p.
  FieldElement element(std::int64_t v) const;
  FieldElement from_index(std::uint64_t idx) const;
  FieldElement from_coeffs(const std::vector<std::uint32_t>& coeffs) const;
  ElementRange elements() const;

  std::vector<std::uint32_t> coeffs_of(std::uint32_t idx) const {
    std::vector<std::uint32_t> out(r_);
    for (std::uint32_t i = 0; i < r_; ++i) {
      out[i] = static_cast<std::uint32_t>(idx % p_);
      idx = static_cast<std::uint32_t>(idx / p_);
    }
    return out;
  }

 private:
  static std::vector<std::uint32_t> find_modulus(std::uint64_t p,
                                                 std::uint32_t r) {
    if (r == 1) return {0, 1};  // x
    // Scan monic candidates x^r + sum(c_i x^i) in increasing order of the
    // packed value sum(c_i p^i); the first irreducible one is the modulus.
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < r; ++i) count *= p;
    for (std::uint64_t v = 0; v < count; ++v) {
      detail::PV f(r + 1, 0);
      std::uint64_t x = v;
      for (std::uint32_t i = 0; i < r; ++i) {
        f[i] = static_cast<std::uint32_t>(x % p);
        x /= p;
      }
      f[r] = 1;
      if (detail::pv_irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible modulus found");  // unreachable
  }

  void unpack(std::uint32_t idx, std::array<std::uint64_t, 24>& d) const {
    for (std::uint32_t i = 0; i < r_; ++i) {
      d[i] = idx % p_;
      idx = static_cast<std::uint32_t>(idx / p_);
    }
  }

  std::uint32_t digitwise(std::uint32_t a, std::uint32_t b, bool subtract) const {
    std::uint64_t idx = 0, pw = 1;
    for (std::uint32_t i = 0; i < r_; ++i) {
      const std::uint64_t da = a % p_, db = b % p_;
      const std::uint64_t s = subtract ? da + p_ - db : da + db;
      idx += (s >= p_ ? s - p_ : s) * pw;
      pw *= p_;
      a = static_cast<std::uint32_t>(a / p_);
      b = static_cast<std::uint32_t>(b / p_);
    }
    return static_cast<std::uint32_t>(idx);
  }

  std::uint32_t pow_basic(std::uint32_t a, std::uint64_t n) const {
    std::uint32_t acc = 1;
    while (n) {
      if (n & 1) acc = mul_basic(acc, a);
      a = mul_basic(a, a);
      n >>= 1;
    }
    return acc;
  }

  void build_log_tables() {
    const std::uint64_t n = q_ - 1;
    const auto factors = detail::prime_factors_u64(n);
    std::uint32_t gen = 0;
    for (std::uint32_t g = 2; g < q_; ++g) {
      bool primitive = true;
      for (std::uint64_t l : factors) {
        if (pow_basic(g, n / l) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        gen = g;
        break;
      }
    }
    if (gen == 0 && q_ > 2) throw std::logic_error("no generator found");
    if (q_ == 2) gen = 1;

    exp_.assign(n, 0);
    log_.assign(q_, 0);
    std::uint32_t acc = 1;
    for (std::uint64_t e = 0; e < n; ++e) {
      exp_[e] = acc;
      log_[acc] = static_cast<std::uint32_t>(e);
      acc = mul_basic(acc, gen);
    }
    if (acc != 1) throw std::logic_error("generator order mismatch");

    // The tables are only an accelerator; cross-check them against the
    // polynomial-basis product on random pairs before trusting them.
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ (p_ << 32) ^ q_);
    std::uniform_int_distribution<std::uint64_t> dist(0, q_ - 1);
    for (int i = 0; i < 1000; ++i) {
      const auto a = static_cast<std::uint32_t>(dist(rng));
      const auto b = static_cast<std::uint32_t>(dist(rng));
      std::uint32_t expected = mul_basic(a, b);
      std::uint32_t got = a == 0 || b == 0
                              ? 0
                              : exp_[(std::uint64_t{log_[a]} + log_[b]) % n];
      if (expected != got) throw std::logic_error("log table validation failed");
    }
  }

  std::uint64_t p_ = 0;
  std::uint64_t q_ = 0;
  std::uint32_t r_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> xr_reduction_;  // x^r reduced: size r
  std::vector<std::uint32_t> exp_;           // exp_[e] = g^e, size q-1
  std::vector<std::uint32_t> log_;           // log_[a] for a != 0, size q
};

inline FieldSpec build_field(std::uint64_t p, std::uint32_t r,
                             std::uint64_t cap = default_field_cap) {
  return FieldSpec(p, r, cap);
}

/// A value in a FieldSpec. Immutable; mixing elements of distinct fields
/// throws.
class FieldElement {
 public:
  FieldElement() = default;  // detached zero, only valid for containers
  FieldElement(const FieldSpec& f, std::uint32_t idx) : f_(&f), idx_(idx) {}

  const FieldSpec& field() const {
    if (!f_) throw std::logic_error("detached field element");
    return *f_;
  }
  std::uint32_t index() const { return idx_; }
  bool is_zero() const { return idx_ == 0; }
  std::vector<std::uint32_t> coeffs() const { return field().coeffs_of(idx_); }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    const FieldSpec& f = same(a, b);
    return {f, f.add_idx(a.idx_, b.idx_)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    const FieldSpec& f = same(a, b);
    return {f, f.sub_idx(a.idx_, b.idx_)};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    const FieldSpec& f = same(a, b);
    return {f, f.mul_idx(a.idx_, b.idx_)};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    const FieldSpec& f = same(a, b);
    return {f, f.mul_idx(a.idx_, f.inv_idx(b.idx_))};
  }
  FieldElement operator-() const { return {field(), field().neg_idx(idx_)}; }

  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

  FieldElement inv() const { return {field(), field().inv_idx(idx_)}; }
  FieldElement pow(std::uint64_t n) const {
    return {field(), field().pow_idx(idx_, n)};
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    same(a, b);
    return a.idx_ == b.idx_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) {
    return !(a == b);
  }

 private:
  static const FieldSpec& same(const FieldElement& a, const FieldElement& b) {
    if (!a.f_ || !b.f_) throw std::logic_error("detached field element");
    if (a.f_ == b.f_ || a.f_->same_field(*b.f_)) return *a.f_;
    throw std::invalid_argument("field mismatch");
  }

  const FieldSpec* f_ = nullptr;
  std::uint32_t idx_ = 0;
};

/// Lazily enumerates all q elements in index order (each appears once).
class ElementRange {
 public:
  class iterator {
   public:
    iterator(const FieldSpec& f, std::uint64_t idx) : f_(&f), idx_(idx) {}
    FieldElement operator*() const {
      return {*f_, static_cast<std::uint32_t>(idx_)};
    }
    iterator& operator++() {
      ++idx_;
      return *this;
    }
    bool operator!=(const iterator& o) const { return idx_ != o.idx_; }

   private:
    const FieldSpec* f_;
    std::uint64_t idx_;
  };

  explicit ElementRange(const FieldSpec& f) : f_(&f) {}
  iterator begin() const { return {*f_, 0}; }
  iterator end() const { return {*f_, f_->q()}; }

 private:
  const FieldSpec* f_;
};

inline FieldElement FieldSpec::zero() const { return {*this, 0}; }
inline FieldElement FieldSpec::one() const { return {*this, 1}; }

inline FieldElement FieldSpec::element(std::int64_t v) const {
  std::int64_t m = v % static_cast<std::int64_t>(p_);
  if (m < 0) m += static_cast<std::int64_t>(p_);
  return {*this, static_cast<std::uint32_t>(m)};
}

inline FieldElement FieldSpec::from_index(std::uint64_t idx) const {
  if (idx >= q_) throw std::out_of_range("element index out of range");
  return {*this, static_cast<std::uint32_t>(idx)};
}

inline FieldElement FieldSpec::from_coeffs(
    const std::vector<std::uint32_t>& coeffs) const {
  if (coeffs.size() != r_) throw std::invalid_argument("coefficient count");
  std::uint64_t idx = 0, pw = 1;
  for (std::uint32_t i = 0; i < r_; ++i) {
    if (coeffs[i] >= p_) throw std::invalid_argument("coefficient range");
    idx += coeffs[i] * pw;
    pw *= p_;
  }
  return {*this, static_cast<std::uint32_t>(idx)};
}

inline ElementRange FieldSpec::elements() const { return ElementRange(*this); }

/// The unique embedding-by-chosen-root of GF(p^s) into GF(p^r) when s | r:
/// the generator of the subfield's polynomial basis is sent to the smallest
/// root (in index order) of the subfield modulus.
class SubfieldEmbedding {
 public:
  SubfieldEmbedding(const FieldSpec& sub, const FieldSpec& sup)
      : sub_(&sub), sup_(&sup) {
    if (sub.p() != sup.p()) throw std::invalid_argument("characteristic mismatch");
    if (sup.r() % sub.r() != 0)
      throw std::invalid_argument("not a subfield: degree does not divide");
    std::uint32_t root = 0;
    bool found = false;
    for (std::uint64_t cand = 0; cand < sup.q(); ++cand) {
      std::uint32_t acc = 0;
      const auto& m = sub.modulus();
      for (std::size_t i = m.size(); i-- > 0;) {
        acc = sup.mul_idx(acc, static_cast<std::uint32_t>(cand));
        acc = sup.add_idx(acc, m[i]);  // prime-subfield constant
      }
      if (acc == 0) {
        root = static_cast<std::uint32_t>(cand);
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("subfield modulus has no root");
    map_.resize(sub.q());
    for (std::uint64_t idx = 0; idx < sub.q(); ++idx) {
      const auto digits = sub.coeffs_of(static_cast<std::uint32_t>(idx));
      std::uint32_t acc = 0;
      for (std::size_t i = digits.size(); i-- > 0;) {
        acc = sup.mul_idx(acc, root);
        acc = sup.add_idx(acc, digits[i]);
      }
      map_[idx] = acc;
    }
  }

  std::uint32_t map_index(std::uint32_t idx) const { return map_.at(idx); }

  FieldElement operator()(const FieldElement& a) const {
    if (!a.field().same_field(*sub_))
      throw std::invalid_argument("element not in the embedded subfield");
    return {*sup_, map_.at(a.index())};
  }

 private:
  const FieldSpec* sub_;
  const FieldSpec* sup_;
  std::vector<std::uint32_t> map_;
};

}  // namespace pnm

#endif
