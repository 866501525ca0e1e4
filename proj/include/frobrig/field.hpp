#ifndef FROBRIG_FIELD_HPP
#define FROBRIG_FIELD_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace frobrig {

using bigint = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultEnumBudget = std::uint64_t{1} << 20;

namespace detail {

// Dense polynomials over Z/p, coefficients low-to-high, used for modulus
// handling and element arithmetic.
using PPoly = std::vector<std::uint32_t>;

inline std::uint32_t addm(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<std::uint32_t>(s >= p ? s - p : s);
}
inline std::uint32_t subm(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : static_cast<std::uint32_t>(a + std::uint64_t{p} - b);
}
inline std::uint32_t mulm(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
}
inline std::uint32_t powm(std::uint32_t a, std::uint64_t k, std::uint32_t p) {
  std::uint32_t r = 1 % p;
  while (k) {
    if (k & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    k >>= 1;
  }
  return r;
}
inline std::uint32_t invm(std::uint32_t a, std::uint32_t p) {
  if (a == 0) throw DivideByZero{};
  return powm(a, p - 2, p);  // p prime
}

inline void ptrim(PPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
inline int pdeg(const PPoly& f) { return static_cast<int>(f.size()) - 1; }  // -1 for zero

inline PPoly pmul(const PPoly& a, const PPoly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  PPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = addm(r[i + j], mulm(a[i], b[j], p), p);
  }
  ptrim(r);
  return r;
}

inline PPoly psub(const PPoly& a, const PPoly& b, std::uint32_t p) {
  PPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint32_t x = i < a.size() ? a[i] : 0;
    std::uint32_t y = i < b.size() ? b[i] : 0;
    r[i] = subm(x, y, p);
  }
  ptrim(r);
  return r;
}

// Remainder of a modulo f; f need not be monic.
inline PPoly pmod(PPoly a, const PPoly& f, std::uint32_t p) {
  ptrim(a);
  std::uint32_t lcinv = invm(f.back(), p);
  while (pdeg(a) >= pdeg(f)) {
    std::uint32_t c = mulm(a.back(), lcinv, p);
    std::size_t shift = a.size() - f.size();
    for (std::size_t i = 0; i < f.size(); ++i)
      a[i + shift] = subm(a[i + shift], mulm(c, f[i], p), p);
    ptrim(a);
  }
  return a;
}

inline PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& f, std::uint32_t p) {
  return pmod(pmul(a, b, p), f, p);
}

inline PPoly ppowmod(PPoly a, std::uint64_t k, const PPoly& f, std::uint32_t p) {
  PPoly r{1 % p};
  ptrim(r);
  a = pmod(std::move(a), f, p);
  while (k) {
    if (k & 1) r = pmulmod(r, a, f, p);
    a = pmulmod(a, a, f, p);
    k >>= 1;
  }
  return r;
}

inline PPoly pgcd(PPoly a, PPoly b, std::uint32_t p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    PPoly r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    std::uint32_t inv = invm(a.back(), p);
    for (auto& c : a) c = mulm(c, inv, p);
  }
  return a;
}

inline bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; std::uint64_t{d} * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Rabin test: f monic of degree e is irreducible over Z/p iff
// x^(p^e) = x mod f and gcd(x^(p^(e/l)) - x, f) = 1 for prime l | e.
inline bool is_irreducible(const PPoly& f, std::uint32_t p) {
  int e = pdeg(f);
  if (e <= 0) return false;
  if (e == 1) return true;
  PPoly x{0, 1};
  auto frob_iterate = [&](int k) {
    PPoly u = x;
    for (int i = 0; i < k; ++i) u = ppowmod(std::move(u), p, f, p);
    return u;
  };
  std::vector<int> prime_divs;
  int m = e;
  for (int d = 2; d * d <= m; ++d)
    while (m % d == 0) {
      if (prime_divs.empty() || prime_divs.back() != d) prime_divs.push_back(d);
      m /= d;
    }
  if (m > 1) prime_divs.push_back(m);
  for (int l : prime_divs) {
    PPoly u = psub(frob_iterate(e / l), x, p);
    if (pgcd(u, f, p).size() != 1) return false;
  }
  return psub(frob_iterate(e), x, p).empty();
}

}  // namespace detail

class FieldCtx;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;
class FieldElem;
class ElementRange;

/// A finite field GF(p^e) presented as Z/p[x]/(modulus). Immutable; share
/// freely across threads.
class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
 public:
  /// If no modulus is given, picks the monic irreducible of degree e whose
  /// coefficient vector (c_0, ..., c_{e-1}) has the smallest value
  /// sum c_i p^i. The choice is deterministic, so element encodings are
  /// reproducible across runs.
  static FieldCtxPtr create(std::uint32_t p, std::uint32_t e,
                            std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
    if (!detail::is_prime_u32(p)) throw NotPrime(std::to_string(p));
    if (e < 1) throw DegreeMismatch("extension degree must be >= 1");
    detail::PPoly m;
    if (modulus) {
      m = *modulus;
      for (auto& c : m) c %= p;
      if (m.size() != e + 1 || (*modulus)[e] != 1)
        throw DegreeMismatch("modulus must be monic of degree " + std::to_string(e));
      if (!detail::is_irreducible(m, p)) throw ReducibleModulus(modulus_string(m));
    } else {
      m = smallest_irreducible(p, e);
    }
    return FieldCtxPtr(new FieldCtx(p, e, std::move(m)));
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  const bigint& q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  bool same_as(const FieldCtx& other) const {
    return this == &other || (p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_);
  }

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_int(std::int64_t n) const;
  FieldElem from_coords(std::vector<std::uint32_t> coords) const;
  FieldElem gen() const;  // the class of x

  /// All q elements in a fixed order (coordinate odometer, low digit first).
  ElementRange all_elements(std::uint64_t budget = kDefaultEnumBudget) const;

  std::uint64_t q_as_u64() const {
    if (q_ > std::numeric_limits<std::uint64_t>::max())
      throw BudgetExceeded("field too large to enumerate");
    return static_cast<std::uint64_t>(q_);
  }

 private:
  FieldCtx(std::uint32_t p, std::uint32_t e, detail::PPoly m)
      : p_(p), e_(e), modulus_(std::move(m)) {
    q_ = 1;
    for (std::uint32_t i = 0; i < e_; ++i) q_ *= p_;
  }

  static std::string modulus_string(const detail::PPoly& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
    return s + "]";
  }

  static detail::PPoly smallest_irreducible(std::uint32_t p, std::uint32_t e) {
    detail::PPoly cand(e + 1, 0);
    cand[e] = 1;
    bigint total = 1;
    for (std::uint32_t i = 0; i < e; ++i) total *= p;
    for (bigint v = 0; v < total; ++v) {
      bigint rest = v;
      for (std::uint32_t i = 0; i < e; ++i) {
        cand[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      if (detail::is_irreducible(cand, p)) return cand;
    }
    throw Error("no irreducible polynomial found");  // unreachable: they exist for all p, e
  }

  std::uint32_t p_;
  std::uint32_t e_;
  std::vector<std::uint32_t> modulus_;
  bigint q_;
};

/// An element of a FieldCtx: a coordinate vector of length e over Z/p in the
/// basis 1, x, ..., x^{e-1}. Plain value type.
class FieldElem {
 public:
  FieldElem(FieldCtxPtr ctx, std::vector<std::uint32_t> coords)
      : ctx_(std::move(ctx)), c_(std::move(coords)) {
    if (c_.size() != ctx_->e()) throw DegreeMismatch("coordinate count");
  }

  const FieldCtxPtr& ctx() const { return ctx_; }
  const std::vector<std::uint32_t>& coords() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](std::uint32_t v) { return v == 0; });
  }
  bool is_one() const {
    if (c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](std::uint32_t v) { return v == 0; });
  }

  /// Coordinate odometer value sum c_i p^i; doubles as a deterministic sort key.
  std::uint64_t value() const {
    std::uint64_t v = 0;
    for (std::size_t i = c_.size(); i-- > 0;) v = v * ctx_->p() + c_[i];
    return v;
  }

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.ctx_->same_as(*b.ctx_) && a.c_ == b.c_;
  }
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }
  friend bool operator<(const FieldElem& a, const FieldElem& b) { return a.value() < b.value(); }

  FieldElem& operator+=(const FieldElem& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = detail::addm(c_[i], o.c_[i], ctx_->p());
    return *this;
  }
  FieldElem& operator-=(const FieldElem& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = detail::subm(c_[i], o.c_[i], ctx_->p());
    return *this;
  }
  FieldElem& operator*=(const FieldElem& o) {
    check(o);
    const std::uint32_t p = ctx_->p();
    detail::PPoly prod = detail::pmul(c_, o.c_, p);
    prod = detail::pmod(std::move(prod), ctx_->modulus(), p);
    prod.resize(ctx_->e(), 0);
    c_ = std::move(prod);
    return *this;
  }

  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator-(const FieldElem& a) {
    FieldElem r = a.ctx_->zero();
    return r -= a;
  }
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * inverse(b); }

  friend FieldElem inverse(const FieldElem& a) {
    if (a.is_zero()) throw DivideByZero{};
    // extended Euclid on (a, modulus) over Z/p
    const std::uint32_t p = a.ctx_->p();
    detail::PPoly r0 = a.ctx_->modulus(), r1 = a.c_;
    detail::ptrim(r1);
    detail::PPoly s0{}, s1{1};
    while (!r1.empty()) {
      // one division step: r0 = q*r1 + r2
      detail::PPoly q(std::max<std::size_t>(r0.size(), 1), 0);
      detail::PPoly rem = r0;
      std::uint32_t lcinv = detail::invm(r1.back(), p);
      while (detail::pdeg(rem) >= detail::pdeg(r1)) {
        std::uint32_t c = detail::mulm(rem.back(), lcinv, p);
        std::size_t shift = rem.size() - r1.size();
        q[shift] = c;
        for (std::size_t i = 0; i < r1.size(); ++i)
          rem[i + shift] = detail::subm(rem[i + shift], detail::mulm(c, r1[i], p), p);
        detail::ptrim(rem);
      }
      detail::ptrim(q);
      detail::PPoly s2 = detail::psub(s0, detail::pmul(q, s1, p), p);
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r0 = gcd = nonzero constant (modulus irreducible), s0 * a = r0 mod modulus
    std::uint32_t scale = detail::invm(r0[0], p);
    for (auto& c : s0) c = detail::mulm(c, scale, p);
    s0.resize(a.ctx_->e(), 0);
    return FieldElem(a.ctx_, std::move(s0));
  }

 private:
  void check(const FieldElem& o) const {
    if (!ctx_->same_as(*o.ctx_)) throw CtxMismatch{};
  }

  FieldCtxPtr ctx_;
  std::vector<std::uint32_t> c_;
};

inline FieldElem FieldCtx::zero() const {
  return FieldElem(shared_from_this(), std::vector<std::uint32_t>(e_, 0));
}
inline FieldElem FieldCtx::one() const {
  std::vector<std::uint32_t> c(e_, 0);
  c[0] = 1 % p_;
  return FieldElem(shared_from_this(), std::move(c));
}
inline FieldElem FieldCtx::from_int(std::int64_t n) const {
  std::int64_t r = n % p_;
  if (r < 0) r += p_;
  std::vector<std::uint32_t> c(e_, 0);
  c[0] = static_cast<std::uint32_t>(r);
  return FieldElem(shared_from_this(), std::move(c));
}
inline FieldElem FieldCtx::from_coords(std::vector<std::uint32_t> coords) const {
  if (coords.size() > e_) throw DegreeMismatch("too many coordinates");
  coords.resize(e_, 0);
  for (auto& c : coords) c %= p_;
  return FieldElem(shared_from_this(), std::move(coords));
}
inline FieldElem FieldCtx::gen() const {
  std::vector<std::uint32_t> c(e_, 0);
  if (e_ == 1) return zero();  // x = 0 mod x (default degree-1 modulus)
  c[1] = 1;
  return FieldElem(shared_from_this(), std::move(c));
}

inline FieldElem pow(FieldElem a, std::int64_t k) {
  if (k < 0) return pow(inverse(a), -k);
  FieldElem r = a.ctx()->one();
  while (k) {
    if (k & 1) r *= a;
    a *= a;
    k >>= 1;
  }
  return r;
}

/// a^(p^(r*m)): m steps of the p^r-power Frobenius.
inline FieldElem frobenius(FieldElem a, std::uint64_t m, std::uint32_t base_degree_r = 1) {
  const std::uint32_t p = a.ctx()->p();
  for (std::uint64_t i = 0; i < m * base_degree_r; ++i) a = pow(a, p);
  return a;
}

/// Trace down to the prime field: a + a^p + ... + a^(p^(e-1)), returned as an
/// integer mod p.
inline std::uint32_t trace_to_prime(const FieldElem& a) {
  FieldElem acc = a;
  FieldElem t = a;
  for (std::uint32_t i = 1; i < a.ctx()->e(); ++i) {
    t = pow(t, a.ctx()->p());
    acc += t;
  }
  for (std::size_t i = 1; i < acc.coords().size(); ++i)
    if (acc.coords()[i] != 0) throw Error("trace landed outside the prime field");
  return acc.coords()[0];
}

/// Orbit of a under the p^r-power Frobenius, in walk order starting at a.
inline std::vector<FieldElem> galois_orbit(const FieldElem& a, std::uint32_t base_degree_r = 1) {
  std::vector<FieldElem> orbit{a};
  FieldElem t = frobenius(a, 1, base_degree_r);
  while (!(t == a)) {
    orbit.push_back(t);
    t = frobenius(t, 1, base_degree_r);
  }
  return orbit;
}

class ElementRange {
 public:
  ElementRange(FieldCtxPtr ctx, std::uint64_t count) : ctx_(std::move(ctx)), count_(count) {}

  class iterator {
   public:
    using value_type = FieldElem;
    using difference_type = std::ptrdiff_t;

    iterator(const FieldCtx* ctx, std::uint64_t idx) : ctx_(ctx), idx_(idx) {}
    FieldElem operator*() const {
      std::uint64_t v = idx_;
      std::vector<std::uint32_t> c(ctx_->e(), 0);
      for (std::uint32_t i = 0; i < ctx_->e() && v; ++i) {
        c[i] = static_cast<std::uint32_t>(v % ctx_->p());
        v /= ctx_->p();
      }
      return FieldElem(ctx_->shared_from_this(), std::move(c));
    }
    iterator& operator++() {
      ++idx_;
      return *this;
    }
    bool operator!=(const iterator& o) const { return idx_ != o.idx_; }
    bool operator==(const iterator& o) const { return idx_ == o.idx_; }

   private:
    const FieldCtx* ctx_;
    std::uint64_t idx_;
  };

  iterator begin() const { return iterator(ctx_.get(), 0); }
  iterator end() const { return iterator(ctx_.get(), count_); }
  std::uint64_t size() const { return count_; }

 private:
  FieldCtxPtr ctx_;
  std::uint64_t count_;
};

inline ElementRange FieldCtx::all_elements(std::uint64_t budget) const {
  if (q_ > budget)
    throw BudgetExceeded("q = p^" + std::to_string(e_) + " with p = " + std::to_string(p_));
  return ElementRange(shared_from_this(), static_cast<std::uint64_t>(q_));
}

/// Coefficient embedding of a base field into a tower field of degree
/// e_base * d over the same prime, realized by a root of the base modulus in
/// the tower. The root chosen is the first in enumeration order, so the
/// embedding is deterministic.
class Embedding {
 public:
  Embedding(FieldCtxPtr base, FieldCtxPtr tower, std::uint64_t budget = kDefaultEnumBudget)
      : base_(std::move(base)), tower_(std::move(tower)) {
    if (base_->p() != tower_->p()) throw CtxMismatch{};
    if (tower_->e() % base_->e() != 0)
      throw DegreeMismatch("base degree does not divide tower degree");
    if (base_->e() == 1) return;  // prime field: constants embed as constants
    if (base_->same_as(*tower_)) {
      gen_pows_.push_back(tower_->one());
      FieldElem g = tower_->gen();
      for (std::uint32_t i = 1; i < base_->e(); ++i) gen_pows_.push_back(gen_pows_.back() * g);
      return;
    }
    for (const FieldElem& cand : tower_->all_elements(budget)) {
      if (eval_modulus(cand).is_zero()) {
        gen_pows_.push_back(tower_->one());
        for (std::uint32_t i = 1; i < base_->e(); ++i) gen_pows_.push_back(gen_pows_.back() * cand);
        return;
      }
    }
    throw Error("no root of base modulus in tower");  // unreachable when degrees divide
  }

  const FieldCtxPtr& base() const { return base_; }
  const FieldCtxPtr& tower() const { return tower_; }

  FieldElem apply(const FieldElem& a) const {
    if (!a.ctx()->same_as(*base_)) throw CtxMismatch{};
    if (base_->e() == 1) return tower_->from_int(a.coords()[0]);
    FieldElem acc = tower_->zero();
    for (std::size_t i = 0; i < a.coords().size(); ++i) {
      if (a.coords()[i] == 0) continue;
      acc += gen_pows_[i] * tower_->from_int(a.coords()[i]);
    }
    return acc;
  }

 private:
  FieldElem eval_modulus(const FieldElem& x) const {
    // Horner on the base modulus with coefficients read as prime-field scalars.
    const auto& m = base_->modulus();
    FieldElem acc = tower_->zero();
    for (std::size_t i = m.size(); i-- > 0;) {
      acc = acc * x + tower_->from_int(m[i]);
    }
    return acc;
  }

  FieldCtxPtr base_;
  FieldCtxPtr tower_;
  std::vector<FieldElem> gen_pows_;
};

/// Element rendered as a polynomial in w (the class of x), e.g. "w+1"; prime
/// fields print as bare integers.
inline std::string to_string(const FieldElem& a) {
  const auto& c = a.coords();
  if (a.ctx()->e() == 1) return std::to_string(c[0]);
  std::string s;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(c[i]);
    } else {
      if (c[i] != 1) s += std::to_string(c[i]) + "*";
      s += i == 1 ? "w" : "w^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

}  // namespace frobrig

#endif
