#ifndef FROBRIG_LPOLY_HPP
#define FROBRIG_LPOLY_HPP

#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace frobrig {

/// Guard against exponent blowup in repeated powering; settable by tests.
inline std::int64_t g_exponent_cap = 1'000'000;

/// Sparse Laurent polynomial over a FieldCtx: finite map exponent -> nonzero
/// coefficient. Exponents may be negative. Value type.
class LPoly {
 public:
  using TermMap = std::map<std::int64_t, FieldElem>;

  explicit LPoly(FieldCtxPtr ctx) : ctx_(std::move(ctx)) {}

  static LPoly monomial(const FieldCtxPtr& ctx, std::int64_t exp, const FieldElem& coeff) {
    LPoly r(ctx);
    r.add_term(exp, coeff);
    return r;
  }
  static LPoly constant(const FieldCtxPtr& ctx, const FieldElem& c) { return monomial(ctx, 0, c); }
  static LPoly variable(const FieldCtxPtr& ctx) { return monomial(ctx, 1, ctx->one()); }

  const FieldCtxPtr& ctx() const { return ctx_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
  }
  bool has_negative_exponents() const {
    return !terms_.empty() && terms_.begin()->first < 0;
  }

  /// Largest exponent; only defined for nonzero polynomials.
  std::int64_t degree() const {
    if (is_zero()) throw ZeroPolynomial{};
    return terms_.rbegin()->first;
  }
  /// Smallest exponent; only defined for nonzero polynomials.
  std::int64_t low_exponent() const {
    if (is_zero()) throw ZeroPolynomial{};
    return terms_.begin()->first;
  }

  FieldElem coeff(std::int64_t exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? ctx_->zero() : it->second;
  }
  FieldElem leading_coeff() const {
    if (is_zero()) throw ZeroPolynomial{};
    return terms_.rbegin()->second;
  }

  void add_term(std::int64_t exp, const FieldElem& c) {
    if (std::llabs(exp) > g_exponent_cap)
      throw ExponentOverflow(std::to_string(exp));
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(exp, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend bool operator==(const LPoly& a, const LPoly& b) {
    return a.ctx_->same_as(*b.ctx_) && a.terms_ == b.terms_;
  }
  friend bool operator!=(const LPoly& a, const LPoly& b) { return !(a == b); }

  LPoly& operator+=(const LPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LPoly& operator-=(const LPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend LPoly operator+(LPoly a, const LPoly& b) { return a += b; }
  friend LPoly operator-(LPoly a, const LPoly& b) { return a -= b; }
  friend LPoly operator-(const LPoly& a) {
    LPoly r(a.ctx_);
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
    return r;
  }

  friend LPoly operator*(const LPoly& a, const LPoly& b) {
    a.check(b);
    LPoly r(a.ctx_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  LPoly& operator*=(const LPoly& o) { return *this = *this * o; }

  friend LPoly operator*(const LPoly& a, const FieldElem& s) {
    LPoly r(a.ctx_);
    for (const auto& [e, c] : a.terms_) r.add_term(e, c * s);
    return r;
  }

 private:
  void check(const LPoly& o) const {
    if (!ctx_->same_as(*o.ctx_)) throw CtxMismatch{};
  }

  FieldCtxPtr ctx_;
  TermMap terms_;
};

inline LPoly pow(const LPoly& base, std::uint64_t k) {
  LPoly r = LPoly::constant(base.ctx(), base.ctx()->one());
  LPoly b = base;
  while (k) {
    if (k & 1) r *= b;
    if ((k >>= 1)) b *= b;
  }
  return r;
}

/// f^(p^k), computed termwise: exponents scale by p^k and coefficients are
/// raised to p^k. Identical to pow(f, p^k) but without intermediate blowup.
inline LPoly frobenius_power(const LPoly& f, std::uint64_t k) {
  std::int64_t scale = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    scale *= f.ctx()->p();
    if (std::llabs(scale) > g_exponent_cap) throw ExponentOverflow("p^k exponent scale");
  }
  LPoly r(f.ctx());
  for (const auto& [e, c] : f.terms()) r.add_term(e * scale, frobenius(c, k, 1));
  return r;
}

/// Substitution u(f); u must be an ordinary polynomial (no negative
/// exponents), f may be Laurent. Ring homomorphism in u.
inline LPoly compose(const LPoly& u, const LPoly& f) {
  if (u.has_negative_exponents()) throw NegativeExponentInOuter{};
  if (!u.ctx()->same_as(*f.ctx())) throw CtxMismatch{};
  // sparse Horner over descending exponents
  LPoly acc(u.ctx());
  std::int64_t prev = 0;
  bool first = true;
  for (auto it = u.terms().rbegin(); it != u.terms().rend(); ++it) {
    if (!first) acc = acc * pow(f, static_cast<std::uint64_t>(prev - it->first));
    acc += LPoly::constant(u.ctx(), it->second);
    prev = it->first;
    first = false;
  }
  if (!first) acc = acc * pow(f, static_cast<std::uint64_t>(prev));
  return acc;
}

/// Termwise derivative n c t^(n-1); exponents divisible by p die.
inline LPoly derivative(const LPoly& f) {
  LPoly r(f.ctx());
  for (const auto& [e, c] : f.terms()) {
    FieldElem n = f.ctx()->from_int(e);
    if (!n.is_zero()) r.add_term(e - 1, c * n);
  }
  return r;
}

/// Evaluate f at a point of the same field.
inline FieldElem evaluate(const LPoly& f, const FieldElem& a) {
  if (!f.ctx()->same_as(*a.ctx())) throw CtxMismatch{};
  if (f.has_negative_exponents() && a.is_zero()) throw ZeroAtPole{};
  FieldElem acc = a.ctx()->zero();
  for (const auto& [e, c] : f.terms()) acc += c * pow(a, e);
  return acc;
}

/// Evaluate f at a point of a tower field after embedding the coefficients.
inline FieldElem evaluate(const LPoly& f, const FieldElem& a, const Embedding& emb) {
  if (!f.ctx()->same_as(*emb.base())) throw CtxMismatch{};
  if (!a.ctx()->same_as(*emb.tower())) throw CtxMismatch{};
  if (f.has_negative_exponents() && a.is_zero()) throw ZeroAtPole{};
  FieldElem acc = a.ctx()->zero();
  for (const auto& [e, c] : f.terms()) acc += emb.apply(c) * pow(a, e);
  return acc;
}

/// p-th root of a coefficient; always exists (finite fields are perfect).
inline FieldElem coeff_pth_root(const FieldElem& c) {
  return frobenius(c, c.ctx()->e() - 1, 1);  // c^(p^(e-1)) inverts c -> c^p
}

/// Exact p-th root, present iff every exponent is divisible by p.
inline std::optional<LPoly> pth_root(const LPoly& f) {
  const std::int64_t p = f.ctx()->p();
  for (const auto& [e, c] : f.terms())
    if (e % p != 0) return std::nullopt;
  LPoly r(f.ctx());
  for (const auto& [e, c] : f.terms()) r.add_term(e / p, coeff_pth_root(c));
  return r;
}

/// f = core^(p^exponent) with core not a p-th power.
struct FrobeniusForm {
  LPoly core;
  std::uint32_t exponent = 0;
};

/// Strip the maximal p-power part of a nonconstant polynomial.
inline FrobeniusForm frobenius_reduce(const LPoly& f) {
  if (f.is_constant()) throw ConstantInput{};
  FrobeniusForm form{f, 0};
  for (auto r = pth_root(form.core); r; r = pth_root(form.core)) {
    form.core = std::move(*r);
    ++form.exponent;
  }
  return form;
}

/// Quotient and remainder for polynomials with nonnegative exponents.
inline std::pair<LPoly, LPoly> divmod(const LPoly& num, const LPoly& den) {
  if (den.is_zero()) throw ZeroPolynomial{};
  if (num.has_negative_exponents() || den.has_negative_exponents())
    throw Error("divmod requires nonnegative exponents");
  LPoly q(num.ctx());
  LPoly r = num;
  FieldElem lcinv = inverse(den.leading_coeff());
  const std::int64_t dd = den.degree();
  while (!r.is_zero() && r.degree() >= dd) {
    FieldElem c = r.leading_coeff() * lcinv;
    std::int64_t shift = r.degree() - dd;
    q.add_term(shift, c);
    LPoly sub(r.ctx());
    for (const auto& [e, dc] : den.terms()) sub.add_term(e + shift, dc * c);
    r -= sub;
  }
  return {std::move(q), std::move(r)};
}

/// Monic gcd for polynomials with nonnegative exponents.
inline LPoly gcd_monic(LPoly a, LPoly b) {
  while (!b.is_zero()) {
    LPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) a = a * inverse(a.leading_coeff());
  return a;
}

/// Number of distinct roots of f in the algebraic closure.
///
/// f / gcd(f, f') only exposes the factors whose multiplicity is prime to p;
/// factors with p | multiplicity sit entirely inside the gcd and form a p-th
/// power once the tame factors are stripped, so recurse on its p-th root.
inline std::int64_t squarefree_root_count(LPoly f) {
  if (f.is_zero()) throw ZeroPolynomial{};
  if (f.has_negative_exponents()) throw Error("root count requires nonnegative exponents");
  while (!f.is_constant() && derivative(f).is_zero()) f = *pth_root(f);
  if (f.is_constant()) return 0;
  LPoly g = gcd_monic(f, derivative(f));
  LPoly w = divmod(f, g).first;  // squarefree product of the tame factors
  for (LPoly h = gcd_monic(g, w); h.degree() > 0; h = gcd_monic(g, w))
    g = divmod(g, h).first;
  std::int64_t tame = w.is_constant() ? 0 : w.degree();
  return g.is_constant() ? tame : tame + squarefree_root_count(g);
}

inline std::string to_string(const LPoly& f, const std::string& var = "t") {
  if (f.is_zero()) return "0";
  std::string s;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    if (!s.empty()) s += " + ";
    std::string cs = to_string(c);
    bool needs_parens = cs.find('+') != std::string::npos || cs.find('*') != std::string::npos;
    if (needs_parens) cs = "(" + cs + ")";
    if (e == 0) {
      s += cs;
    } else {
      std::string mono = e == 1 ? var : var + "^" + std::to_string(e);
      s += cs == "1" ? mono : cs + "*" + mono;
    }
  }
  return s;
}

}  // namespace frobrig

#endif
