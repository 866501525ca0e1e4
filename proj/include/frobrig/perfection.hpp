#ifndef FROBRIG_PERFECTION_HPP
#define FROBRIG_PERFECTION_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "lpoly.hpp"

namespace frobrig {

/// A rational function num/den in normal form: den monic, gcd(num, den) = 1,
/// nonnegative exponents throughout.
class RationalFn {
 public:
  RationalFn(LPoly num, LPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (!num_.ctx()->same_as(*den_.ctx())) throw CtxMismatch{};
    if (den_.is_zero()) throw ZeroPolynomial{};
    if (num_.has_negative_exponents() || den_.has_negative_exponents())
      throw Error("rational functions use polynomial numerator and denominator");
    normalize();
  }
  explicit RationalFn(const LPoly& num)
      : RationalFn(num, LPoly::constant(num.ctx(), num.ctx()->one())) {}

  const LPoly& num() const { return num_; }
  const LPoly& den() const { return den_; }
  const FieldCtxPtr& ctx() const { return num_.ctx(); }

  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  friend bool operator==(const RationalFn& a, const RationalFn& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = LPoly::constant(den_.ctx(), den_.ctx()->one());
      return;
    }
    LPoly g = gcd_monic(num_, den_);
    if (!g.is_constant() || !g.coeff(0).is_one()) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
    FieldElem lc = den_.leading_coeff();
    if (!lc.is_one()) {
      FieldElem inv = inverse(lc);
      num_ = num_ * inv;
      den_ = den_ * inv;
    }
  }

  LPoly num_;
  LPoly den_;
};

/// Root chain certificate: chain[k] is the p^(k+1)-th root, so chain.back()
/// raised to p^(chain.size()) recovers the input.
template <typename T>
struct PerfMembership {
  bool member = false;
  std::vector<T> chain;
};

/// Is z in R^(p^n) for R = GF(q)[t]? Iterated exact p-th roots.
inline PerfMembership<LPoly> perf_membership(const LPoly& z, std::uint32_t n) {
  PerfMembership<LPoly> out;
  LPoly cur = z;
  for (std::uint32_t k = 0; k < n; ++k) {
    auto r = pth_root(cur);
    if (!r) return out;
    cur = std::move(*r);
    out.chain.push_back(cur);
  }
  out.member = true;
  return out;
}

/// Is z in R^(p^n) for R = GF(q)(t)? In normal form both the numerator and
/// the denominator must admit the root: every valuation of a p^n-th power is
/// divisible by p^n, and roots of coprime parts stay coprime with a monic
/// denominator.
inline PerfMembership<RationalFn> perf_membership(const RationalFn& z, std::uint32_t n) {
  PerfMembership<RationalFn> out;
  RationalFn cur = z;
  for (std::uint32_t k = 0; k < n; ++k) {
    auto rn = pth_root(cur.num());
    auto rd = pth_root(cur.den());
    if (!rn || !rd) return out;
    cur = RationalFn(std::move(*rn), std::move(*rd));
    out.chain.push_back(cur);
  }
  out.member = true;
  return out;
}

struct NotPerfect {
  std::uint32_t first_failure = 0;  // smallest n with no p^n-th root
};

/// A constant rational function lies in the perfect subfield GF(q); anything
/// else has a finite pole or zero order, which cannot be divisible by every
/// power of p. Returns the constant or the first failing root depth.
inline std::variant<FieldElem, NotPerfect> perfection_of(const RationalFn& z,
                                                         std::uint32_t n_max) {
  if (z.is_constant()) {
    FieldElem c = z.num().is_zero() ? z.ctx()->zero() : z.num().coeff(0) / z.den().coeff(0);
    return c;
  }
  for (std::uint32_t n = 1; n <= n_max; ++n)
    if (!perf_membership(z, n).member) return NotPerfect{n};
  throw Error("nonconstant function passed every root depth up to n_max");
}

}  // namespace frobrig

#endif
