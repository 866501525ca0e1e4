#ifndef FROBRIG_LAURENT_HPP
#define FROBRIG_LAURENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "lpoly.hpp"

namespace frobrig {

inline constexpr std::int64_t kDefaultSeriesPrec = 64;

/// Truncated formal Laurent series. Coefficients are known for every exponent
/// below prec(): finitely many are nonzero and stored in a dense window
/// starting at val(). An exact series (prec absent) is a Laurent polynomial
/// with all unstored coefficients exactly zero.
class LaurentSeries {
 public:
  static LaurentSeries exact_poly(const LPoly& f) {
    LaurentSeries s(f.ctx());
    if (!f.is_zero()) {
      s.val_ = f.low_exponent();
      s.coeffs_.assign(static_cast<std::size_t>(f.degree() - s.val_ + 1), f.ctx()->zero());
      for (const auto& [e, c] : f.terms()) s.coeffs_[static_cast<std::size_t>(e - s.val_)] = c;
    }
    return s;
  }

  static LaurentSeries zero(const FieldCtxPtr& ctx) { return LaurentSeries(ctx); }

  static LaurentSeries truncated(const FieldCtxPtr& ctx, std::int64_t val,
                                 std::vector<FieldElem> coeffs, std::int64_t prec) {
    LaurentSeries s(ctx);
    s.val_ = val;
    s.coeffs_ = std::move(coeffs);
    if (val + static_cast<std::int64_t>(s.coeffs_.size()) > prec)
      s.coeffs_.resize(static_cast<std::size_t>(std::max<std::int64_t>(prec - val, 0)),
                       ctx->zero());
    s.prec_ = prec;
    s.normalize();
    return s;
  }

  const FieldCtxPtr& ctx() const { return ctx_; }
  bool exact() const { return !prec_.has_value(); }
  std::optional<std::int64_t> prec() const { return prec_; }
  bool is_zero_to_prec() const { return coeffs_.empty(); }

  /// Exponent of the lowest nonzero coefficient; absent when zero to
  /// precision (exactly zero if exact()).
  std::optional<std::int64_t> valuation() const {
    if (coeffs_.empty()) return std::nullopt;
    return val_;
  }

  FieldElem coeff(std::int64_t e) const {
    if (e < val_ || e >= val_ + static_cast<std::int64_t>(coeffs_.size())) return ctx_->zero();
    return coeffs_[static_cast<std::size_t>(e - val_)];
  }

  /// Known part as a Laurent polynomial.
  LPoly window_poly() const {
    LPoly f(ctx_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      f.add_term(val_ + static_cast<std::int64_t>(i), coeffs_[i]);
    return f;
  }

  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.ctx_->same_as(*b.ctx_) && a.prec_ == b.prec_ && a.val_ == b.val_ &&
           a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const LaurentSeries& a, const LaurentSeries& b) { return !(a == b); }

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    a.check(b);
    std::optional<std::int64_t> prec = min_prec(a.prec_, b.prec_);
    std::int64_t lo = std::min(a.effective_val(), b.effective_val());
    std::int64_t hi = std::max(a.end_exp(), b.end_exp());  // exclusive
    if (prec) hi = std::min(hi, *prec);
    LaurentSeries r(a.ctx_);
    r.prec_ = prec;
    if (lo < hi) {
      r.val_ = lo;
      r.coeffs_.assign(static_cast<std::size_t>(hi - lo), a.ctx_->zero());
      for (std::int64_t e = lo; e < hi; ++e)
        r.coeffs_[static_cast<std::size_t>(e - lo)] = a.coeff(e) + b.coeff(e);
    }
    r.normalize();
    return r;
  }
  friend LaurentSeries operator-(const LaurentSeries& a) {
    LaurentSeries r = a;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
    return a + (-b);
  }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    a.check(b);
    // product known on [va+vb, min(va+pb, vb+pa))
    std::optional<std::int64_t> prec;
    if (a.prec_ || b.prec_) {
      std::int64_t bound = std::numeric_limits<std::int64_t>::max();
      if (b.prec_) bound = std::min(bound, a.effective_val() + *b.prec_);
      if (a.prec_) bound = std::min(bound, b.effective_val() + *a.prec_);
      prec = bound;
    }
    LaurentSeries r(a.ctx_);
    r.prec_ = prec;
    if (!a.coeffs_.empty() && !b.coeffs_.empty()) {
      std::int64_t lo = a.val_ + b.val_;
      std::int64_t hi = a.end_exp() + b.end_exp() - 1;  // exclusive
      if (prec) hi = std::min(hi, *prec);
      if (lo < hi) {
        r.val_ = lo;
        r.coeffs_.assign(static_cast<std::size_t>(hi - lo), a.ctx_->zero());
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
          if (a.coeffs_[i].is_zero()) continue;
          for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            std::int64_t e = a.val_ + static_cast<std::int64_t>(i) + b.val_ +
                             static_cast<std::int64_t>(j);
            if (e >= hi) break;
            r.coeffs_[static_cast<std::size_t>(e - lo)] += a.coeffs_[i] * b.coeffs_[j];
          }
        }
      }
    }
    r.normalize();
    return r;
  }

  LaurentSeries truncate(std::int64_t new_prec) const {
    LaurentSeries r = *this;
    if (!r.prec_ || *r.prec_ > new_prec) r.prec_ = new_prec;
    std::int64_t keep = std::max<std::int64_t>(*r.prec_ - r.val_, 0);
    if (static_cast<std::int64_t>(r.coeffs_.size()) > keep)
      r.coeffs_.resize(static_cast<std::size_t>(keep), ctx_->zero());
    r.normalize();
    return r;
  }

 private:
  explicit LaurentSeries(FieldCtxPtr ctx) : ctx_(std::move(ctx)) {}

  void check(const LaurentSeries& o) const {
    if (!ctx_->same_as(*o.ctx_)) throw CtxMismatch{};
  }
  static std::optional<std::int64_t> min_prec(const std::optional<std::int64_t>& a,
                                              const std::optional<std::int64_t>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
  }
  std::int64_t effective_val() const { return coeffs_.empty() ? (prec_ ? *prec_ : 0) : val_; }
  std::int64_t end_exp() const { return val_ + static_cast<std::int64_t>(coeffs_.size()); }

  void normalize() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
      val_ += static_cast<std::int64_t>(lead);
    }
    if (!prec_) {
      while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }
    if (coeffs_.empty()) val_ = 0;
  }

  FieldCtxPtr ctx_;
  std::int64_t val_ = 0;
  std::vector<FieldElem> coeffs_;
  std::optional<std::int64_t> prec_;  // absent: exact Laurent polynomial

  friend LaurentSeries divide(const LaurentSeries&, const LaurentSeries&, std::int64_t);
  friend std::optional<LaurentSeries> series_pth_root(const LaurentSeries&);
  friend LaurentSeries series_derivative(const LaurentSeries&);
};

/// a / b. Division of exact inputs stays exact when it happens to terminate;
/// otherwise the quotient is expanded to rel_prec coefficients past its
/// valuation.
inline LaurentSeries divide(const LaurentSeries& a, const LaurentSeries& b,
                            std::int64_t rel_prec = kDefaultSeriesPrec) {
  if (!a.ctx_->same_as(*b.ctx_)) throw CtxMismatch{};
  if (b.is_zero_to_prec()) throw DivideByZeroSeries{};

  if (a.exact() && b.exact()) {
    if (a.is_zero_to_prec()) return LaurentSeries::zero(a.ctx());
    // exact quotient iff the shifted polynomial division has zero remainder
    LPoly ap(a.ctx()), bp(a.ctx());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      ap.add_term(static_cast<std::int64_t>(i), a.coeffs_[i]);
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
      bp.add_term(static_cast<std::int64_t>(i), b.coeffs_[i]);
    auto [q, r] = divmod(ap, bp);
    if (r.is_zero()) {
      LPoly shifted(a.ctx());
      for (const auto& [e, c] : q.terms()) shifted.add_term(e + a.val_ - b.val_, c);
      return LaurentSeries::exact_poly(shifted);
    }
  }

  // c_k recurrence against the unit part of b; valid while both windows last
  const std::int64_t vq = a.effective_val() - b.val_;
  std::int64_t limit = vq + rel_prec;
  if (a.prec_) limit = std::min(limit, *a.prec_ - b.val_);
  if (b.prec_) limit = std::min(limit, *b.prec_ - 2 * b.val_ + a.effective_val());
  if (limit <= vq) throw PrecisionExhausted("series division window is empty");

  FieldElem lead_inv = inverse(b.coeffs_.front());
  std::vector<FieldElem> c;
  c.reserve(static_cast<std::size_t>(limit - vq));
  for (std::int64_t k = vq; k < limit; ++k) {
    FieldElem acc = a.coeff(k + b.val_);
    for (std::int64_t j = vq; j < k; ++j)
      acc -= c[static_cast<std::size_t>(j - vq)] * b.coeff(k + b.val_ - j);
    c.push_back(acc * lead_inv);
  }
  return LaurentSeries::truncated(a.ctx(), vq, std::move(c), limit);
}

inline LaurentSeries pow_series(const LaurentSeries& base, std::uint64_t n) {
  LaurentSeries r = LaurentSeries::exact_poly(LPoly::constant(base.ctx(), base.ctx()->one()));
  LaurentSeries b = base;
  while (n) {
    if (n & 1) r = r * b;
    if ((n >>= 1)) b = b * b;
  }
  return r;
}

/// A differential z dt, stored through z. With v(dt) = 1, the valuation is
/// v(z) + 1.
struct Differential {
  LaurentSeries coefficient;

  std::optional<std::int64_t> valuation() const {
    auto v = coefficient.valuation();
    if (!v) return std::nullopt;
    return *v + 1;
  }
};

inline LaurentSeries series_derivative(const LaurentSeries& z) {
  LaurentSeries r(z.ctx());
  if (!z.coeffs_.empty()) {
    r.val_ = z.val_ - 1;
    r.coeffs_.assign(z.coeffs_.size(), z.ctx()->zero());
    for (std::size_t i = 0; i < z.coeffs_.size(); ++i) {
      std::int64_t e = z.val_ + static_cast<std::int64_t>(i);
      r.coeffs_[i] = z.coeffs_[i] * z.ctx()->from_int(e);
    }
  }
  if (z.prec_) r.prec_ = *z.prec_ - 1;
  r.normalize();
  return r;
}

/// d(z) = z' dt.
inline Differential d(const LaurentSeries& z) { return Differential{series_derivative(z)}; }

/// p-th root when every known exponent is divisible by p; root precision is
/// floor(prec / p).
inline std::optional<LaurentSeries> series_pth_root(const LaurentSeries& z) {
  const std::int64_t p = z.ctx()->p();
  for (std::size_t i = 0; i < z.coeffs_.size(); ++i) {
    std::int64_t e = z.val_ + static_cast<std::int64_t>(i);
    if (!z.coeffs_[i].is_zero() && e % p != 0) return std::nullopt;
  }
  LaurentSeries r(z.ctx());
  if (!z.coeffs_.empty()) {
    r.val_ = z.val_ / p;  // val divisible by p (leading coefficient nonzero)
    std::int64_t root_terms = (z.end_exp() - 1) / p - r.val_ + 1;
    r.coeffs_.assign(static_cast<std::size_t>(std::max<std::int64_t>(root_terms, 0)),
                     z.ctx()->zero());
    for (std::size_t i = 0; i < z.coeffs_.size(); ++i) {
      std::int64_t e = z.val_ + static_cast<std::int64_t>(i);
      if (z.coeffs_[i].is_zero()) continue;
      r.coeffs_[static_cast<std::size_t>(e / p - r.val_)] = coeff_pth_root(z.coeffs_[i]);
    }
  }
  if (z.prec_) {
    std::int64_t pr = *z.prec_ >= 0 ? *z.prec_ / p : -((-*z.prec_ + p - 1) / p);
    r.prec_ = pr;
    if (r.val_ + static_cast<std::int64_t>(r.coeffs_.size()) > pr)
      r.coeffs_.resize(static_cast<std::size_t>(std::max<std::int64_t>(pr - r.val_, 0)),
                       z.ctx()->zero());
  }
  r.normalize();
  return r;
}

enum class LocalVerdict { Solvable, Unsolvable, Inconclusive };

/// Solvability of h - h^p = z inside K((t)) with K = GF(q).
struct LocalSolvability {
  LocalVerdict verdict = LocalVerdict::Inconclusive;
  LPoly reduced_principal;  // leftover principal part, exponents coprime to p
  std::uint32_t residue = 0;
  bool exact = false;  // verdict certain (input exact, or window covered what matters)
};

/// Rewrites principal terms c t^(-pm) -> c^(1/p) t^(-m) until all negative
/// exponents are coprime to p. Solvable iff nothing is left below zero and
/// the constant's trace vanishes; any nonnegative tail can be absorbed by a
/// recursively built h. Needs the window to reach exponent 0.
inline LocalSolvability as_solvable_local(const LaurentSeries& z) {
  LocalSolvability out{LocalVerdict::Inconclusive, LPoly(z.ctx()), 0, z.exact()};
  if (!z.exact() && *z.prec() < 1) return out;  // cannot see the whole obstruction

  const std::int64_t p = z.ctx()->p();
  LPoly principal(z.ctx());
  FieldElem constant = z.coeff(0);
  auto v = z.valuation();
  if (v && *v < 0) {
    for (std::int64_t e = *v; e < 0; ++e) {
      FieldElem c = z.coeff(e);
      if (c.is_zero()) continue;
      std::int64_t m = e;
      while (m % p == 0) {
        m /= p;
        c = coeff_pth_root(c);
      }
      principal.add_term(m, c);
    }
  }
  out.reduced_principal = std::move(principal);
  out.residue = trace_to_prime(constant);
  out.verdict = (out.reduced_principal.is_zero() && out.residue == 0) ? LocalVerdict::Solvable
                                                                      : LocalVerdict::Unsolvable;
  out.exact = true;  // principal part and constant are always exact below prec
  if (!z.exact()) out.exact = *z.prec() >= 1;
  return out;
}

enum class EpsilonCase {
  ValuationPositive,  // v(g/f) > 0: obstruction valuation stays bounded
  RootOfUnity,        // g/f is a constant of finite order
  GenericUnit,        // v(g/f) = 0 and not a root of unity
};

struct ProbeRow {
  std::uint64_t n = 0;
  bool decided = false;                       // false: precision ruled the row out
  std::optional<std::int64_t> v_diff;         // v(f^n - g^n)
  std::optional<std::int64_t> v_unit;         // v(1 - eps^n)
  std::optional<std::int64_t> v_obstruction;  // v(x_n), x_n = df - eps^(n-1) dg
  bool identity_ok = false;       // v(f^n-g^n) = n v(f) + v(1-eps^n)
  bool diff_negative = false;     // v(f^n - g^n) < 0
  LocalVerdict solvable = LocalVerdict::Inconclusive;
  bool p_divides_vdiff = false;   // decidable when solvable and negative
  bool derivative_bound_ok = false;  // p v(d(f^n-g^n)) >= v(f^n-g^n)
  bool below_growth_bound = false;   // v(x_n) < c n + v(f) + v(1-eps^n)/p: forces unsolvable
};

struct ProbeReport {
  bool swapped = false;  // inputs reordered so that v(f) <= v(g)
  EpsilonCase eps_case = EpsilonCase::GenericUnit;
  std::uint64_t eps_order = 0;  // multiplicative order for RootOfUnity
  std::int64_t v_f = 0;
  std::int64_t c_num = 0;  // c = c_num / c_den = (1 - 1/p) (-v(f))
  std::int64_t c_den = 1;
  std::vector<ProbeRow> rows;
};

/// Valuation statistics of the obstructions x_n = df - eps^(n-1) dg for
/// n <= n_max coprime to p with eps^n != 1, against the growth bound
/// v(x_n) >= c n + O(1) that holds whenever every f^n - g^n is solvable.
inline ProbeReport local_probe(LaurentSeries f, LaurentSeries g, std::uint64_t n_max,
                               std::int64_t rel_prec = kDefaultSeriesPrec) {
  if (!f.ctx()->same_as(*g.ctx())) throw CtxMismatch{};
  const std::int64_t p = f.ctx()->p();

  ProbeReport report;
  auto vf = f.valuation();
  auto vg = g.valuation();
  if (!vf || !vg) throw Error("probe inputs must be nonzero");
  if (*vg < *vf) {
    std::swap(f, g);
    std::swap(vf, vg);
    report.swapped = true;
  }
  if (*vf >= 0) throw Error("probe requires a pole: v(f) < 0");
  bool g_constant = g.window_poly().is_constant() && g.exact();
  if (g_constant) throw ConstantInput{};

  report.v_f = *vf;
  report.c_num = (p - 1) * (-*vf);
  report.c_den = p;

  LaurentSeries eps = divide(g, f, rel_prec);
  auto veps = eps.valuation();
  if (!veps) throw PrecisionExhausted("g/f vanished to working precision");

  // A unit of finite order is a residue-field constant: eps^k = 1 for some k
  // iff eps is a nonzero constant.
  LaurentSeries eps_const = LaurentSeries::exact_poly(
      LPoly::constant(f.ctx(), eps.coeff(0)));
  if (*veps > 0) {
    report.eps_case = EpsilonCase::ValuationPositive;
  } else if ((eps - eps_const).is_zero_to_prec()) {
    report.eps_case = EpsilonCase::RootOfUnity;
    FieldElem c = eps.coeff(0);
    FieldElem acc = c;
    report.eps_order = 1;
    while (!acc.is_one()) {
      acc *= c;
      ++report.eps_order;
    }
  } else {
    report.eps_case = EpsilonCase::GenericUnit;
  }

  Differential df = d(f);
  Differential dg = d(g);

  LaurentSeries one = LaurentSeries::exact_poly(LPoly::constant(f.ctx(), f.ctx()->one()));
  LaurentSeries fn = one, gn = one, eps_nm1 = one;  // f^n, g^n, eps^(n-1) running
  std::uint64_t pow_cursor = 0;

  for (std::uint64_t n = 1; n <= n_max; ++n) {
    while (pow_cursor < n) {
      fn = fn * f;
      gn = gn * g;
      if (pow_cursor >= 1) eps_nm1 = eps_nm1 * eps;
      ++pow_cursor;
    }
    if (n % static_cast<std::uint64_t>(p) == 0) continue;
    if (report.eps_case == EpsilonCase::RootOfUnity && n % report.eps_order == 0) continue;

    ProbeRow row;
    row.n = n;

    LaurentSeries diff = fn - gn;
    LaurentSeries unit = one - pow_series(eps, n);
    if (diff.is_zero_to_prec() || unit.is_zero_to_prec()) {
      // eps^n = 1 to precision: cannot separate the maps at this n
      report.rows.push_back(row);
      continue;
    }
    row.decided = true;
    row.v_diff = diff.valuation();
    row.v_unit = unit.valuation();
    row.identity_ok = *row.v_diff == static_cast<std::int64_t>(n) * *vf + *row.v_unit;
    row.diff_negative = *row.v_diff < 0;

    LaurentSeries xn = df.coefficient - eps_nm1 * dg.coefficient;
    auto vx = xn.valuation();
    row.v_obstruction = vx ? std::optional<std::int64_t>(*vx + 1) : std::nullopt;

    LocalSolvability sol = as_solvable_local(diff);
    row.solvable = sol.exact ? sol.verdict : LocalVerdict::Inconclusive;
    if (row.solvable == LocalVerdict::Solvable && row.diff_negative) {
      row.p_divides_vdiff = (*row.v_diff % p) == 0;
    }
    if (row.v_obstruction && row.diff_negative) {
      // v(d(f^n-g^n)) = (n-1) v(f) + v(x_n)
      std::int64_t v_ddiff = (static_cast<std::int64_t>(n) - 1) * *vf + *row.v_obstruction;
      row.derivative_bound_ok = p * v_ddiff >= *row.v_diff;
      // solvability forces p v(x_n) >= (p-1)(-v_f) n + p v_f + v(1-eps^n)
      std::int64_t threshold =
          report.c_num * static_cast<std::int64_t>(n) + p * *vf + *row.v_unit;
      row.below_growth_bound = p * *row.v_obstruction < threshold;
    }
    report.rows.push_back(row);
  }
  return report;
}

inline std::string to_string(const LaurentSeries& s) {
  std::string out = to_string(s.window_poly());
  if (!s.exact()) out += (out == "0" ? "" : " + ") + std::string("O(t^") +
                         std::to_string(*s.prec()) + ")";
  return out;
}

}  // namespace frobrig

#endif
