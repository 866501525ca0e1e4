#ifndef FROBRIG_COUNTING_HPP
#define FROBRIG_COUNTING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "lpoly.hpp"

namespace frobrig {

/// The balanced window of twist exponents tried at depth d: integers m with
/// -d/2 < m <= d/2, one representative per residue class mod d.
inline std::vector<std::int64_t> twist_window(std::int64_t d) {
  std::vector<std::int64_t> out;
  for (std::int64_t m = -(d - 1) / 2; 2 * m <= d; ++m) out.push_back(m);
  return out;
}

inline bigint pow_bigint(const bigint& base, std::int64_t k) {
  bigint r = 1;
  for (std::int64_t i = 0; i < k; ++i) r *= base;
  return r;
}

namespace detail {

// Tower of degree d over the base, with the coefficient embedding.
struct Tower {
  FieldCtxPtr field;
  Embedding emb;

  Tower(const FieldCtxPtr& base, std::int64_t d, std::uint64_t budget)
      : field(make_field(base, d, budget)), emb(base, field, budget) {}

 private:
  static FieldCtxPtr make_field(const FieldCtxPtr& base, std::int64_t d, std::uint64_t budget) {
    bigint q = 1;
    for (std::int64_t i = 0; i < d; ++i) q *= base->q();
    if (q > budget)
      throw BudgetExceeded("tower GF(q^" + std::to_string(d) + ") over q = " + base->q().str());
    return FieldCtx::create(base->p(), base->e() * static_cast<std::uint32_t>(d));
  }
};

// y has degree exactly d over the base iff no proper-divisor frobenius fixes it.
inline bool exact_degree_over_base(const FieldElem& y, std::int64_t d, std::uint32_t base_e) {
  for (std::int64_t u = 1; u < d; ++u) {
    if (d % u != 0) continue;
    if (frobenius(y, static_cast<std::uint64_t>(u), base_e) == y) return false;
  }
  return true;
}

}  // namespace detail

/// Number of distinct y in the algebraic closure with f(y) in GF(q^d),
/// as the fiberwise sum of distinct-root counts of f - beta over beta in
/// GF(q^d).
inline std::int64_t subfield_preimage_count(const LPoly& f, std::int64_t d,
                                            std::uint64_t budget = kDefaultEnumBudget) {
  if (f.is_constant()) throw ConstantMap{};
  if (f.has_negative_exponents()) throw Error("preimage count requires a polynomial map");
  detail::Tower tower(f.ctx(), d, budget);
  LPoly f_emb(tower.field);
  for (const auto& [e, c] : f.terms()) f_emb.add_term(e, tower.emb.apply(c));
  std::int64_t total = 0;
  for (const FieldElem& beta : tower.field->all_elements(budget)) {
    LPoly fiber = f_emb - LPoly::constant(tower.field, beta);
    total += squarefree_root_count(fiber);
  }
  return total;
}

/// Same count by direct enumeration: walk every tower GF(q^e'), e' up to
/// d * deg f, keep y of exact degree e' with f(y)^(q^d) = f(y).
inline std::int64_t subfield_preimage_count_direct(const LPoly& f, std::int64_t d,
                                                   std::uint64_t budget = kDefaultEnumBudget) {
  if (f.is_constant()) throw ConstantMap{};
  const std::uint32_t base_e = f.ctx()->e();
  std::int64_t total = 0;
  for (std::int64_t deg = 1; deg <= d * f.degree(); ++deg) {
    detail::Tower tower(f.ctx(), deg, budget);
    for (const FieldElem& y : tower.field->all_elements(budget)) {
      if (!detail::exact_degree_over_base(y, deg, base_e)) continue;
      FieldElem fy = evaluate(f, y, tower.emb);
      if (frobenius(fy, static_cast<std::uint64_t>(d), base_e) == fy) ++total;
    }
  }
  return total;
}

/// Uniform bound on the preimage deficit: summing deg f - #roots(f - beta)
/// over all beta counts critical points with multiplicity, at most deg f'.
inline std::int64_t ramification_slack(const LPoly& f) {
  LPoly df = derivative(f);
  if (df.is_zero()) throw InseparableMap{};
  return df.is_constant() ? 0 : df.degree();
}

struct TwistedGraphCount {
  bigint degree;
  std::int64_t affine_roots = 0;
};

/// Degree and affine solution count of the twisted agreement locus
/// f(y) = g(y)^(q^m) (mirrored for m < 0). The degree is the closed formula
/// deg f + q^m deg g; the affine count can be strictly smaller (points at
/// infinity are not counted).
inline TwistedGraphCount twisted_graph_count(const LPoly& f, const LPoly& g, std::int64_t m) {
  if (!f.ctx()->same_as(*g.ctx())) throw CtxMismatch{};
  const std::uint32_t e = f.ctx()->e();
  const bigint& q = f.ctx()->q();

  LPoly lhs = f, rhs = g;
  if (m >= 0)
    rhs = frobenius_power(g, static_cast<std::uint64_t>(m) * e);  // g^(q^m)
  else
    lhs = frobenius_power(f, static_cast<std::uint64_t>(-m) * e);
  LPoly diff = lhs - rhs;
  if (diff.is_zero()) throw DegenerateGraph("maps agree after the twist m = " + std::to_string(m));

  TwistedGraphCount out;
  out.degree = m >= 0 ? bigint(f.degree()) + pow_bigint(q, m) * g.degree()
                      : pow_bigint(q, -m) * f.degree() + bigint(g.degree());
  out.affine_roots = squarefree_root_count(diff);
  if (bigint(out.affine_roots) > out.degree)
    throw InconsistencyDetected("affine roots exceed the graph degree");
  return out;
}

/// Smallest depth d at which deg_f q^d - B > d q^(d/2) (deg_f + deg_g);
/// beyond it, pointwise twisted agreement on the whole depth-d fiber is
/// impossible for maps that are not equal up to a twist. Comparison is exact:
/// both sides squared once the left is positive.
inline std::int64_t break_depth(std::int64_t deg_f, std::int64_t deg_g, const bigint& q,
                                std::int64_t slack) {
  if (deg_f <= 0 || deg_g <= 0) throw ConstantMap{};
  for (std::int64_t d = 1;; ++d) {
    bigint lhs = deg_f * pow_bigint(q, d) - slack;
    if (lhs <= 0) continue;
    bigint rhs_sq = bigint(d) * d * pow_bigint(q, d) * (deg_f + deg_g) * (deg_f + deg_g);
    if (lhs * lhs > rhs_sq) return d;
  }
}

struct DepthRow {
  std::int64_t d = 0;
  std::vector<std::int64_t> m_window;
  std::int64_t fiber_count = 0;                    // #S_d
  std::map<std::int64_t, bigint> graph_degrees;    // m -> deg of the twisted locus
  std::vector<std::int64_t> degenerate_twists;     // m identifying the two maps outright
  bigint degree_sum;                               // sum over the nondegenerate window
  bigint lower;                                    // deg_f q^d - B
  bigint upper_sq;                                 // (d q^(d/2) (deg f + deg g))^2
  bool containment = true;                         // every fiber point satisfies some twist
  std::optional<std::pair<std::uint64_t, std::int64_t>> witness;  // (elem value, tower degree)
};

struct CountingReport {
  std::int64_t deg_f = 0;
  std::int64_t deg_g = 0;
  std::int64_t slack = 0;
  std::vector<DepthRow> rows;
  std::optional<std::int64_t> break_at;  // within d_max
};

/// Tabulates the depth-by-depth inequality chain
///   deg_f q^d - B <= #S_d <= sum_m deg Z_m <= d q^(d/2)(deg f + deg g)
/// for a pair of distinct reduced maps, verifying pointwise containment of
/// the fiber in the union of twisted graphs.
inline CountingReport counting_report(const LPoly& f, const LPoly& g, std::int64_t d_max,
                                      std::uint64_t budget = kDefaultEnumBudget) {
  if (!f.ctx()->same_as(*g.ctx())) throw CtxMismatch{};
  if (f.is_constant() || g.is_constant()) throw ConstantMap{};
  if (derivative(f).is_zero()) throw InseparableMap{};  // fibers and slack are read off f
  if (f == g) throw DegenerateGraph("identical maps");

  const auto& F = f.ctx();
  const std::uint32_t e = F->e();
  const bigint& q = F->q();

  CountingReport rep;
  rep.deg_f = f.degree();
  rep.deg_g = g.degree();
  rep.slack = ramification_slack(f);

  for (std::int64_t dd = 1; dd <= d_max; ++dd) {
    DepthRow row;
    row.d = dd;
    row.m_window = twist_window(dd);
    row.lower = rep.deg_f * pow_bigint(q, dd) - rep.slack;
    row.upper_sq =
        bigint(dd) * dd * pow_bigint(q, dd) * (rep.deg_f + rep.deg_g) * (rep.deg_f + rep.deg_g);
    row.degree_sum = 0;
    for (std::int64_t m : row.m_window) {
      try {
        TwistedGraphCount zc = twisted_graph_count(f, g, m);
        row.graph_degrees[m] = zc.degree;
        row.degree_sum += zc.degree;
      } catch (const DegenerateGraph&) {
        // this twist identifies the maps: the locus is the whole line
        row.degenerate_twists.push_back(m);
      }
    }

    row.fiber_count = subfield_preimage_count(f, dd, budget);
    if (bigint(row.fiber_count) < row.lower)
      throw InconsistencyDetected("fiber count fell below the ramification bound");

    // containment scan: every y with f(y) in GF(q^d) must satisfy one twist
    for (std::int64_t deg = 1; deg <= dd * rep.deg_f && row.containment; ++deg) {
      detail::Tower tower(F, deg, budget);
      for (const FieldElem& y : tower.field->all_elements(budget)) {
        if (!detail::exact_degree_over_base(y, deg, e)) continue;
        FieldElem fy = evaluate(f, y, tower.emb);
        if (!(frobenius(fy, static_cast<std::uint64_t>(dd), e) == fy)) continue;
        FieldElem gy = evaluate(g, y, tower.emb);
        bool related = false;
        for (std::int64_t m : row.m_window) {
          FieldElem lhs = fy, rhs = gy;
          if (m >= 0)
            rhs = frobenius(gy, static_cast<std::uint64_t>(m), e);
          else
            lhs = frobenius(fy, static_cast<std::uint64_t>(-m), e);
          if (lhs == rhs) {
            related = true;
            break;
          }
        }
        if (!related) {
          row.containment = false;
          row.witness = {y.value(), deg};
          break;
        }
      }
    }

    if (row.containment && row.degenerate_twists.empty() &&
        bigint(row.fiber_count) > row.degree_sum)
      throw InconsistencyDetected("containment held but the degree sum was exceeded");

    bool breaks = row.lower > 0 && row.lower * row.lower > row.upper_sq;
    rep.rows.push_back(std::move(row));
    if (breaks && !rep.break_at) rep.break_at = dd;
  }
  return rep;
}

}  // namespace frobrig

#endif
