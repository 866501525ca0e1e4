#ifndef FROBRIG_ARTIN_SCHREIER_HPP
#define FROBRIG_ARTIN_SCHREIER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "lpoly.hpp"

namespace frobrig {

/// Canonical representative of a class in B/wp(B) for B = GF(q)[t, 1/t]:
/// a reduced part whose exponents are all nonzero and coprime to p, plus the
/// trace residue of the constant part.
struct ASClass {
  FieldCtxPtr ctx;
  LPoly reduced;
  std::uint32_t constant_residue = 0;

  bool trivial() const { return reduced.is_zero() && constant_residue == 0; }

  friend bool operator==(const ASClass& a, const ASClass& b) {
    return a.ctx->same_as(*b.ctx) && a.reduced == b.reduced &&
           a.constant_residue == b.constant_residue;
  }
  friend bool operator!=(const ASClass& a, const ASClass& b) { return !(a == b); }

  /// Componentwise sum; classes form an F_p vector space.
  friend ASClass operator+(const ASClass& a, const ASClass& b) {
    if (!a.ctx->same_as(*b.ctx)) throw CtxMismatch{};
    return ASClass{a.ctx, a.reduced + b.reduced,
                   (a.constant_residue + b.constant_residue) % a.ctx->p()};
  }
};

/// The Artin-Schreier operator wp(h) = h - h^p.
inline LPoly wp(const LPoly& h) {
  return h - frobenius_power(h, 1);
}

/// Canonical form of z in B/wp(B). Each term c t^(pm) with m != 0 is
/// congruent to c^(1/p) t^m because c t^(pm) - c^(1/p) t^m = wp(c^(1/p) t^m);
/// iterating leaves only exponents coprime to p. Constants collapse to their
/// trace: c - c^(1/p) = wp(c^(1/p)), so the class of a constant is detected
/// by trace_to_prime.
inline ASClass as_reduce(const LPoly& z) {
  const std::int64_t p = z.ctx()->p();
  LPoly reduced(z.ctx());
  FieldElem constant = z.ctx()->zero();
  for (const auto& term : z.terms()) {
    std::int64_t e = term.first;
    FieldElem c = term.second;
    while (e != 0 && e % p == 0) {
      e /= p;
      c = coeff_pth_root(c);
    }
    if (e == 0)
      constant += c;
    else
      reduced.add_term(e, c);
  }
  return ASClass{z.ctx(), std::move(reduced), trace_to_prime(constant)};
}

/// Obstruction to the two pullbacks of the degree-n monomial torsor agreeing:
/// the class of f^n - g^n.
inline ASClass pair_class(const LPoly& f, const LPoly& g, std::uint64_t n) {
  if (!f.ctx()->same_as(*g.ctx())) throw CtxMismatch{};
  return as_reduce(pow(f, n) - pow(g, n));
}

enum class OracleMethod { Linear, Enumerate };

namespace detail {

// Solve wp(h) = z as an F_p-linear system in the coefficients of h over the
// exponent window [lo, hi]. wp is F_p-linear because a -> a^p is.
inline std::optional<LPoly> wp_solve_linear(const LPoly& z, std::int64_t lo, std::int64_t hi) {
  const auto& F = z.ctx();
  const std::uint32_t p = F->p();
  const std::uint32_t e = F->e();
  if (lo > hi) return std::nullopt;

  const std::int64_t nexp = hi - lo + 1;
  const std::int64_t ncols = nexp * e;

  // Row space: coefficients of wp(h) over exponents [min(lo, p*lo), max(hi, p*hi)].
  const std::int64_t rlo = std::min(lo, p * lo);
  const std::int64_t rhi = std::max(hi, p * hi);
  const std::int64_t nrexp = rhi - rlo + 1;
  const std::int64_t nrows = nrexp * e;

  auto col_of = [&](std::int64_t exp, std::uint32_t coord) { return (exp - lo) * e + coord; };
  auto row_of = [&](std::int64_t exp, std::uint32_t coord) { return (exp - rlo) * e + coord; };

  // A[row][col] over Z/p, augmented with the target column.
  std::vector<std::vector<std::uint32_t>> A(nrows, std::vector<std::uint32_t>(ncols + 1, 0));

  for (std::int64_t exp = lo; exp <= hi; ++exp) {
    for (std::uint32_t k = 0; k < e; ++k) {
      std::vector<std::uint32_t> unit(e, 0);
      unit[k] = 1;
      FieldElem basis = F->from_coords(unit);
      // h-term basis * t^exp contributes basis at exp and -basis^p at p*exp
      for (std::uint32_t j = 0; j < e; ++j) {
        A[row_of(exp, j)][col_of(exp, k)] =
            detail::addm(A[row_of(exp, j)][col_of(exp, k)], basis.coords()[j], p);
      }
      FieldElem fr = pow(basis, p);
      for (std::uint32_t j = 0; j < e; ++j) {
        auto& cell = A[row_of(p * exp, j)][col_of(exp, k)];
        cell = detail::subm(cell, fr.coords()[j], p);
      }
    }
  }
  for (const auto& [exp, c] : z.terms()) {
    if (exp < rlo || exp > rhi) return std::nullopt;  // no h in this window can reach it
    for (std::uint32_t j = 0; j < e; ++j) A[row_of(exp, j)][ncols] = c.coords()[j];
  }

  // Gaussian elimination over Z/p.
  std::vector<std::int64_t> pivot_col(nrows, -1);
  std::int64_t rank = 0;
  for (std::int64_t col = 0; col < ncols && rank < nrows; ++col) {
    std::int64_t sel = -1;
    for (std::int64_t r = rank; r < nrows; ++r)
      if (A[r][col] != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(A[rank], A[sel]);
    std::uint32_t inv = detail::invm(A[rank][col], p);
    for (auto& v : A[rank]) v = detail::mulm(v, inv, p);
    for (std::int64_t r = 0; r < nrows; ++r) {
      if (r == rank || A[r][col] == 0) continue;
      std::uint32_t factor = A[r][col];
      for (std::int64_t cidx = col; cidx <= ncols; ++cidx)
        A[r][cidx] = detail::subm(A[r][cidx], detail::mulm(factor, A[rank][cidx], p), p);
    }
    pivot_col[rank] = col;
    ++rank;
  }
  for (std::int64_t r = rank; r < nrows; ++r)
    if (A[r][ncols] != 0) return std::nullopt;  // inconsistent

  std::vector<std::uint32_t> sol(ncols, 0);
  for (std::int64_t r = 0; r < rank; ++r) sol[pivot_col[r]] = A[r][ncols];

  LPoly h(F);
  for (std::int64_t exp = lo; exp <= hi; ++exp) {
    std::vector<std::uint32_t> coords(e);
    for (std::uint32_t k = 0; k < e; ++k) coords[k] = sol[col_of(exp, k)];
    h.add_term(exp, F->from_coords(std::move(coords)));
  }
  return h;
}

}  // namespace detail

/// Search for h with wp(h) = z within a degree bound. Enumerate walks every
/// polynomial of degree <= bound in coordinate order (first hit is
/// deterministic); Linear solves the coefficientwise F_p system and also
/// accepts Laurent windows.
inline std::optional<LPoly> wp_preimage_oracle(const LPoly& z, OracleMethod method,
                                               std::int64_t degree_bound,
                                               std::uint64_t budget = kDefaultEnumBudget) {
  const auto& F = z.ctx();
  if (method == OracleMethod::Linear) {
    std::int64_t lo = 0, hi = degree_bound;
    if (!z.is_zero()) lo = std::min<std::int64_t>(z.low_exponent(), 0);
    return detail::wp_solve_linear(z, lo, hi);
  }

  // Enumerate h = sum of degree_bound+1 coefficients; q^(bound+1) candidates.
  if (degree_bound < 0) return std::nullopt;
  bigint cand_count = 1;
  for (std::int64_t i = 0; i <= degree_bound; ++i) cand_count *= F->q();
  if (cand_count > budget)
    throw BudgetExceeded("wp preimage enumeration needs q^" + std::to_string(degree_bound + 1) +
                         " candidates");
  const std::uint64_t total = static_cast<std::uint64_t>(cand_count);
  const std::uint64_t q = F->q_as_u64();
  std::vector<FieldElem> elems;
  for (const FieldElem& a : F->all_elements(budget)) elems.push_back(a);

  for (std::uint64_t idx = 0; idx < total; ++idx) {
    LPoly h(F);
    std::uint64_t v = idx;
    for (std::int64_t i = 0; i <= degree_bound; ++i, v /= q) h.add_term(i, elems[v % q]);
    if (wp(h) == z) return h;
  }
  return std::nullopt;
}

/// Class of the cover y^p - c y as a polynomial in y, canonical form (1-c) y.
inline ASClass family_class(const FieldElem& tparam) {
  if (tparam.is_zero()) throw ZeroParameter{};
  const auto& F = tparam.ctx();
  LPoly z(F);
  z.add_term(F->p(), F->one());
  z.add_term(1, -tparam);
  return as_reduce(z);
}

inline std::string to_string(const ASClass& cls, const std::string& var = "t") {
  std::string s = to_string(cls.reduced, var);
  if (cls.constant_residue != 0) {
    if (s == "0") s = std::to_string(cls.constant_residue) + " (residue)";
    else s += " + " + std::to_string(cls.constant_residue) + " (residue)";
  }
  return s;
}

}  // namespace frobrig

#endif
