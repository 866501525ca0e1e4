#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "frobrig/artin_schreier.hpp"
#include "testutil.hpp"

using namespace frobrig;
using testutil::random_lpoly;

namespace {

LPoly from_terms(const FieldCtxPtr& F, std::initializer_list<std::pair<std::int64_t, std::int64_t>> ts) {
  LPoly f(F);
  for (auto [e, c] : ts) f.add_term(e, F->from_int(c));
  return f;
}

// every polynomial over F with exponents in [0, maxexp], by coefficient odometer
std::vector<LPoly> all_polys(const FieldCtxPtr& F, int maxexp) {
  std::vector<FieldElem> elems;
  for (const FieldElem& a : F->all_elements()) elems.push_back(a);
  const std::uint64_t q = elems.size();
  std::uint64_t total = 1;
  for (int i = 0; i <= maxexp; ++i) total *= q;
  std::vector<LPoly> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    LPoly f(F);
    std::uint64_t v = idx;
    for (int i = 0; i <= maxexp; ++i, v /= q) f.add_term(i, elems[v % q]);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

TEST_CASE("wp operator") {
  auto F2 = FieldCtx::create(2, 1);
  auto F3 = FieldCtx::create(3, 1);
  CHECK(wp(LPoly::variable(F2)) == from_terms(F2, {{2, 1}, {1, 1}}));
  CHECK(wp(LPoly(F2)) == LPoly(F2));
  CHECK(wp(LPoly::variable(F3)) == from_terms(F3, {{3, 2}, {1, 1}}));
}

TEST_CASE("canonical reduction") {
  auto F2 = FieldCtx::create(2, 1);
  auto F4 = FieldCtx::create(2, 2);

  CHECK(as_reduce(from_terms(F2, {{2, 1}, {1, 1}})).trivial());

  ASClass c = as_reduce(from_terms(F2, {{2, 1}}));
  CHECK(c.reduced == LPoly::variable(F2));
  CHECK(c.constant_residue == 0);
  CHECK(!c.trivial());

  ASClass cw = as_reduce(LPoly::constant(F4, F4->gen()));
  CHECK(cw.reduced.is_zero());
  CHECK(cw.constant_residue == 1);

  SECTION("wp image reduces to the trivial class") {
    for (const LPoly& h : all_polys(F2, 5)) CHECK(as_reduce(wp(h)).trivial());
    std::mt19937_64 rng(11);
    for (auto F : {FieldCtx::create(3, 1), FieldCtx::create(2, 2)}) {
      for (int iter = 0; iter < 60; ++iter) {
        LPoly h = random_lpoly(rng, F, -3, 5);
        CHECK(as_reduce(wp(h)).trivial());
      }
    }
  }

  SECTION("classes are frobenius invariant: [z^p] = [z]") {
    std::mt19937_64 rng(12);
    for (auto F : {FieldCtx::create(2, 1), FieldCtx::create(3, 1), FieldCtx::create(2, 2)}) {
      for (int iter = 0; iter < 60; ++iter) {
        LPoly z = random_lpoly(rng, F, -4, 4);
        CHECK(as_reduce(frobenius_power(z, 1)) == as_reduce(z));
      }
    }
  }

  SECTION("reduction is F_p-linear") {
    std::mt19937_64 rng(13);
    for (auto F : {FieldCtx::create(2, 1), FieldCtx::create(2, 2), FieldCtx::create(3, 1)}) {
      for (int iter = 0; iter < 60; ++iter) {
        LPoly z1 = random_lpoly(rng, F, -4, 4);
        LPoly z2 = random_lpoly(rng, F, -4, 4);
        CHECK(as_reduce(z1 + z2) == as_reduce(z1) + as_reduce(z2));
      }
    }
  }

  SECTION("normal form exponents are nonzero and coprime to p") {
    std::mt19937_64 rng(14);
    for (auto F : {FieldCtx::create(2, 1), FieldCtx::create(3, 1)}) {
      for (int iter = 0; iter < 60; ++iter) {
        ASClass cls = as_reduce(random_lpoly(rng, F, -6, 6));
        for (const auto& [e, coeff] : cls.reduced.terms()) {
          CHECK(e != 0);
          CHECK(e % F->p() != 0);
        }
      }
    }
  }
}

TEST_CASE("pair classes") {
  auto F2 = FieldCtx::create(2, 1);
  auto F3 = FieldCtx::create(3, 1);
  LPoly t2 = LPoly::variable(F2);

  CHECK(pair_class(t2, pow(t2, 2), 1).trivial());

  ASClass c = pair_class(t2, t2 + LPoly::constant(F2, F2->one()), 1);
  CHECK(c.constant_residue == 1);
  CHECK(!c.trivial());

  LPoly t3 = LPoly::variable(F3);
  CHECK(pair_class(t3, t3, 7).trivial());
}

TEST_CASE("wp preimage oracle") {
  auto F2 = FieldCtx::create(2, 1);
  auto F4 = FieldCtx::create(2, 2);

  auto h = wp_preimage_oracle(from_terms(F2, {{2, 1}, {1, 1}}), OracleMethod::Enumerate, 1);
  REQUIRE(h.has_value());
  CHECK(*h == LPoly::variable(F2));

  CHECK(!wp_preimage_oracle(from_terms(F2, {{2, 1}}), OracleMethod::Enumerate, 2).has_value());

  auto hw = wp_preimage_oracle(LPoly::constant(F4, F4->one()), OracleMethod::Enumerate, 0);
  REQUIRE(hw.has_value());
  CHECK(*hw == LPoly::constant(F4, F4->gen()));  // wp(w) = w + w^2 = 1

  SECTION("budget enforcement") {
    CHECK_THROWS_AS(wp_preimage_oracle(from_terms(F2, {{2, 1}}), OracleMethod::Enumerate, 25),
                    BudgetExceeded);
  }

  SECTION("oracle equivalence: trivial class iff a preimage exists") {
    // all z over F2 with exponents in [0,4], all z over F3 with degree <= 3;
    // if wp(h) = z with deg z = D >= 1 then deg h = D/p, so bound D suffices
    for (const LPoly& z : all_polys(F2, 4)) {
      bool found = wp_preimage_oracle(z, OracleMethod::Enumerate, 4).has_value();
      CHECK(found == as_reduce(z).trivial());
    }
    auto F3 = FieldCtx::create(3, 1);
    for (const LPoly& z : all_polys(F3, 3)) {
      bool found = wp_preimage_oracle(z, OracleMethod::Enumerate, 3).has_value();
      CHECK(found == as_reduce(z).trivial());
    }
  }

  SECTION("linear solver agrees with enumeration") {
    for (const LPoly& z : all_polys(F2, 4)) {
      auto lin = wp_preimage_oracle(z, OracleMethod::Linear, 4);
      auto enu = wp_preimage_oracle(z, OracleMethod::Enumerate, 4);
      CHECK(lin.has_value() == enu.has_value());
      if (lin) CHECK(wp(*lin) == z);
    }
    // Laurent windows: solutions with poles
    std::mt19937_64 rng(15);
    for (int iter = 0; iter < 40; ++iter) {
      LPoly h = random_lpoly(rng, F4, -2, 3);
      LPoly z = wp(h);
      auto lin = wp_preimage_oracle(z, OracleMethod::Linear, 3);
      REQUIRE(lin.has_value());
      CHECK(wp(*lin) == z);
    }
  }
}

TEST_CASE("the cover family separates parameters") {
  auto F2 = FieldCtx::create(2, 1);
  CHECK(family_class(F2->one()).trivial());

  auto F4 = FieldCtx::create(2, 2);
  FieldElem w = F4->gen();
  ASClass cls = family_class(w);
  CHECK(cls.reduced == LPoly::monomial(F4, 1, w * w));  // (1+w) y = w^2 y
  CHECK(family_class(w) != family_class(w * w));

  CHECK_THROWS_AS(family_class(F4->zero()), ZeroParameter);

  SECTION("injective on nonzero parameters, q <= 16") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {11, 1}, {13, 1}, {2, 4}}) {
      auto F = FieldCtx::create(p, e);
      std::set<std::string> forms;
      std::uint64_t nonzero = 0;
      for (const FieldElem& t : F->all_elements()) {
        if (t.is_zero()) continue;
        ++nonzero;
        forms.insert(to_string(family_class(t), "y"));
      }
      CHECK(forms.size() == nonzero);
    }
  }
}
