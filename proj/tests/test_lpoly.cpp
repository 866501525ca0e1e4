#include <catch2/catch_amalgamated.hpp>

#include "frobrig/lpoly.hpp"
#include "testutil.hpp"

using namespace frobrig;
using testutil::random_lpoly;

namespace {

LPoly from_terms(const FieldCtxPtr& F, std::initializer_list<std::pair<std::int64_t, std::int64_t>> ts) {
  LPoly f(F);
  for (auto [e, c] : ts) f.add_term(e, F->from_int(c));
  return f;
}

}  // namespace

TEST_CASE("ring arithmetic") {
  auto F2 = FieldCtx::create(2, 1);
  auto F3 = FieldCtx::create(3, 1);

  LPoly t2 = LPoly::variable(F2);
  LPoly t3 = LPoly::variable(F3);

  CHECK(pow(t2 + LPoly::constant(F2, F2->one()), 2) == from_terms(F2, {{2, 1}, {0, 1}}));
  CHECK((t3 + LPoly::constant(F3, F3->one())) * (t3 + LPoly::constant(F3, F3->from_int(2))) ==
        from_terms(F3, {{2, 1}, {0, 2}}));

  LPoly u = from_terms(F2, {{3, 1}, {1, 1}});
  CHECK(u + LPoly(F2) == u);
  CHECK(from_terms(F2, {{2, 1}}) + from_terms(F2, {{2, 1}}) == LPoly(F2));  // cancellation
}

TEST_CASE("composition") {
  auto F2 = FieldCtx::create(2, 1);
  LPoly t = LPoly::variable(F2);
  LPoly one = LPoly::constant(F2, F2->one());

  CHECK(compose(pow(t, 2), t + one) == from_terms(F2, {{2, 1}, {0, 1}}));
  CHECK(compose(t, from_terms(F2, {{5, 1}, {-2, 1}})) == from_terms(F2, {{5, 1}, {-2, 1}}));
  CHECK(compose(pow(t, 3), from_terms(F2, {{-1, 1}})) == from_terms(F2, {{-3, 1}}));
  CHECK_THROWS_AS(compose(from_terms(F2, {{-1, 1}}), t), NegativeExponentInOuter);

  SECTION("substitution is a ring homomorphism") {
    std::mt19937_64 rng(1234);
    for (auto F : {FieldCtx::create(2, 1), FieldCtx::create(3, 1)}) {
      for (int iter = 0; iter < 40; ++iter) {
        LPoly u = random_lpoly(rng, F, 0, 6);
        LPoly v = random_lpoly(rng, F, 0, 6);
        LPoly f = random_lpoly(rng, F, 0, 6);
        CHECK(compose(u + v, f) == compose(u, f) + compose(v, f));
        CHECK(compose(u * v, f) == compose(u, f) * compose(v, f));
      }
    }
  }
}

TEST_CASE("derivative") {
  auto F2 = FieldCtx::create(2, 1);
  auto F3 = FieldCtx::create(3, 1);

  CHECK(derivative(from_terms(F3, {{3, 1}, {2, 1}})) == from_terms(F3, {{1, 2}}));
  CHECK(derivative(from_terms(F2, {{4, 1}})) == LPoly(F2));
  CHECK(derivative(from_terms(F2, {{-1, 1}})) == from_terms(F2, {{-2, 1}}));

  SECTION("Leibniz rule") {
    std::mt19937_64 rng(99);
    auto F4 = FieldCtx::create(2, 2);
    for (auto F : {FieldCtx::create(3, 1), F4}) {
      for (int iter = 0; iter < 40; ++iter) {
        LPoly u = random_lpoly(rng, F, -3, 4);
        LPoly v = random_lpoly(rng, F, -3, 4);
        CHECK(derivative(u * v) == derivative(u) * v + u * derivative(v));
      }
    }
  }
}

TEST_CASE("evaluation") {
  auto F2 = FieldCtx::create(2, 1);
  auto F4 = FieldCtx::create(2, 2);
  FieldElem w = F4->gen();

  LPoly f = from_terms(F2, {{2, 1}, {1, 1}});  // t^2 + t
  Embedding emb(F2, F4);
  CHECK(evaluate(f, w, emb) == F4->one());  // w^2 + w = 1

  CHECK(evaluate(LPoly::variable(F4), w) == w);
  CHECK_THROWS_AS(evaluate(from_terms(F2, {{-1, 1}}), F2->zero()), ZeroAtPole);
}

TEST_CASE("p-th roots") {
  auto F2 = FieldCtx::create(2, 1);
  auto F4 = FieldCtx::create(2, 2);
  FieldElem w = F4->gen();

  CHECK(*pth_root(from_terms(F2, {{2, 1}, {0, 1}})) == from_terms(F2, {{1, 1}, {0, 1}}));
  CHECK(!pth_root(LPoly::variable(F2)).has_value());
  CHECK(*pth_root(LPoly::monomial(F4, 2, w)) == LPoly::monomial(F4, 1, w * w));  // (w^2)^2 = w

  SECTION("p-th power iff derivative vanishes (exhaustive over F2, deg <= 6)") {
    for (std::uint32_t mask = 0; mask < 128; ++mask) {
      LPoly f(F2);
      for (int i = 0; i < 7; ++i)
        if (mask & (1u << i)) f.add_term(i, F2->one());
      if (f.is_constant()) continue;
      CHECK(pth_root(f).has_value() == derivative(f).is_zero());
    }
  }
}

TEST_CASE("frobenius stripping") {
  auto F2 = FieldCtx::create(2, 1);

  auto form = frobenius_reduce(from_terms(F2, {{4, 1}, {2, 1}}));
  CHECK(form.core == from_terms(F2, {{2, 1}, {1, 1}}));
  CHECK(form.exponent == 1);

  form = frobenius_reduce(LPoly::variable(F2));
  CHECK(form.exponent == 0);

  form = frobenius_reduce(from_terms(F2, {{8, 1}}));
  CHECK(form.core == LPoly::variable(F2));
  CHECK(form.exponent == 3);

  CHECK_THROWS_AS(frobenius_reduce(LPoly::constant(F2, F2->one())), ConstantInput);

  SECTION("round trip") {
    std::mt19937_64 rng(7);
    for (auto F : {FieldCtx::create(2, 1), FieldCtx::create(3, 1), FieldCtx::create(2, 2)}) {
      for (int iter = 0; iter < 30; ++iter) {
        LPoly core = testutil::random_nonconstant(rng, F, 4);
        std::uint32_t k = static_cast<std::uint32_t>(rng() % 3);
        LPoly f = frobenius_power(core, k);
        auto ff = frobenius_reduce(f);
        CHECK(frobenius_power(ff.core, ff.exponent) == f);
        CHECK(frobenius_reduce(ff.core).exponent == 0);
        CHECK(!derivative(ff.core).is_zero());
      }
    }
  }
}

TEST_CASE("frobenius_power matches plain powering") {
  std::mt19937_64 rng(5);
  auto F4 = FieldCtx::create(2, 2);
  for (int iter = 0; iter < 20; ++iter) {
    LPoly f = random_lpoly(rng, F4, -2, 3);
    CHECK(frobenius_power(f, 2) == pow(f, 4));
  }
}

TEST_CASE("distinct root counting") {
  auto F2 = FieldCtx::create(2, 1);
  auto F3 = FieldCtx::create(3, 1);

  CHECK(squarefree_root_count(from_terms(F2, {{2, 1}, {1, 1}})) == 2);
  CHECK(squarefree_root_count(from_terms(F2, {{2, 1}})) == 1);
  CHECK(squarefree_root_count(from_terms(F3, {{3, 1}, {1, -1}})) == 3);
  // t^3 + t^2 = t^2 (t+1): the double root hides inside gcd(f, f')
  CHECK(squarefree_root_count(from_terms(F2, {{3, 1}, {2, 1}})) == 2);
  CHECK_THROWS_AS(squarefree_root_count(LPoly(F2)), ZeroPolynomial);

  SECTION("agrees with direct root enumeration in a splitting tower") {
    // deg <= 4 polynomials over F2 split over GF(2^12)
    auto T2 = FieldCtx::create(2, 12);
    Embedding emb2(F2, T2);
    for (std::uint32_t mask = 1; mask < 32; ++mask) {
      LPoly f(F2);
      for (int i = 0; i < 5; ++i)
        if (mask & (1u << i)) f.add_term(i, F2->one());
      if (f.is_constant() || f.is_zero()) continue;
      std::int64_t direct = 0;
      for (const FieldElem& y : T2->all_elements())
        if (evaluate(f, y, emb2).is_zero()) ++direct;
      CHECK(squarefree_root_count(f) == direct);
    }
    // deg <= 3 polynomials over F3 split over GF(3^6)
    auto T3 = FieldCtx::create(3, 6);
    Embedding emb3(F3, T3);
    for (std::uint32_t code = 1; code < 81; ++code) {
      LPoly f(F3);
      std::uint32_t v = code;
      for (int i = 0; i < 4; ++i, v /= 3) f.add_term(i, F3->from_int(v % 3));
      if (f.is_constant() || f.is_zero()) continue;
      std::int64_t direct = 0;
      for (const FieldElem& y : T3->all_elements())
        if (evaluate(f, y, emb3).is_zero()) ++direct;
      CHECK(squarefree_root_count(f) == direct);
    }
  }
}

TEST_CASE("divmod and gcd") {
  auto F3 = FieldCtx::create(3, 1);
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 50; ++iter) {
    LPoly a = random_lpoly(rng, F3, 0, 6);
    LPoly b = random_lpoly(rng, F3, 0, 3);
    if (b.is_zero()) continue;
    auto [q, r] = divmod(a, b);
    CHECK(q * b + r == a);
    CHECK((r.is_zero() || r.degree() < b.degree()));
    LPoly g = gcd_monic(a, b);
    if (!g.is_zero()) {
      CHECK(divmod(a, g).second.is_zero());
      CHECK(divmod(b, g).second.is_zero());
    }
  }
}

TEST_CASE("exponent cap") {
  auto F2 = FieldCtx::create(2, 1);
  LPoly big = LPoly::monomial(F2, 900'000, F2->one());
  CHECK_THROWS_AS(big * big, ExponentOverflow);
}

TEST_CASE("polynomial printing") {
  auto F2 = FieldCtx::create(2, 1);
  auto F4 = FieldCtx::create(2, 2);
  CHECK(to_string(from_terms(F2, {{2, 1}, {1, 1}})) == "t^2 + t");
  CHECK(to_string(LPoly(F2)) == "0");
  LPoly g = LPoly::monomial(F4, -3, F4->gen() + F4->one());
  CHECK(to_string(g) == "(w+1)*t^-3");
}
