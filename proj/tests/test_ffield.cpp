#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "gsp4/ffield.hpp"

using namespace gsp4;

namespace {

std::set<int> squares(const Field& f) {
  std::set<int> s;
  for (int x = 1; x < f.q(); ++x) s.insert(f.mul(x, x));
  return s;
}

int brute_trace(const Field& f, int x) {
  int t = 0, y = x;
  for (int i = 0; i < f.n(); ++i) {
    t = f.add(t, y);
    y = f.pow(y, f.p());
  }
  return t;
}

}  // namespace

TEST_CASE("prime field F_3") {
  const Field f = Field::make(3, 1);
  CHECK(f.q() == 3);
  CHECK(f.mul(2, 2) == 1);
  CHECK(f.add(2, 0) == 2);
  CHECK(f.generator() == 2);
  CHECK(f.xi() == 2);
  CHECK(f.square_class(0) == SquareClass::zero);
  CHECK(f.square_class(1) == SquareClass::square);
  CHECK(f.square_class(2) == SquareClass::nonsquare);
  CHECK(additive_character(f, 1) == ComplexRoot(3, 1));
  CHECK(additive_character(f, 0).is_one());
}

TEST_CASE("F_4 under X^2 + X + 1") {
  const Field f = Field::make(2, 2);
  const int w = 2, w1 = 3;  // X and X + 1
  CHECK(f.modulus() == std::vector<int>{1, 1, 1});
  CHECK(f.mul(w, w) == w1);
  CHECK(f.to_string(w1) == "X+1");
  CHECK(f.q_circle() == std::vector<int>{0, 1});
  CHECK(f.epsilon(1) == 1);
  CHECK(f.epsilon(w) == -1);
  CHECK(f.trace(w) == 1);
  CHECK(additive_character(f, w) == ComplexRoot(2, 1));
  CHECK_FALSE(f.in_q_circle(f.xi()));
}

TEST_CASE("F_2 has F_2° = {0} and xi = 1") {
  const Field f = Field::make(2, 1);
  CHECK(f.q_circle() == std::vector<int>{0});
  CHECK(f.xi() == 1);
  CHECK(f.epsilon(0) == 1);
  CHECK(f.epsilon(1) == -1);
}

TEST_CASE("field axioms and derived maps against brute force") {
  for (auto [p, n] : {std::pair{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}, {7, 1}, {2, 4}}) {
    CAPTURE(p);
    CAPTURE(n);
    const Field f = Field::make(p, n);
    const int q = f.q();
    CHECK(is_irreducible_mod_p(f.modulus(), p));
    CHECK(f.multiplicative_order(f.generator()) == q - 1);
    for (int x = 0; x < q; ++x) {
      CHECK(f.trace(x) == brute_trace(f, x));
      for (int y = 0; y < q; ++y) {
        CHECK(f.add(x, y) == f.add(y, x));
        CHECK(f.mul(x, y) == f.mul(y, x));
        CHECK(f.sub(f.add(x, y), y) == x);
        for (int z = 0; z < q; z += 3) CHECK(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
      }
      if (x) {
        CHECK(f.mul(x, f.inv(x)) == 1);
        CHECK(f.exp(f.log(x)) == x);
        CHECK(f.pow(x, q - 1) == 1);
      }
    }
    if (f.is_even()) {
      std::set<int> image;
      for (int t = 0; t < q; ++t) image.insert(f.add(f.mul(t, t), t));
      CHECK(static_cast<int>(image.size()) == q / 2);
      for (int x = 0; x < q; ++x) CHECK(f.in_q_circle(x) == (image.count(x) == 1));
      for (int t = 0; t < q; ++t) CHECK(f.epsilon(f.add(f.add(f.mul(t, t), t), f.xi())) == -1);
    } else {
      const auto sq = squares(f);
      CHECK(static_cast<int>(sq.size()) == (q - 1) / 2);
      CHECK(sq.count(f.xi()) == 0);
      CHECK(count_norm_one_solutions(f) == q + 1);
      for (int x = 1; x < q; ++x) {
        const auto r = f.sqrt(x);
        CHECK(r.has_value() == (sq.count(x) == 1));
        if (r) CHECK(f.mul(*r, *r) == x);
      }
    }
  }
}

TEST_CASE("modulus is the least monic irreducible") {
  CHECK(Field::make(2, 3).modulus() == std::vector<int>{1, 1, 0, 1});
  CHECK(Field::make(3, 2).modulus() == std::vector<int>{1, 0, 1});
  CHECK_FALSE(is_irreducible_mod_p({1, 0, 1}, 2));  // (X + 1)^2
  CHECK(is_irreducible_mod_p({2, 2, 1}, 3));
}

TEST_CASE("xi override must be a valid choice") {
  const Field f = Field::make(5, 1, {.max_order = 16, .xi_override = 3});
  CHECK(f.xi() == 3);
  CHECK_THROWS_AS(Field::make(5, 1, {.max_order = 16, .xi_override = 4}), FieldError);
  CHECK_THROWS_AS(Field::make(2, 2, {.max_order = 16, .xi_override = 1}), FieldError);
  CHECK_THROWS_AS(Field::make(4, 1), FieldError);
  CHECK_THROWS_AS(Field::make(2, 5), FieldError);  // over the default order limit
}

TEST_CASE("checked element API rejects foreign elements") {
  const Field f = Field::make(3, 1);
  const Field g = Field::make(5, 1);
  const FieldElement x = f.element(2);
  CHECK(f.arith(x, x, ArithOp::mul).index == 1);
  CHECK(f.arith_pow(x, 2).index == 1);
  CHECK_THROWS(f.arith(x, g.element(1), ArithOp::add));
  CHECK_THROWS(f.arith(x, f.element(0), ArithOp::div));
  CHECK_THROWS(f.element(3));
}

TEST_CASE("quadratic extension") {
  for (auto [p, n] : {std::pair{2, 1}, {2, 2}, {3, 1}, {5, 1}}) {
    const Field f = Field::make(p, n);
    const QuadraticExtension E(f);
    const int q = f.q();
    CHECK(E.big().q() == q * q);
    CHECK(E.big().multiplicative_order(E.gamma()) == q - 1);
    CHECK(E.big().multiplicative_order(E.eta()) == q + 1);
    std::vector<int> fiber(q, 0);
    for (int y = 1; y < q * q; ++y) {
      const auto r = E.restrict(E.norm(y));
      REQUIRE(r.has_value());
      ++fiber[*r];
    }
    CHECK(fiber[0] == 0);
    for (int x = 1; x < q; ++x) {
      CHECK(fiber[x] == q + 1);
      CHECK(E.norm(E.embed(x)) == E.embed(f.mul(x, x)));
      CHECK(E.restrict(E.embed(x)) == x);
    }
  }
}

TEST_CASE("cyclic characters") {
  const CyclicCharacter triv = mult_character(8, 0);
  for (int k = 0; k < 8; ++k) CHECK(triv.at_log(k).is_one());
  const Field f = Field::make(3, 2);
  const CyclicCharacter quad = mult_character(8, 4);
  for (int x = 1; x < 9; ++x) {
    const ComplexRoot v = quad.at_log(f.log(x));
    CHECK(v == ComplexRoot(2, f.square_class(x) == SquareClass::square ? 0 : 1));
  }
}
