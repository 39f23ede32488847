#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <limits>
#include <stdexcept>

#include "gsp4/cyclotomic.hpp"

using namespace gsp4;

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<std::int64_t>{-1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<std::int64_t>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<std::int64_t>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<std::int64_t>{1, 0, -1, 0, 1});
  for (int n : {1, 2, 7, 12, 30, 60, 360})
    CHECK(static_cast<int>(cyclotomic_polynomial(n).size()) == euler_phi(n) + 1);
}

TEST_CASE("sums of roots of unity") {
  CHECK((Cyclotomic::root(3, 1) + Cyclotomic::root(3, 2)) == Cyclotomic::integer(-1));
  for (int n : {2, 5, 8, 12, 15}) {
    Cyclotomic s;
    for (int k = 0; k < n; ++k) s = s + Cyclotomic::root(n, k);
    CHECK(s.is_zero());
  }
  CHECK(Cyclotomic::root(4, 2) == Cyclotomic::integer(-1));
  CHECK(Cyclotomic::root(12, 4) == Cyclotomic::root(3, 1));
  CHECK(Cyclotomic::root(5, 7) == Cyclotomic::root(5, 2));
  CHECK(Cyclotomic::root(5, -1) == Cyclotomic::root(5, 4));
}

TEST_CASE("ring operations across conductors") {
  const Cyclotomic i = Cyclotomic::root(4, 1);
  const Cyclotomic w = Cyclotomic::root(3, 1);
  CHECK(i * i == Cyclotomic::integer(-1));
  CHECK((i * w).conductor() % 12 == 0);
  CHECK((i + w) - w == i);
  CHECK(w * w * w == Cyclotomic::integer(1));
  CHECK((w * 3).to_string() != "");
  // |1 + zeta_5|^2 is not rational, but the product with its conjugate is real.
  const Cyclotomic z = Cyclotomic::integer(1) + Cyclotomic::root(5, 1);
  const Cyclotomic norm = z * z.conj();
  CHECK(norm == norm.conj());
  CHECK_FALSE(norm.is_rational());
  CHECK(Cyclotomic::integer(7).to_integer() == 7);
  CHECK_FALSE(w.to_integer().has_value());
}

TEST_CASE("galois action and promotion") {
  const Cyclotomic z = Cyclotomic::root(7, 1);
  CHECK(z.galois(3) == Cyclotomic::root(7, 3));
  CHECK(z.galois(-1) == z.conj());
  const Cyclotomic p = z.promote(21);
  CHECK(p.conductor() == 21);
  CHECK(p == z);
  Cyclotomic orbit;
  for (int k = 1; k < 7; ++k) orbit = orbit + z.galois(k);
  CHECK(orbit == Cyclotomic::integer(-1));
}

TEST_CASE("group-ring and coefficient constructors agree") {
  std::vector<std::int64_t> dense(6, 0);
  dense[1] = 2;
  dense[4] = -1;
  const Cyclotomic a = Cyclotomic::from_group_ring(6, dense);
  CHECK(a == Cyclotomic::root(6, 1) * 2 - Cyclotomic::root(6, 4));
  CHECK(Cyclotomic::from_coefficients(a.conductor(), a.coefficients()) == a);
}

TEST_CASE("total order") {
  const Cyclotomic a = Cyclotomic::integer(1), b = Cyclotomic::integer(2);
  CHECK(Cyclotomic::compare(a, b) < 0);
  CHECK(Cyclotomic::compare(b, a) > 0);
  CHECK(Cyclotomic::compare(Cyclotomic::root(12, 4), Cyclotomic::root(3, 1)) == 0);
}

TEST_CASE("overflow is an error, never a wrap") {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  CHECK_THROWS_AS(checked_add(big, 1), std::overflow_error);
  CHECK_THROWS_AS(checked_mul(big, 2), std::overflow_error);
  CHECK_THROWS_AS(Cyclotomic::integer(big) + Cyclotomic::integer(1), std::overflow_error);
  CHECK(checked_mul(-3, 4) == -12);
}

TEST_CASE("accumulator") {
  CyclotomicAccumulator acc(12);
  for (int k = 0; k < 12; ++k) acc.add_root(k, 5);
  CHECK(acc.value().is_zero());
  CyclotomicAccumulator b(12);
  b.add_scaled(Cyclotomic::root(3, 1), 3, 2);  // 2 * zeta_12^3 * zeta_3
  CHECK(b.value() == Cyclotomic::root(12, 7) * 2);
  b.add_root(-7, 1);
  CHECK(b.value() == Cyclotomic::root(12, 7) * 2 + Cyclotomic::root(12, 5));
  CHECK_THROWS(b.add_scaled(Cyclotomic::root(5, 1), 0, 1));
}
