#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "fixtures.hpp"

using namespace gsp4;

namespace {

bool brute_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::multiset<std::int64_t> degrees(const CharacterTable& ct) { return {ct.degrees.begin(), ct.degrees.end()}; }

}  // namespace

TEST_CASE("Dixon prime") {
  for (auto [e, order] : {std::pair{60, 720ull}, {360, 103680ull}, {12, 24ull}, {1, 1ull}}) {
    const std::uint64_t l = dixon_prime(e, order);
    CHECK(brute_prime(l));
    CHECK((l - 1) % e == 0);
    CHECK(static_cast<double>(l) > 2 * std::sqrt(static_cast<double>(order)));
    for (std::uint64_t m = 1; m < l; m += e)
      if (brute_prime(m)) CHECK(static_cast<double>(m) <= 2 * std::sqrt(static_cast<double>(order)));
  }
  CHECK(dixon_prime(360, 103680) == 1801);
}

TEST_CASE("q = 2: the character table of S_6") {
  const CharacterTable& ct = fixtures::engine(2, 1).table();
  CHECK(ct.num_rows() == 11);
  CHECK(degrees(ct) == std::multiset<std::int64_t>{1, 1, 5, 5, 5, 5, 9, 9, 10, 10, 16});
  // Every character of S_6 is rational.
  for (const auto& row : ct.chars)
    for (const auto& v : row) CHECK(v.is_rational());
  CHECK_NOTHROW(verify_orthogonality(ct));
  // The assembly for even q is the identity when Z is trivial.
  auto f = fixtures::field(2, 1);
  const CharacterTable direct = dixon_schneider(ClassData::compute(GroupEnumeration::build(f, GroupKind::gsp)));
  REQUIRE(direct.num_rows() == ct.num_rows());
  for (std::size_t r = 0; r < ct.num_rows(); ++r) CHECK(direct.degrees[r] == ct.degrees[r]);
}

TEST_CASE("q = 3 table") {
  const CharacterTable& ct = fixtures::engine(3, 1).table();
  const ClassData& cd = *ct.classes;
  CHECK(cd.group_order() == 103680);
  CHECK(ct.num_rows() == cd.num_classes());
  std::int64_t sum = 0;
  for (auto d : ct.degrees) sum += d * d;
  CHECK(sum == 103680);
  CHECK(degrees(ct).count(81) == 2);
  CHECK_NOTHROW(verify_orthogonality(ct));
  for (std::size_t r = 0; r < ct.num_rows(); ++r) {
    CHECK(ct.value(r, cd.identity_class()).to_integer() == ct.degrees[r]);
    for (std::size_t k = 0; k < cd.num_classes(); ++k) CHECK(cd.element_order(k) % ct.value(r, k).conductor() == 0);
  }
  // Rows are sorted by degree.
  CHECK(std::is_sorted(ct.degrees.begin(), ct.degrees.end()));
  CHECK(ct.degrees.front() == 1);
}

TEST_CASE("central characters: each omega carries |G|/|Z| of the regular representation") {
  const CharacterTable& ct = fixtures::engine(3, 1).table();
  std::map<int, std::int64_t> mass;
  for (std::size_t r = 0; r < ct.num_rows(); ++r) {
    const CentralCharacter w = central_character(ct, r);
    CHECK(w.order == 2);
    mass[w.index] += ct.degrees[r] * ct.degrees[r];
  }
  CHECK(central_character(ct, 0).index == 0);
  CHECK(mass.size() == 2);
  CHECK(mass[0] == 103680 / 2);
  CHECK(mass[1] == 103680 / 2);
}

#ifdef GSP4_STRETCH
TEST_CASE("q = 4 with even assembly") {
  const CharacterTable& ct = fixtures::engine(2, 2).table();
  std::int64_t sum = 0;
  for (auto d : ct.degrees) sum += d * d;
  CHECK(sum == 2937600);
  CHECK_NOTHROW(verify_orthogonality(ct));
}
#endif

TEST_CASE("orthogonality check rejects a damaged table") {
  CharacterTable ct = fixtures::engine(2, 1).table();
  SUBCASE("swapped values") {
    std::swap(ct.chars[3][2], ct.chars[3][4]);
    CHECK_THROWS_AS(verify_orthogonality(ct), OrthogonalityError);
  }
  SUBCASE("missing row") {
    ct.chars.pop_back();
    ct.degrees.pop_back();
    CHECK_THROWS_AS(verify_orthogonality(ct), OrthogonalityError);
  }
  SUBCASE("wrong value") {
    ct.chars[5][1] = ct.chars[5][1] + Cyclotomic::integer(1);
    CHECK_THROWS_AS(verify_orthogonality(ct), OrthogonalityError);
  }
}
