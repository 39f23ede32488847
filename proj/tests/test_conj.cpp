#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "gsp4/conj.hpp"

using namespace gsp4;

namespace {

std::shared_ptr<const Field> field(int p, int n, std::optional<int> xi = std::nullopt) {
  return std::make_shared<const Field>(Field::make(p, n, {.max_order = 16, .xi_override = xi}));
}

std::shared_ptr<const ClassData> classes(int p, int n) {
  return ClassData::compute(GroupEnumeration::build(field(p, n), GroupKind::gsp));
}

}  // namespace

TEST_CASE("GSp(4,2) = S_6: class sizes and element orders") {
  const auto cd = classes(2, 1);
  REQUIRE(cd->num_classes() == 11);
  std::multiset<std::pair<int, std::uint64_t>> got;
  for (std::size_t k = 0; k < cd->num_classes(); ++k) got.insert({cd->element_order(k), cd->class_size(k)});
  // Cycle types of S_6 with (order, class size).
  const std::multiset<std::pair<int, std::uint64_t>> s6 = {{1, 1},   {2, 15},  {2, 15},  {2, 45},
                                                           {3, 40},  {3, 40},  {4, 90},  {4, 90},
                                                           {5, 144}, {6, 120}, {6, 120}};
  CHECK(got == s6);
  CHECK(cd->exponent() == 60);
}

TEST_CASE("class data invariants at q = 3") {
  const auto cd = classes(3, 1);
  const MatrixArith& ar = cd->arith();
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < cd->num_classes(); ++k) {
    total += cd->class_size(k);
    CHECK(cd->group_order() % cd->class_size(k) == 0);
    const Mat4& g = cd->representative(k);
    CHECK(ar.order(g) == cd->element_order(k));
    CHECK(cd->class_of(ar.inverse(g)) == cd->inverse_class(k));
    CHECK(cd->class_of(ar.power(g, 5)) == cd->power_class(k, 5));
  }
  CHECK(total == 103680);
  CHECK(cd->class_of(ar.identity()) == cd->identity_class());

  std::mt19937_64 rng(7);
  const GroupEnumeration& G = cd->enumeration();
  std::uniform_int_distribution<std::size_t> pick(0, G.size() - 1);
  for (int i = 0; i < 200; ++i) {
    const Mat4 g = G.element(pick(rng)), s = G.element(pick(rng));
    CHECK(cd->class_of(ar.conjugate(s, ar.inverse(s), g)) == cd->class_of(g));
  }
}

TEST_CASE("class constants agree with a direct pair count") {
  const auto cd = classes(2, 1);
  const ClassConstants a = ClassConstants::compute(*cd);
  const GroupEnumeration& G = cd->enumeration();
  const MatrixArith& ar = cd->arith();
  const std::size_t n = cd->num_classes();
  for (std::size_t k = 0; k < n; ++k) {
    const Mat4 z = cd->representative(k);
    std::vector<std::uint64_t> count(n * n, 0);
    for (std::size_t x = 0; x < G.size(); ++x) {
      const Mat4 gx = G.element(x);
      const Mat4 y = ar.mul(ar.inverse(gx), z);  // x y = z
      ++count[cd->class_of_index(x) * n + cd->class_of(y)];
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(a(i, j, k) == count[i * n + j]);
  }
  // The identity class acts as the unit.
  const std::size_t e = cd->identity_class();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) CHECK(a(e, j, k) == (j == k ? 1u : 0u));
}

TEST_CASE("even q: Sp(4,q) x Z product classes") {
  auto f = field(2, 2);
  const auto sp = ClassData::compute(GroupEnumeration::build(f, GroupKind::sp));
  const auto g = ClassData::product_with_center(sp);
  CHECK(g->num_classes() == sp->num_classes() * 3);
  CHECK(g->group_order() == 2937600);
  const MatrixArith& ar = g->arith();
  for (std::size_t k = 0; k < g->num_classes(); k += 7) {
    const Mat4& r = g->representative(k);
    CHECK(g->class_of(r) == k);
    CHECK(g->class_of(ar.scale(f->generator(), r)) != k);
    CHECK(g->base_class(g->class_of(ar.scale(f->generator(), r))) == g->base_class(k));
  }
}

TEST_CASE("2x2 canonical forms") {
  const Field f3 = *field(3, 1);
  CHECK(canonical_form_2x2(f3, 0, 0, 0) == Orbit2x2::zero);
  CHECK(canonical_form_2x2(f3, 0, 1, 0) == Orbit2x2::det_square);
  CHECK(canonical_form_2x2(f3, 1, 0, 0) == Orbit2x2::rank1);
  const Field f4 = *field(2, 2);
  CHECK(canonical_form_2x2(f4, 1, 0, 1) == Orbit2x2::det_nonzero_mixed);
  CHECK(canonical_form_2x2(f4, 0, 1, 0) == Orbit2x2::det_nonzero_diag);
  for (auto [p, n] : {std::pair{3, 1}, {2, 2}, {5, 1}, {2, 1}, {7, 1}, {2, 3}}) {
    CAPTURE(p);
    CAPTURE(n);
    const auto rep = check_canonical_forms(*field(p, n), 0);
    CHECK_MESSAGE(rep.passed, rep.failure);
    CHECK(rep.orbits == 4);
    CHECK(rep.random_moves == 800);
  }
}

TEST_CASE("orbit sizes") {
  for (auto [p, n] : {std::pair{3, 1}, {5, 1}, {2, 2}, {2, 3}}) {
    const Field f = *field(p, n);
    const int q = f.q();
    std::map<Orbit2x2, int> size;
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y)
        for (int z = 0; z < q; ++z) ++size[canonical_form_2x2(f, x, y, z)];
    CHECK(size[Orbit2x2::zero] == 1);
    CHECK(size[Orbit2x2::rank1] == q * q - 1);  // nonzero with y^2 = xz
    if (f.is_even()) {
      CHECK(size[Orbit2x2::det_nonzero_diag] == q - 1);
      CHECK(size[Orbit2x2::det_nonzero_mixed] == q * q * q - q * q - q + 1);
    } else {
      CHECK(size[Orbit2x2::det_square] == q * (q * q - 1) / 2);
      CHECK(size[Orbit2x2::det_nonsquare] == q * (q - 1) * (q - 1) / 2);
    }
  }
}

TEST_CASE("canonical forms do not depend on the choice of xi") {
  for (auto [p, n] : {std::pair{5, 1}, {7, 1}, {3, 2}, {2, 2}, {2, 3}}) {
    const Field base = *field(p, n);
    const int q = base.q();
    for (int xi = 0; xi < q; ++xi) {
      std::optional<Field> alt;
      try {
        alt = Field::make(p, n, {.max_order = 16, .xi_override = xi});
      } catch (const FieldError&) {
        continue;
      }
      CAPTURE(xi);
      const auto rep = check_canonical_forms(*alt, 1);
      CHECK_MESSAGE(rep.passed, rep.failure);
      for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y)
          for (int z = 0; z < q; ++z) CHECK(canonical_form_2x2(*alt, x, y, z) == canonical_form_2x2(base, x, y, z));
      const Orbit2x2 top = base.is_even() ? Orbit2x2::det_nonzero_mixed : Orbit2x2::det_nonsquare;
      const auto r = orbit_representative(*alt, top);
      CHECK(canonical_form_2x2(base, r[0], r[1], r[2]) == top);
    }
  }
}

TEST_CASE("conjugacy types refine classes") {
  for (auto [p, n] : {std::pair{2, 1}, {3, 1}}) {
    const auto rep = check_type_soundness(*classes(p, n));
    CHECK_MESSAGE(rep.passed, rep.failure);
    CHECK(rep.labelled_elements > 0);
  }
}
