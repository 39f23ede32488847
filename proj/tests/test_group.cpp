#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "gsp4/group.hpp"

using namespace gsp4;

namespace {

std::shared_ptr<const Field> field(int p, int n) { return std::make_shared<const Field>(Field::make(p, n)); }

}  // namespace

TEST_CASE("multiplier") {
  const Field f = Field::make(3, 1);
  const MatrixArith ar(f);
  CHECK(ar.multiplier(ar.identity()) == 1);
  CHECK(ar.multiplier(ar.form_J()) == 1);
  CHECK(ar.multiplier(ar.levi(1, 0, 0, 1, 2)) == 2);  // diag(1, 1, 2, 2)
  Mat4 bad = ar.identity();
  bad[1] = 1;
  bad[4] = 1;
  CHECK_FALSE(ar.multiplier(bad).has_value());
  CHECK_THROWS_AS(GroupElement(ar, bad), std::invalid_argument);
}

TEST_CASE("group orders by formula") {
  CHECK(group_order(2, GroupKind::gsp) == 720);
  CHECK(group_order(3, GroupKind::gsp) == 103680);
  CHECK(group_order(4, GroupKind::gsp) == 2937600);
  CHECK(group_order(4, GroupKind::sp) == 979200);
}

TEST_CASE("enumeration reaches the formula order") {
  auto g2 = GroupEnumeration::build(field(2, 1), GroupKind::gsp);
  CHECK(g2->size() == 720);
  auto g3 = GroupEnumeration::build(field(3, 1), GroupKind::gsp);
  CHECK(g3->size() == 103680);
  auto s3 = GroupEnumeration::build(field(3, 1), GroupKind::sp);
  CHECK(s3->size() == 51840);
  const MatrixArith& ar = g3->arith();
  std::set<int> multipliers;
  for (std::size_t i = 0; i < g3->size(); i += 97) {
    const Mat4 g = g3->element(i);
    multipliers.insert(*ar.multiplier(g));
    CHECK(ar.mul(g, ar.inverse(g)) == ar.identity());
    CHECK(g3->index_of(g) == i);
  }
  CHECK(multipliers == std::set<int>{1, 2});
}

TEST_CASE("memory budget refuses large groups") {
  EnumerationOptions tight;
  tight.mem_budget_bytes = 1 << 20;
  CHECK_THROWS_AS(GroupEnumeration::build(field(3, 1), GroupKind::gsp, tight), BudgetExceeded);
  CHECK_THROWS_AS(GroupEnumeration::build(field(3, 2), GroupKind::gsp), BudgetExceeded);
}

TEST_CASE("packing round trip") {
  const Field f = Field::make(2, 2);
  const MatrixArith ar(f);
  for (const Mat4& g : group_generators(ar, GroupKind::sp)) {
    CHECK(ar.unpack(ar.pack(g)) == g);
    CHECK(ar.multiplier(g) == 1);
  }
}

TEST_CASE("Siegel radical N") {
  const Field f = Field::make(3, 1);
  const MatrixArith ar(f);
  const auto N = subgroup_N(ar);
  CHECK(N.size() == 27);
  CHECK(ar.siegel_unipotent(0, 0, 0) == ar.identity());
  for (const Mat4& n : N) CHECK(ar.multiplier(n) == 1);
  // N is abelian and n(v) n(w) = n(v + w).
  CHECK(ar.mul(ar.siegel_unipotent(1, 2, 0), ar.siegel_unipotent(2, 2, 1)) == ar.siegel_unipotent(0, 1, 1));
}

TEST_CASE("datum classification") {
  const Field f = Field::make(3, 1);
  CHECK(classify_datum(f, 0, 0, 0).rank_class == RankClass::rank0);
  CHECK(classify_datum(f, 1, 0, 1).rank_class == RankClass::rank2_nonsquare);
  CHECK(classify_datum(f, 1, 0, 2).rank_class == RankClass::rank2_square);
  CHECK(classify_datum(f, 1, 1, 0).split);
  CHECK(classify_datum(f, 1, 2, 1).rank_class == RankClass::rank1);
  CHECK_FALSE(classify_datum(f, 1, 2, 1).nondegenerate());
  const Field e = Field::make(2, 2);
  CHECK(classify_datum(e, 0, 1, 0).rank_class == RankClass::b_nonzero_eps_plus);
  CHECK(classify_datum(e, 1, 0, 1).rank_class == RankClass::b_zero_ac_nonzero);
  CHECK(classify_datum(e, 0, 0, 0).rank_class == RankClass::all_zero);
  CHECK(nondegenerate_data(f).size() == 18);  // b^2 - 4ac != 0: q^3 - q^2
}

TEST_CASE("tori of the Bessel data at q = 3") {
  const Field f = Field::make(3, 1);
  const MatrixArith ar(f);
  const TorusStructure split = subgroup_T(ar, classify_datum(f, 1, 0, 2));
  CHECK(split.kind() == TorusKind::split);
  CHECK(split.size() == 4);
  const TorusStructure ns = subgroup_T(ar, classify_datum(f, 1, 0, 1));
  CHECK(ns.kind() == TorusKind::nonsplit);
  CHECK(ns.size() == 8);
  CHECK(ns.center().size() == 2);
  for (std::size_t k : ns.center()) CHECK(ns.elements()[k].s == 0);
  CHECK_THROWS_AS(subgroup_T(ar, classify_datum(f, 0, 0, 0)), std::invalid_argument);
}

TEST_CASE("T is a group stabilizing the datum, R = TN factors uniquely") {
  for (auto [p, n] : {std::pair{2, 1}, {2, 2}, {3, 1}}) {
    const Field f = Field::make(p, n);
    const MatrixArith ar(f);
    const int q = f.q();
    for (const BesselDatum& d : nondegenerate_data(f)) {
      const TorusStructure T = subgroup_T(ar, d);
      CHECK(static_cast<int>(T.size()) == (d.split ? (q - 1) * (q - 1) : q * q - 1));
      std::set<Mat4> elems;
      for (const auto& t : T.elements()) elems.insert(t.matrix);
      for (const auto& s : T.elements())
        for (const auto& t : T.elements()) CHECK(elems.count(ar.mul(s.matrix, t.matrix)) == 1);
      // t n(x, y, z) t^{-1} preserves a x + b y + c z.
      const auto& t = T.elements()[T.size() - 1];
      const Mat4 ti = ar.inverse(t.matrix);
      for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y) {
          const Mat4 m = ar.mul(ar.mul(t.matrix, ar.siegel_unipotent(x, y, 1)), ti);
          const auto back = factor_R(ar, T, m);
          REQUIRE(back.has_value());
          CHECK(back->torus_index == T.index_of(1, 0));
          CHECK(bessel_form(f, d, back->x, back->y, back->z) == bessel_form(f, d, x, y, 1));
        }
      const auto R = subgroup_R(ar, T);
      CHECK(R.size() == T.size() * q * q * q);
      const auto& g = R[R.size() / 2];
      const auto back = factor_R(ar, T, g.matrix);
      REQUIRE(back.has_value());
      CHECK(back->torus_index == g.torus_index);
      CHECK(back->x == g.x);
      CHECK(back->y == g.y);
      CHECK(back->z == g.z);
    }
  }
}

TEST_CASE("split torus eigenvalue map is an isomorphism") {
  const Field f = Field::make(3, 1);
  const MatrixArith ar(f);
  const TorusStructure T = subgroup_T(ar, classify_datum(f, 1, 0, 2));
  std::set<std::pair<int, int>> images;
  for (const auto& t : T.elements()) images.insert({T.alpha_plus(t), T.alpha_minus(t)});
  CHECK(images.size() == T.size());
  CHECK(T.t_plus().size() == 2);
  CHECK(T.t_minus().size() == 2);
}

TEST_CASE("auxiliary subgroups at q = 3") {
  const Field f = Field::make(3, 1);
  const MatrixArith ar(f);
  const AuxiliarySubgroups aux = auxiliary_subgroups(ar);
  CHECK(aux.center.size() == 2);
  CHECK(aux.unipotent.size() == 81);
  CHECK(aux.klingen_radical.size() == 27);
  CHECK(aux.siegel_parabolic.size() == 27 * 48 * 2);  // N x GL_2 x multipliers
}
