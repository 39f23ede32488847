#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"

using namespace gsp4;

namespace {

/// (1/q^3) sum_n conj(psi_{a,b,c}(n)) theta(n), summed naively over subgroup_N.
std::int64_t hom_n_oracle(const BesselEngine& eng, std::size_t row, int a, int b, int c) {
  const ClassData& cd = eng.classes();
  const Field& f = eng.field();
  const MatrixArith& ar = cd.arith();
  const int q = f.q();
  Cyclotomic sum;
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      for (int z = 0; z < q; ++z) {
        const int form = f.add(f.add(f.mul(a, x), f.mul(b, y)), f.mul(c, z));
        const Cyclotomic psi_bar = Cyclotomic::root(f.p(), -f.trace(form));
        sum = sum + eng.table().value(row, cd.class_of(ar.siegel_unipotent(x, y, z))) * psi_bar;
      }
  const auto v = sum.to_integer();
  REQUIRE(v.has_value());
  REQUIRE(*v % (q * q * q) == 0);
  return *v / (q * q * q);
}

/// (1/|R|) sum_{t n in R} conj(chi(t) psi(n)) theta(t n) over an explicit list of R.
std::int64_t hom_r_oracle(const BesselEngine& eng, const DatumContext& ctx, std::size_t row, std::size_t chi) {
  const ClassData& cd = eng.classes();
  const Field& f = eng.field();
  const int e = eng.conductor();
  CyclotomicAccumulator acc(e);
  const auto R = subgroup_R(cd.arith(), ctx.torus);
  for (const BesselElement& g : R) {
    const long long psi = f.trace(bessel_form(f, ctx.datum, g.x, g.y, g.z)) * (e / f.p());
    acc.add_scaled(eng.table().value(row, cd.class_of(g.matrix)), -psi - ctx.characters[chi].exponent[g.torus_index],
                   1);
  }
  const auto v = acc.value().to_integer();
  REQUIRE(v.has_value());
  const auto order = static_cast<std::int64_t>(R.size());
  REQUIRE(*v % order == 0);
  return *v / order;
}

std::optional<std::size_t> find_row(const HomDimReportN& rep, std::int64_t degree, std::array<std::int64_t, 4> dims) {
  for (const auto& r : rep.rows)
    if (r.degree == degree && r.dims == dims) return r.row;
  return std::nullopt;
}

}  // namespace

TEST_CASE("odd lemma sums at the stated points") {
  const Field f3 = Field::make(3, 1);
  CHECK(cone_sum(f3, 0, 0, 0) == 8);                       // q^2 - 1
  CHECK(cone_sum(f3, 1, 1, 0) == 2);                       // square discriminant: q - 1
  CHECK(cone_sum(f3, 1, 0, 1) == -4);                      // nonsquare: -q - 1
  CHECK(cone_sum_brute(f3, 1, 1, 0) == 2);
  CHECK(square_locus_sum(f3, 0, 0, 0) == 12);              // q (q^2 - 1) / 2
  CHECK(square_locus_sum(f3, 0, 1, 0) == -3);              // -q
  CHECK(square_locus_sum_brute(f3, 0, 1, 0) == -3);
  const Field f5 = Field::make(5, 1);
  CHECK(nonsquare_locus_sum(f5, 1, 0, 2) == 5);            // nonsquare discriminant: q
  CHECK(nonsquare_locus_sum_brute(f5, 1, 0, 2) == 5);
  CHECK(nonsquare_locus_sum(f5, 1, 2, 1) == -10);          // rank one: -q (q - 1) / 2
  CHECK_THROWS(square_locus_sum(Field::make(2, 1), 0, 0, 0));
}

TEST_CASE("even lemma sums") {
  const Field f4 = Field::make(2, 2);
  CHECK(cone_sum(f4, 0, 1, 0) == 3);  // b != 0, eps(0) = 1: q - 1
  CHECK(cone_sum_brute(f4, 0, 1, 0) == 3);
  CHECK(even_locus_sums(f4, 0, 1, 0).diagonal == -1);
  CHECK(even_locus_sums(f4, 1, 0, 0).diagonal == 3);
  // b != 0, eps(ac / b^2) = -1.
  const int w = 2;
  REQUIRE(f4.epsilon(f4.mul(w, w)) == -1);
  CHECK(even_locus_sums(f4, w, 1, w).mixed == 5);
  CHECK(even_locus_sums_brute(f4, w, 1, w).mixed == 5);
}

TEST_CASE("lemma closed forms against brute force for every triple") {
  for (auto [p, n] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}, {2, 1}, {2, 2}, {2, 3}}) {
    CAPTURE(p);
    CAPTURE(n);
    const Field f = Field::make(p, n);
    const CheckReport rep = verify_lemmas(f);
    CHECK_MESSAGE(rep.passed, rep.failure);
    CHECK(rep.checks > 0);
    const CheckReport cnt = verify_counting_facts(f);
    CHECK_MESSAGE(cnt.passed, cnt.failure);
  }
}

TEST_CASE("Hom_N against the naive oracle") {
  for (auto [p, n] : {std::pair{2, 1}, {3, 1}}) {
    const BesselEngine& eng = fixtures::engine(p, n);
    const int q = eng.field().q();
    for (std::size_t row = 0; row < eng.table().num_rows(); row += (q == 2 ? 1 : 3))
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
          for (int c = 0; c < q; ++c) {
            const auto expect = hom_n_oracle(eng, row, a, b, c);
            CHECK(eng.hom_dim_N(row, a, b, c) == expect);
            CHECK(eng.hom_dim_N_four_class(row, a, b, c) == expect);
          }
  }
}

TEST_CASE("trivial character") {
  const BesselEngine& eng = fixtures::engine(3, 1);
  CHECK(eng.table().degrees[0] == 1);
  CHECK(eng.hom_dim_N(0, 0, 0, 0) == 1);
  CHECK(eng.hom_dim_N(0, 1, 0, 1) == 0);
  CHECK_FALSE(eng.generic(0));
  CHECK_FALSE(eng.cuspidal(0));
  const DatumContext ctx = eng.context(classify_datum(eng.field(), 1, 0, 2));
  for (std::size_t c = 0; c < ctx.characters.size(); ++c) CHECK(eng.hom_dim_R(ctx, 0, ctx.characters[c]) == 0);
}

TEST_CASE("q = 3 spot rows") {
  const BesselEngine& eng = fixtures::engine(3, 1);
  const HomDimReportN rep = eng.report_N();
  const auto row = find_row(rep, 81, {3, 3, 3, 3});
  REQUIRE(row.has_value());
  CHECK(eng.generic(*row));
  CHECK_FALSE(eng.cuspidal(*row));
}

TEST_CASE("q = 2 spot rows") {
  const BesselEngine& eng = fixtures::engine(2, 1);
  const HomDimReportN rep = eng.report_N();
  const auto row = find_row(rep, 16, {2, 2, 2, 2});
  REQUIRE(row.has_value());
  // A split datum at q = 2 has a trivial torus: one character, and dimension 1 + 1.
  const BesselDatum d = classify_datum(eng.field(), 0, 1, 0);
  REQUIRE(d.split);
  const DatumContext ctx = eng.context(d);
  REQUIRE(ctx.characters.size() == 1);
  CHECK(eng.hom_dim_R(ctx, *row, ctx.characters[0]) == 2);
}

TEST_CASE("Hom_R against the naive oracle, and S1 + S2") {
  for (auto [p, n] : {std::pair{2, 1}, {3, 1}}) {
    const BesselEngine& eng = fixtures::engine(p, n);
    const Field& f = eng.field();
    std::vector<BesselDatum> data = {classify_datum(f, 0, 1, 0), classify_datum(f, 1, 1, 1)};
    if (!f.is_even()) data = {classify_datum(f, 1, 0, 2), classify_datum(f, 1, 0, 1)};
    for (const BesselDatum& d : data) {
      const DatumContext ctx = eng.context(d);
      for (std::size_t row = 0; row < eng.table().num_rows(); row += (f.q() == 2 ? 1 : 4)) {
        const auto profile = eng.torus_profile(ctx, row);
        for (std::size_t c = 0; c < ctx.characters.size(); ++c) {
          const auto dim = eng.hom_dim_R(ctx, profile, ctx.characters[c]);
          CHECK(dim == hom_r_oracle(eng, ctx, row, c));
          const S1S2 s = eng.s1_s2_decomposition(ctx, profile, ctx.characters[c]);
          CHECK(s.s1 + s.s2 == Rational(dim));
          if (!eng.central_match(ctx, row, ctx.characters[c])) {
            CHECK(s.s1 == Rational(0));
            CHECK(s.s2 == Rational(0));
          }
        }
      }
    }
  }
}

TEST_CASE("torus characters") {
  const BesselEngine& eng = fixtures::engine(3, 1);
  const Field& f = eng.field();
  const DatumContext split = eng.context(classify_datum(f, 1, 0, 2));
  const DatumContext ns = eng.context(classify_datum(f, 1, 0, 1));
  CHECK(split.characters.size() == 4);
  CHECK(ns.characters.size() == 8);
  // Distinct characters, and chi(st) = chi(s) chi(t).
  for (const DatumContext* ctx : {&split, &ns}) {
    const auto& T = ctx->torus;
    const MatrixArith& ar = eng.classes().arith();
    for (const auto& chi : ctx->characters)
      for (std::size_t s = 0; s < T.size(); ++s)
        for (std::size_t t = 0; t < T.size(); ++t) {
          const Mat4 st = ar.mul(T.elements()[s].matrix, T.elements()[t].matrix);
          std::size_t k = 0;
          while (T.elements()[k].matrix != st) ++k;
          CHECK((chi.exponent[s] + chi.exponent[t] - chi.exponent[k]) % eng.conductor() == 0);
        }
    std::set<std::vector<long long>> seen;
    for (const auto& chi : ctx->characters) seen.insert(chi.exponent);
    CHECK(seen.size() == ctx->characters.size());
  }
}

TEST_CASE("induced-dimension sum rules at q = 3") {
  const BesselEngine& eng = fixtures::engine(3, 1);
  const Field& f = eng.field();
  const HomDimReportR rep = eng.report_R(classify_datum(f, 1, 0, 2));
  std::map<std::size_t, std::int64_t> by_chi;
  for (const auto& r : rep.records) by_chi[r.chi] += r.degree * r.dim;
  for (auto [chi, sum] : by_chi) CHECK(sum == 960);  // 103680 / (4 * 27)

  std::int64_t n_sum = 0;
  for (std::size_t row = 0; row < eng.table().num_rows(); ++row)
    n_sum += eng.table().degrees[row] * eng.hom_dim_N(row, 1, 0, 1);
  CHECK(n_sum == 103680 / 27);
}

TEST_CASE("psi rescaling and the Whittaker character do not matter") {
  const BesselEngine& eng = fixtures::engine(3, 1);
  for (std::size_t row = 0; row < eng.table().num_rows(); ++row) {
    CHECK(eng.hom_dim_N(row, 1, 0, 1, 2) == eng.hom_dim_N(row, 1, 0, 1));
    CHECK(eng.whittaker_dim(row, 1, 2) == eng.whittaker_dim(row));
    CHECK(eng.whittaker_dim(row) <= 1);
  }
}

TEST_CASE("generic representations admit every split Bessel model at q = 3") {
  const BesselEngine& eng = fixtures::engine(3, 1);
  const Field& f = eng.field();
  for (const BesselDatum& d : nondegenerate_data(f)) {
    if (!d.split) continue;
    const HomDimReportR rep = eng.report_R(d);
    for (const auto& r : rep.records)
      if (r.central_match && eng.generic(r.row)) CHECK(r.dim >= 1);
  }
}

TEST_CASE("table verifiers at q = 2 and q = 3") {
  for (auto [p, n] : {std::pair{2, 1}, {3, 1}}) {
    CAPTURE(p);
    const BesselEngine& eng = fixtures::engine(p, n);
    const TableNVerification tn = verify_table_N(eng);
    CHECK_MESSAGE(tn.check.passed, tn.check.failure);
    for (const auto& m : tn.matches) CHECK_FALSE(m.candidates.empty());
    const TableRVerification tr = verify_table_R(eng, tn);
    CHECK_MESSAGE(tr.check.passed, tr.check.failure);
    if (p == 2) CHECK(tr.theta_rows_checked > 0);
    const TableRVerification co = verify_corollary(eng);
    CHECK_MESSAGE(co.check.passed, co.check.failure);
  }
}

TEST_CASE("symbolic tables") {
  CHECK(table_N_rows(false).size() == 24);
  CHECK(table_N_rows(true).size() == 19);
  for (const auto& row : table_N_rows(false)) CHECK(row.degree(3) > 0);
  const auto theta0 = std::find_if(table_N_rows(false).begin(), table_N_rows(false).end(),
                                   [](const SymbolicRowN& r) { return std::string(r.name) == "theta0"; });
  REQUIRE(theta0 != table_N_rows(false).end());
  CHECK(theta0->degree(5) == 1);
  CHECK(theta0->dims[0](5) == 1);
  CHECK(theta0->dims[1](5) == 0);
  CHECK_FALSE(table_R_theta_rows().empty());
}
