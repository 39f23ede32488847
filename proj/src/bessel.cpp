#include "gsp4/bessel.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "gsp4/parallel.hpp"

namespace gsp4 {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

int neg_form(const Field& f, int a, int b, int c, int x, int y, int z) {
  return f.neg(f.add(f.add(f.mul(a, x), f.mul(b, y)), f.mul(c, z)));
}

template <class Pred>
std::int64_t locus_sum(const Field& f, int a, int b, int c, Pred in_locus) {
  CyclotomicAccumulator acc(f.p());
  const int q = f.q();
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      for (int z = 0; z < q; ++z)
        if (in_locus(x, y, z, f.sub(f.mul(y, y), f.mul(x, z))))
          acc.add_root(f.trace(neg_form(f, a, b, c, x, y, z)), 1);
  const auto v = acc.value().to_integer();
  if (!v) throw IntegralityError("character sum over a locus is not rational");
  return *v;
}

void require_odd(const Field& f) {
  if (f.is_even()) throw std::invalid_argument("this sum is defined for odd q only");
}

void require_even(const Field& f) {
  if (!f.is_even()) throw std::invalid_argument("this sum is defined for even q only");
}

std::string triple(int a, int b, int c) {
  std::ostringstream out;
  out << "(" << a << "," << b << "," << c << ")";
  return out.str();
}

}  // namespace

std::int64_t cone_sum(const Field& f, int a, int b, int c) {
  const std::int64_t q = f.q();
  switch (classify_datum(f, a, b, c).rank_class) {
    case RankClass::rank0:
    case RankClass::all_zero: return q * q - 1;
    case RankClass::rank1:
    case RankClass::b_zero_ac_nonzero: return -1;
    case RankClass::rank2_square:
    case RankClass::b_nonzero_eps_plus: return q - 1;
    case RankClass::rank2_nonsquare:
    case RankClass::b_nonzero_eps_minus: return -q - 1;
  }
  throw std::logic_error("unknown rank class");
}

std::int64_t cone_sum_brute(const Field& f, int a, int b, int c) {
  return locus_sum(f, a, b, c, [](int x, int y, int z, int det) { return det == 0 && (x || y || z); });
}

std::int64_t square_locus_sum(const Field& f, int a, int b, int c) {
  require_odd(f);
  const std::int64_t q = f.q();
  switch (classify_datum(f, a, b, c).rank_class) {
    case RankClass::rank0: return q * (q * q - 1) / 2;
    case RankClass::rank1: return q * (q - 1) / 2;
    case RankClass::rank2_square: return -q;
    default: return 0;
  }
}

std::int64_t square_locus_sum_brute(const Field& f, int a, int b, int c) {
  require_odd(f);
  return locus_sum(f, a, b, c, [&](int, int, int, int det) { return f.square_class(det) == SquareClass::square; });
}

std::int64_t nonsquare_locus_sum(const Field& f, int a, int b, int c) {
  require_odd(f);
  const std::int64_t q = f.q();
  switch (classify_datum(f, a, b, c).rank_class) {
    case RankClass::rank0: return q * (q - 1) * (q - 1) / 2;
    case RankClass::rank1: return -q * (q - 1) / 2;
    case RankClass::rank2_square: return 0;
    default: return q;
  }
}

std::int64_t nonsquare_locus_sum_derived(const Field& f, int a, int b, int c) {
  require_odd(f);
  const std::int64_t q = f.q();
  const std::int64_t total = (a == 0 && b == 0 && c == 0) ? q * q * q : 0;
  return total - 1 - cone_sum(f, a, b, c) - square_locus_sum(f, a, b, c);
}

std::int64_t nonsquare_locus_sum_brute(const Field& f, int a, int b, int c) {
  require_odd(f);
  return locus_sum(f, a, b, c,
                   [&](int, int, int, int det) { return f.square_class(det) == SquareClass::nonsquare; });
}

EvenLocusSums even_locus_sums(const Field& f, int a, int b, int c) {
  require_even(f);
  const std::int64_t q = f.q();
  switch (classify_datum(f, a, b, c).rank_class) {
    case RankClass::all_zero: return {q - 1, (q - 1) * (q * q - 1)};
    case RankClass::b_zero_ac_nonzero: return {q - 1, -q + 1};
    case RankClass::b_nonzero_eps_plus: return {-1, -q + 1};
    case RankClass::b_nonzero_eps_minus: return {-1, q + 1};
    default: throw std::logic_error("odd rank class for an even field");
  }
}

EvenLocusSums even_locus_sums_brute(const Field& f, int a, int b, int c) {
  require_even(f);
  return {locus_sum(f, a, b, c, [](int x, int, int z, int det) { return det != 0 && x == 0 && z == 0; }),
          locus_sum(f, a, b, c, [](int x, int, int z, int det) { return det != 0 && (x != 0 || z != 0); })};
}

CheckReport verify_lemmas(const Field& f) {
  CheckReport rep;
  const int q = f.q();
  auto expect = [&](bool ok, const char* what, int a, int b, int c) {
    ++rep.checks;
    if (!ok) rep.fail(std::string(what) + " mismatch at (a,b,c) = " + triple(a, b, c));
  };
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c) {
        expect(cone_sum(f, a, b, c) == cone_sum_brute(f, a, b, c), "cone sum", a, b, c);
        if (f.is_even()) {
          expect(even_locus_sums(f, a, b, c) == even_locus_sums_brute(f, a, b, c), "even locus sums", a, b, c);
        } else {
          expect(square_locus_sum(f, a, b, c) == square_locus_sum_brute(f, a, b, c), "square locus sum", a, b, c);
          const std::int64_t ns = nonsquare_locus_sum(f, a, b, c);
          expect(ns == nonsquare_locus_sum_brute(f, a, b, c), "nonsquare locus sum", a, b, c);
          expect(ns == nonsquare_locus_sum_derived(f, a, b, c), "derived nonsquare locus sum", a, b, c);
        }
      }
  return rep;
}

CheckReport verify_counting_facts(const Field& f) {
  CheckReport rep;
  ++rep.checks;
  if (f.is_even()) {
    if (static_cast<int>(f.q_circle().size()) * 2 != f.q()) rep.fail("|F_q°| != q/2");
    if (f.in_q_circle(f.xi())) rep.fail("xi lies in F_q°");
  } else {
    if (count_norm_one_solutions(f) != f.q() + 1) rep.fail("y^2 - xi x^2 = 1 does not have q+1 solutions");
    if (f.square_class(f.xi()) != SquareClass::nonsquare) rep.fail("xi is a square");
  }
  return rep;
}

// ---------------------------------------------------------------------------

std::string TorusCharacter::label() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < index.size(); ++i) out << (i ? "," : "") << index[i];
  return out.str();
}

std::vector<TorusCharacter> torus_characters(const TorusStructure& torus, int e) {
  const QuadraticExtension& E = torus.extension();
  const Field& f = E.base();
  const Field& F = E.big();
  const int q = f.q();
  auto step = [&](int order) -> long long {
    if (e % order != 0) throw std::invalid_argument("conductor is not a multiple of the torus exponent");
    return e / order;
  };
  std::vector<TorusCharacter> out;
  const auto& elems = torus.elements();
  if (!f.is_even() && torus.kind() == TorusKind::split) {
    const long long s = step(q - 1);
    std::vector<std::array<int, 2>> logs;
    for (const auto& t : elems)
      logs.push_back({f.log(*E.restrict(torus.alpha_plus(t))), f.log(*E.restrict(torus.alpha_minus(t)))});
    for (int j1 = 0; j1 < q - 1; ++j1)
      for (int j2 = 0; j2 < q - 1; ++j2) {
        TorusCharacter chi{{j1, j2}, {}};
        for (const auto& l : logs) chi.exponent.push_back(mod((static_cast<long long>(j1) * l[0] + j2 * l[1]) * s, e));
        out.push_back(std::move(chi));
      }
  } else if (!f.is_even()) {
    const int order = q * q - 1;
    const long long s = step(order);
    for (int j = 0; j < order; ++j) {
      TorusCharacter chi{{j}, {}};
      for (const auto& t : elems) chi.exponent.push_back(mod(static_cast<long long>(j) * F.log(torus.alpha_plus(t)) * s, e));
      out.push_back(std::move(chi));
    }
  } else {
    // t = z t' with z = sqrt(mu(t)) central and t' in Sp(4,q).
    const bool split = torus.kind() == TorusKind::split;
    const int order = split ? q - 1 : q + 1;
    const int cofactor = split ? q + 1 : q - 1;
    const long long sz = step(q - 1), sj = step(order);
    std::vector<std::array<int, 2>> coords;
    for (const auto& t : elems) {
      const int det = f.sub(f.mul(t.matrix[0], t.matrix[5]), f.mul(t.matrix[1], t.matrix[4]));
      const int z = *f.sqrt(det);
      const int L = F.log(F.div(torus.alpha_plus(t), E.embed(z)));
      if (L % cofactor != 0) throw std::logic_error("Sp part of a torus element is not a power of gamma/eta");
      coords.push_back({f.log(z), L / cofactor});
    }
    for (int k = 0; k < q - 1; ++k)
      for (int j = 0; j < order; ++j) {
        TorusCharacter chi{{k, j}, {}};
        for (const auto& c : coords)
          chi.exponent.push_back(mod(static_cast<long long>(k) * c[0] * sz + static_cast<long long>(j) * c[1] * sj, e));
        out.push_back(std::move(chi));
      }
  }
  return out;
}

// ---------------------------------------------------------------------------

BesselEngine::BesselEngine(std::shared_ptr<const CharacterTable> table) : table_(std::move(table)) {
  const ClassData& cd = classes();
  const MatrixArith& ar = cd.arith();
  const Field& f = field();
  const int q = f.q();
  if (table_->conductor % f.p() != 0) throw std::invalid_argument("table conductor is not a multiple of p");
  for (std::size_t row = 0; row < table_->num_rows(); ++row) central_.push_back(central_character(*table_, row));
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      for (int z = 0; z < q; ++z) n_class_.push_back(cd.class_of(ar.siegel_unipotent(x, y, z)));
  const AuxiliarySubgroups aux = auxiliary_subgroups(ar);
  for (const Mat4& u : aux.unipotent) {
    u_class_.push_back(cd.class_of(u));
    u_coords_.push_back({u[1], u[6]});
  }
  for (const Mat4& k : aux.klingen_radical) klingen_class_.push_back(cd.class_of(k));
}

std::int64_t BesselEngine::average(const CyclotomicAccumulator& acc, std::int64_t denominator,
                                   const char* what) const {
  const Cyclotomic v = acc.value();
  const auto n = v.to_integer();
  if (!n) throw IntegralityError(std::string(what) + ": character sum is not rational");
  if (*n % denominator != 0) throw IntegralityError(std::string(what) + ": dimension is not an integer");
  if (*n < 0) throw IntegralityError(std::string(what) + ": dimension is negative");
  return *n / denominator;
}

std::int64_t BesselEngine::hom_dim_N(std::size_t row, int a, int b, int c, int psi_scale) const {
  const Field& f = field();
  const int q = f.q(), e = conductor();
  const long long pstep = e / f.p();
  CyclotomicAccumulator acc(e);
  std::size_t i = 0;
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      for (int z = 0; z < q; ++z, ++i)
        acc.add_scaled(table_->value(row, n_class_[i]), f.trace(f.mul(psi_scale, neg_form(f, a, b, c, x, y, z))) * pstep, 1);
  return average(acc, static_cast<std::int64_t>(q) * q * q, "Hom_N");
}

std::int64_t BesselEngine::hom_dim_N_four_class(std::size_t row, int a, int b, int c) const {
  return hom_dim_N_four_class(row, a, b, c, field());
}

std::int64_t BesselEngine::hom_dim_N_four_class(std::size_t row, int a, int b, int c, const Field& alt) const {
  const Field& f = field();
  if (alt.p() != f.p() || alt.n() != f.n() || alt.modulus() != f.modulus())
    throw std::invalid_argument("alternative field must share the element enumeration");
  const int q = f.q();
  const MatrixArith& ar = classes().arith();
  std::array<std::pair<Orbit2x2, std::int64_t>, 3> terms;
  if (f.is_even()) {
    const EvenLocusSums s = even_locus_sums(f, a, b, c);
    terms = {{{Orbit2x2::rank1, cone_sum(f, a, b, c)},
              {Orbit2x2::det_nonzero_diag, s.diagonal},
              {Orbit2x2::det_nonzero_mixed, s.mixed}}};
  } else {
    terms = {{{Orbit2x2::rank1, cone_sum(f, a, b, c)},
              {Orbit2x2::det_square, square_locus_sum(f, a, b, c)},
              {Orbit2x2::det_nonsquare, nonsquare_locus_sum(f, a, b, c)}}};
  }
  CyclotomicAccumulator acc(conductor());
  acc.add_scaled(table_->value(row, classes().identity_class()), 0, 1);
  for (const auto& [orbit, weight] : terms) {
    const auto [x, y, z] = orbit_representative(alt, orbit);
    acc.add_scaled(table_->value(row, classes().class_of(ar.siegel_unipotent(x, y, z))), 0, weight);
  }
  return average(acc, static_cast<std::int64_t>(q) * q * q, "Hom_N (four classes)");
}

DatumContext BesselEngine::context(const BesselDatum& d, int psi_scale) const {
  const Field& f = field();
  const MatrixArith& ar = classes().arith();
  const int q = f.q();
  DatumContext ctx{d, subgroup_T(ar, d), {}, {}, {}};
  ctx.characters = torus_characters(ctx.torus, conductor());
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      for (int z = 0; z < q; ++z) ctx.form_trace.push_back(f.trace(f.mul(psi_scale, neg_form(f, d.a, d.b, d.c, x, y, z))));
  const auto R = subgroup_R(ar, ctx.torus);
  ctx.r_class.resize(R.size());
  parallel_for(R.size(), [&](std::size_t i) { ctx.r_class[i] = classes().class_of(R[i].matrix); });
  return ctx;
}

std::vector<Cyclotomic> BesselEngine::torus_profile(const DatumContext& ctx, std::size_t row) const {
  const std::size_t nq = ctx.form_trace.size();
  const long long pstep = conductor() / field().p();
  std::vector<Cyclotomic> out;
  out.reserve(ctx.torus.size());
  for (std::size_t t = 0; t < ctx.torus.size(); ++t) {
    CyclotomicAccumulator acc(conductor());
    for (std::size_t i = 0; i < nq; ++i) acc.add_scaled(table_->value(row, ctx.r_class[t * nq + i]), ctx.form_trace[i] * pstep, 1);
    out.push_back(acc.value());
  }
  return out;
}

bool BesselEngine::central_match(const DatumContext& ctx, std::size_t row, const TorusCharacter& chi) const {
  const Field& f = field();
  const CentralCharacter& omega = central_[row];
  const long long step = conductor() / omega.order;
  for (std::size_t t : ctx.torus.center()) {
    const int r = ctx.torus.elements()[t].r;
    if (mod(static_cast<long long>(omega.index) * f.log(r) * step, conductor()) != chi.exponent[t]) return false;
  }
  return true;
}

std::int64_t BesselEngine::hom_dim_R(const DatumContext& ctx, std::size_t row, const TorusCharacter& chi) const {
  return hom_dim_R(ctx, torus_profile(ctx, row), chi);
}

std::int64_t BesselEngine::hom_dim_R(const DatumContext& ctx, const std::vector<Cyclotomic>& profile,
                                     const TorusCharacter& chi) const {
  CyclotomicAccumulator acc(conductor());
  for (std::size_t t = 0; t < profile.size(); ++t) acc.add_scaled(profile[t], -chi.exponent[t], 1);
  return average(acc, static_cast<std::int64_t>(ctx.torus.size() * ctx.form_trace.size()), "Hom_R");
}

S1S2 BesselEngine::s1_s2_decomposition(const DatumContext& ctx, const std::vector<Cyclotomic>& profile,
                                       const TorusCharacter& chi) const {
  CyclotomicAccumulator central(conductor()), rest(conductor());
  std::vector<bool> is_central(profile.size(), false);
  for (std::size_t t : ctx.torus.center()) is_central[t] = true;
  for (std::size_t t = 0; t < profile.size(); ++t)
    (is_central[t] ? central : rest).add_scaled(profile[t], -chi.exponent[t], 1);
  const auto denominator = static_cast<std::int64_t>(ctx.torus.size() * ctx.form_trace.size());
  const auto s1 = central.value().to_integer();
  const auto s2 = rest.value().to_integer();
  if (!s1 || !s2) throw IntegralityError("S1 or S2 is not rational");
  return {Rational(*s1, denominator), Rational(*s2, denominator)};
}

std::int64_t BesselEngine::whittaker_dim(std::size_t row, int l1, int l2) const {
  const Field& f = field();
  const long long pstep = conductor() / f.p();
  CyclotomicAccumulator acc(conductor());
  for (std::size_t i = 0; i < u_class_.size(); ++i) {
    const int v = f.neg(f.add(f.mul(l1, u_coords_[i][0]), f.mul(l2, u_coords_[i][1])));
    acc.add_scaled(table_->value(row, u_class_[i]), f.trace(v) * pstep, 1);
  }
  return average(acc, static_cast<std::int64_t>(u_class_.size()), "Whittaker");
}

std::int64_t BesselEngine::klingen_invariants(std::size_t row) const {
  CyclotomicAccumulator acc(conductor());
  for (std::size_t k : klingen_class_) acc.add_scaled(table_->value(row, k), 0, 1);
  return average(acc, static_cast<std::int64_t>(klingen_class_.size()), "Klingen invariants");
}

bool BesselEngine::generic(std::size_t row) const {
  const std::int64_t w = whittaker_dim(row);
  if (w > 1) throw std::logic_error("Whittaker multiplicity exceeds one");
  return w == 1;
}

bool BesselEngine::cuspidal(std::size_t row) const {
  return hom_dim_N(row, 0, 0, 0) == 0 && klingen_invariants(row) == 0;
}

HomDimReportN BesselEngine::report_N() const {
  const Field& f = field();
  std::array<std::optional<BesselDatum>, 4> reps;
  for (const BesselDatum& d : all_data(f)) {
    auto& slot = reps[column_index(d.rank_class)];
    if (!slot) slot = d;
  }
  HomDimReportN rep;
  rep.q = f.q();
  rep.rows.resize(table_->num_rows());
  parallel_for(table_->num_rows(), [&](std::size_t row) {
    HomNRow& r = rep.rows[row];
    r.row = row;
    r.degree = table_->degrees[row];
    for (int col = 0; col < 4; ++col) r.dims[col] = hom_dim_N(row, reps[col]->a, reps[col]->b, reps[col]->c);
    r.generic = generic(row);
    r.cuspidal = cuspidal(row);
  });
  return rep;
}

HomDimReportR BesselEngine::report_R(const BesselDatum& d) const {
  const DatumContext ctx = context(d);
  HomDimReportR rep;
  rep.q = field().q();
  rep.datum = d;
  rep.kind = ctx.torus.kind();
  std::vector<std::vector<HomRRecord>> per_row(table_->num_rows());
  parallel_for(table_->num_rows(), [&](std::size_t row) {
    const auto profile = torus_profile(ctx, row);
    for (std::size_t c = 0; c < ctx.characters.size(); ++c) {
      const TorusCharacter& chi = ctx.characters[c];
      HomRRecord r;
      r.row = row;
      r.degree = table_->degrees[row];
      r.chi = c;
      r.chi_index = chi.index;
      r.central_match = central_match(ctx, row, chi);
      r.dim = hom_dim_R(ctx, profile, chi);
      const S1S2 s = s1_s2_decomposition(ctx, profile, chi);
      r.s1 = s.s1;
      r.s2 = s.s2;
      per_row[row].push_back(std::move(r));
    }
  });
  for (auto& v : per_row)
    for (auto& r : v) rep.records.push_back(std::move(r));
  return rep;
}

// ---------------------------------------------------------------------------

namespace {


std::vector<SymbolicRowN> make_odd_rows() {
  return {
      {"X1", +[](std::int64_t q) { return (q + 1) * (q + 1) * (q * q + 1); },
       {+[](std::int64_t q) { return 4 * (q + 1); }, +[](std::int64_t q) { return q + 3; },
        +[](std::int64_t q) { return q + 3; }, +[](std::int64_t q) { return q + 1; }},
       false, true},
      {"X2", +[](std::int64_t q) { return q * q * q * q - 1; },
       {+[](std::int64_t q) { return 2 * (q - 1); }, +[](std::int64_t q) { return q - 1; },
        +[](std::int64_t q) { return q + 1; }, +[](std::int64_t q) { return q - 1; }},
       false, true},
      {"X3", +[](std::int64_t q) { return q * q * q * q - 1; },
       {+[](std::int64_t) -> std::int64_t { return 0; }, +[](std::int64_t q) { return q + 1; },
        +[](std::int64_t q) { return q - 1; }, +[](std::int64_t q) { return q + 1; }},
       false, true},
      {"X4", +[](std::int64_t q) { return (q * q - 1) * (q * q - 1); },
       {+[](std::int64_t) -> std::int64_t { return 0; }, +[](std::int64_t q) { return q - 1; },
        +[](std::int64_t q) { return q - 1; }, +[](std::int64_t q) { return q + 1; }},
       true, true},
      {"X5", +[](std::int64_t q) { return (q - 1) * (q - 1) * (q * q + 1); },
       {+[](std::int64_t) -> std::int64_t { return 0; }, +[](std::int64_t q) { return q - 1; },
        +[](std::int64_t q) { return q - 1; }, +[](std::int64_t q) { return q - 3; }},
       true, true},
      {"chi1", +[](std::int64_t q) { return (q + 1) * (q * q + 1); },
       {+[](std::int64_t q) { return 2 * (q + 1); }, +[](std::int64_t) -> std::int64_t { return 1; },
        +[](std::int64_t) -> std::int64_t { return 2; }, +[](std::int64_t) -> std::int64_t { return 0; }},
       false, false},
      {"chi2", +[](std::int64_t q) { return q * (q + 1) * (q * q + 1); },
       {+[](std::int64_t q) { return 2 * (q + 1); }, +[](std::int64_t q) { return q + 2; },
        +[](std::int64_t q) { return q + 1; }, +[](std::int64_t q) { return q + 1; }},
       false, true},
      {"chi3", +[](std::int64_t q) { return (q + 1) * (q * q + 1); },
       {+[](std::int64_t q) { return q + 3; }, +[](std::int64_t) -> std::int64_t { return 2; },
        +[](std::int64_t) -> std::int64_t { return 1; }, +[](std::int64_t) -> std::int64_t { return 1; }},
       false, false},
      {"chi4", +[](std::int64_t q) { return q * (q + 1) * (q * q + 1); },
       {+[](std::int64_t q) { return 3 * q + 1; }, +[](std::int64_t q) { return q + 1; },
        +[](std::int64_t q) { return q + 2; }, +[](std::int64_t q) { return q; }},
       false, true},
      {"chi5", +[](std::int64_t q) { return (q - 1) * (q * q + 1); },
       {+[](std::int64_t q) { return q - 1; }, +[](std::int64_t) -> std::int64_t { return 0; },
        +[](std::int64_t) -> std::int64_t { return 1; }, +[](std::int64_t) -> std::int64_t { return 1; }},
       false, false},
      {"chi6", +[](std::int64_t q) { return q * (q - 1) * (q * q + 1); },
       {+[](std::int64_t q) { return q - 1; }, +[](std::int64_t q) { return q - 1; },
        +[](std::int64_t q) { return q; }, +[](std::int64_t q) { return q - 2; }},
       false, true},
      {"chi7", +[](std::int64_t q) { return (q - 1) * (q * q + 1); },
       {+[](std::int64_t) -> std::int64_t { return 0; }, +[](std::int64_t) -> std::int64_t { return 1; },
        +[](std::int64_t) -> std::int64_t { return 0; }, +[](std::int64_t) -> std::int64_t { return 2; }},
       false, false},
      {"chi8", +[](std::int64_t q) { return q * (q - 1) * (q * q + 1); },
       {+[](std::int64_t) -> std::int64_t { return 0; }, +[](std::int64_t q) { return q; },
        +[](std::int64_t q) { return q - 1; }, +[](std::int64_t q) { return q - 1; }},
       false, true},
      {"tau1", +[](std::int64_t q) { return q * q + 1; },
       {+[](std::int64_t) -> std::int64_t { return 2; }, +[](std::int64_t) -> std::int64_t { return 1; },
        +[](std::int64_t) -> std::int64_t { return 0; }, +[](std::int64_t) -> std::int64_t { return 0; }},
       false, false},
      {"tau2", +[](std::int64_t q) { return q * (q * q + 1); },
       {+[](std::int64_t q) { return q + 1; }, +[](std::int64_t) -> std::int64_t { return 1; },
        +[](std::int64_t) -> std::int64_t { return 1; }, +[](std::int64_t) -> std::int64_t { return 1; }},
       false, false},
      {"tau3", +[](std::int64_t q) { return q * q * (q * q + 1); },
       {+[](std::int64_t q) { return 2 * q; }, +[](std::int64_t q) { return q; },
        +[](std::int64_t q) { return q + 1; }, +[](std::int64_t q) { return q - 1; }},
       false, true},
      {"tau4", +[](std::int64_t q) { return q * q - 1; },
       {+[](std::int64_t) -> std::int64_t { return 0; }, +[](std::int64_t) -> std::int64_t { return 1; },
        +[](std::int64_t) -> std::int64_t { return 0; }, +[](std::int64_t) -> std::int64_t { return 0; }},
       false, false},
      {"tau5", +[](std::int64_t q) { return q * q * (q * q - 1); },
       {+[](std::int64_t) -> std::int64_t { return 0; }, +[](std::int64_t q) { return q; },
        +[](std::int64_t q) { return q - 1; }, +[](std::int64_t q) { return q + 1; }},
       false, true},
      {"theta1", +[](std::int64_t q) { return q * (q + 1) * (q + 1) / 2; },
       {+[](std::int64_t q) { return q + 1; }, +[](std::int64_t) -> std::int64_t { return 1; },
        +[](std::int64_t) -> std::int64_t { return 1; }, +[](std::int64_t) -> std::int64_t { return 0; }},
       false, false},
      {"theta2", +[](std::int64_t q) { return q * (q - 1) * (q - 1) / 2; },
       {+[](std::int64_t) -> std::int64_t { return 0; }, +[](std::int64_t) -> std::int64_t { return 0; },
        +[](std::int64_t) -> std::int64_t { return 0; }, +[](std::int64_t) -> std::int64_t { return 1; }},
       true, false},
      {"theta3", +[](std::int64_t q) { return q * (q * q + 1) / 2; },
       {+[](std::int64_t) -> std::int64_t { return 1; }, +[](std::int64_t) -> std::int64_t { return 1; },
        +[](std::int64_t) -> std::int64_t { return 0; }, +[](std::int64_t) -> std::int64_t { return 1; }},
       false, false},
      {"theta4", +[](std::int64_t q) { return q * (q * q + 1) / 2; },
       {+[](std::int64_t q) { return q; }, +[](std::int64_t) -> std::int64_t { return 0; },
        +[](std::int64_t) -> std::int64_t { return 1; }, +[](std::int64_t) -> std::int64_t { return 0; }},
       false, false},
      {"theta5", +[](std::int64_t q) { return q * q * q * q; },
       {+[](std::int64_t q) { return q; }, +[](std::int64_t q) { return q; }, +[](std::int64_t q) { return q; },
        +[](std::int64_t q) { return q; }},
       false, true},
      {"theta0", +[](std::int64_t) -> std::int64_t { return 1; },
       {+[](std::int64_t) -> std::int64_t { return 1; }, +[](std::int64_t) -> std::int64_t { return 0; },
        +[](std::int64_t) -> std::int64_t { return 0; }, +[](std::int64_t) -> std::int64_t { return 0; }},
       false, false},
  };
}

std::vector<SymbolicRowN> make_even_rows() {
  const auto odd = make_odd_rows();
  auto find = [&](const char* name) {
    for (const auto& r : odd)
      if (std::string(r.name) == name) return r;
    throw std::logic_error("missing row");
  };
  // The even table lists the same (degree, dims, flags) patterns under
  // Enomoto's names; the correspondence is read off row by row.
  const std::pair<const char*, const char*> names[] = {
      {"theta0", "theta0"}, {"theta1", "theta1"}, {"theta2", "theta3"}, {"theta3", "theta4"},
      {"theta4", "theta5"}, {"theta5", "theta2"}, {"chi1", "X1"},       {"chi2", "X2"},
      {"chi3", "X3"},       {"chi4", "X5"},       {"chi5", "X4"},       {"chi6", "chi3"},
      {"chi7", "chi1"},     {"chi8", "chi5"},     {"chi9", "chi7"},     {"chi10", "chi4"},
      {"chi11", "chi2"},    {"chi12", "chi6"},    {"chi13", "chi8"},
  };
  std::vector<SymbolicRowN> out;
  for (const auto& [even_name, odd_name] : names) {
    SymbolicRowN r = find(odd_name);
    r.name = even_name;
    out.push_back(r);
  }
  return out;
}

}  // namespace

const std::vector<SymbolicRowN>& table_N_rows(bool even) {
  static const std::vector<SymbolicRowN> odd_rows = make_odd_rows();
  static const std::vector<SymbolicRowN> even_rows = make_even_rows();
  return even ? even_rows : odd_rows;
}

const std::vector<SymbolicRowR>& table_R_theta_rows() {
  static const std::vector<SymbolicRowR> rows = {
      {"theta0", {0, 0}, {0, 0}}, {"theta1", {0, 1}, {0, 0}}, {"theta2", {0, 0}, {0, 1}},
      {"theta3", {0, 1}, {0, 0}}, {"theta4", {1, 2}, {1, 0}}, {"theta5", {0, 0}, {0, 1}},
  };
  return rows;
}

// ---------------------------------------------------------------------------

TableNVerification verify_table_N(const BesselEngine& engine) {
  TableNVerification out;
  CheckReport& rep = out.check;
  const Field& f = engine.field();
  const CharacterTable& ct = engine.table();
  const int q = f.q();
  out.report = engine.report_N();
  const std::size_t rows = ct.num_rows();

  std::vector<std::string> errors(rows);
  std::vector<std::size_t> counts(rows, 0);
  parallel_for(rows, [&](std::size_t row) {
    auto fail = [&](const std::string& msg) {
      if (errors[row].empty()) errors[row] = "row " + std::to_string(row) + ": " + msg;
    };
    const HomNRow& r = out.report.rows[row];
    for (const BesselDatum& d : all_data(f)) {
      const std::int64_t raw = engine.hom_dim_N(row, d.a, d.b, d.c);
      ++counts[row];
      if (raw != r.dims[column_index(d.rank_class)]) fail("Hom_N not constant on rank class at " + triple(d.a, d.b, d.c));
      if (engine.hom_dim_N_four_class(row, d.a, d.b, d.c) != raw) fail("four-class path disagrees at " + triple(d.a, d.b, d.c));
      for (int lambda = 2; lambda < q; ++lambda)
        if (engine.hom_dim_N(row, d.a, d.b, d.c, lambda) != raw)
          fail("Hom_N depends on the psi scale at " + triple(d.a, d.b, d.c));
    }
    const std::int64_t w = engine.whittaker_dim(row);
    for (int l1 = 1; l1 < q; ++l1)
      for (int l2 = 1; l2 < q; ++l2)
        if (engine.whittaker_dim(row, l1, l2) != w) fail("Whittaker dimension depends on the character");
  });
  for (std::size_t row = 0; row < rows; ++row) {
    rep.checks += counts[row];
    if (!errors[row].empty()) rep.fail(errors[row]);
  }

  // Frobenius reciprocity for Ind_N^G psi_{a,b,c}.
  const auto order = static_cast<std::int64_t>(engine.classes().group_order());
  for (int col = 0; col < 4; ++col) {
    std::int64_t total = 0;
    for (const HomNRow& r : out.report.rows) total += r.degree * r.dims[col];
    ++rep.checks;
    if (total != order / (static_cast<std::int64_t>(q) * q * q))
      rep.fail("sum of degree * Hom_N differs from |G|/q^3 in column " + std::to_string(col));
  }

  // The trivial character.
  for (std::size_t row = 0; row < rows; ++row) {
    bool trivial = true;
    for (std::size_t k = 0; k < ct.classes->num_classes() && trivial; ++k)
      trivial = ct.value(row, k) == Cyclotomic::integer(1);
    if (!trivial) continue;
    ++rep.checks;
    const HomNRow& r = out.report.rows[row];
    if (r.generic || r.cuspidal || r.dims != std::array<std::int64_t, 4>{1, 0, 0, 0})
      rep.fail("trivial character has unexpected Hom_N data");
  }

  const auto& symbolic = table_N_rows(f.is_even());
  for (const HomNRow& r : out.report.rows) {
    RowMatch m{r.row, {}};
    for (const SymbolicRowN& s : symbolic) {
      if (s.degree(q) != r.degree || s.generic != r.generic || s.cuspidal != r.cuspidal) continue;
      bool same = true;
      for (int col = 0; col < 4; ++col) same = same && s.dims[col](q) == r.dims[col];
      if (same) m.candidates.push_back(s.name);
    }
    ++rep.checks;
    if (m.candidates.empty()) {
      std::ostringstream msg;
      msg << "row " << r.row << " (degree " << r.degree << ", dims " << r.dims[0] << "," << r.dims[1] << ","
          << r.dims[2] << "," << r.dims[3] << ", gen " << r.generic << ", cusp " << r.cuspidal
          << ") matches no table row";
      rep.fail(msg.str());
    }
    out.matches.push_back(std::move(m));
  }
  return out;
}

namespace {

struct DatumRecords {
  DatumContext ctx;
  std::vector<std::vector<std::int64_t>> dims;  // [row][chi]
  std::vector<std::vector<bool>> central;       // [row][chi]
  std::vector<std::vector<S1S2>> s;             // [row][chi]
};

DatumRecords evaluate_datum(const BesselEngine& engine, const BesselDatum& d) {
  DatumRecords out{engine.context(d), {}, {}, {}};
  const std::size_t rows = engine.table().num_rows();
  out.dims.resize(rows);
  out.central.resize(rows);
  out.s.resize(rows);
  parallel_for(rows, [&](std::size_t row) {
    const auto profile = engine.torus_profile(out.ctx, row);
    for (const TorusCharacter& chi : out.ctx.characters) {
      out.dims[row].push_back(engine.hom_dim_R(out.ctx, profile, chi));
      out.central[row].push_back(engine.central_match(out.ctx, row, chi));
      out.s[row].push_back(engine.s1_s2_decomposition(out.ctx, profile, chi));
    }
  });
  return out;
}

std::string record_label(const BesselDatum& d, std::size_t row, const TorusCharacter& chi) {
  return "datum " + triple(d.a, d.b, d.c) + ", row " + std::to_string(row) + ", chi (" + chi.label() + ")";
}

}  // namespace

TableRVerification verify_table_R(const BesselEngine& engine, const TableNVerification& table_n) {
  TableRVerification out;
  CheckReport& rep = out.check;
  const Field& f = engine.field();
  const CharacterTable& ct = engine.table();
  const std::int64_t q = f.q();
  const auto order = static_cast<std::int64_t>(engine.classes().group_order());
  const auto& theta_rows = table_R_theta_rows();

  for (const BesselDatum& d : nondegenerate_data(f)) {
    const DatumRecords rec = evaluate_datum(engine, d);
    const auto& chars = rec.ctx.characters;
    const auto tsize = static_cast<std::int64_t>(rec.ctx.torus.size());
    const bool split = rec.ctx.torus.kind() == TorusKind::split;
    ++out.data;
    for (std::size_t row = 0; row < ct.num_rows(); ++row) {
      const std::int64_t homn = table_n.report.rows[row].dims[column_index(d.rank_class)];
      std::int64_t total = 0;
      for (std::size_t c = 0; c < chars.size(); ++c) {
        const std::int64_t dim = rec.dims[row][c];
        const S1S2& s = rec.s[row][c];
        ++out.records;
        rep.checks += 3;
        total += dim;
        if (!rec.central[row][c] && dim != 0) rep.fail("nonzero Hom_R with chi|_Z != omega: " + record_label(d, row, chars[c]));
        if (s.s1 + s.s2 != Rational(dim)) rep.fail("S1 + S2 differs from Hom_R: " + record_label(d, row, chars[c]));
        const Rational expected_s1 = rec.central[row][c] ? Rational(homn * (q - 1), tsize) : Rational(0);
        if (s.s1 != expected_s1) rep.fail("S1 differs from (q-1)/|T| Hom_N: " + record_label(d, row, chars[c]));
      }
      ++rep.checks;
      if (total != homn) rep.fail("sum over chi differs from Hom_N: datum " + triple(d.a, d.b, d.c) + ", row " + std::to_string(row));
    }
    for (std::size_t c = 0; c < chars.size(); ++c) {
      std::int64_t total = 0;
      for (std::size_t row = 0; row < ct.num_rows(); ++row) total += ct.degrees[row] * rec.dims[row][c];
      ++rep.checks;
      if (total != order / (tsize * q * q * q))
        rep.fail("sum of degree * Hom_R differs from |G|/|R|: datum " + triple(d.a, d.b, d.c) + ", chi (" + chars[c].label() + ")");
    }
    if (!f.is_even()) continue;
    // Parameter-free rows of the even table, checked literally.
    for (std::size_t row = 0; row < ct.num_rows(); ++row) {
      const auto& cands = table_n.matches[row].candidates;
      if (cands.empty()) continue;
      const SymbolicRowR* expect = nullptr;
      bool unique = true;
      for (const auto& name : cands) {
        const SymbolicRowR* hit = nullptr;
        for (const auto& t : theta_rows)
          if (name == t.name) hit = &t;
        if (!hit || (expect && (std::vector<std::int64_t>{expect->split[0], expect->split[1], expect->nonsplit[0],
                                                          expect->nonsplit[1]} !=
                                std::vector<std::int64_t>{hit->split[0], hit->split[1], hit->nonsplit[0], hit->nonsplit[1]})))
          unique = false;
        expect = hit;
      }
      if (!unique || !expect) continue;
      for (std::size_t c = 0; c < chars.size(); ++c) {
        if (!rec.central[row][c]) continue;
        const bool j0 = chars[c].index[1] == 0;
        const std::int64_t want = split ? expect->split[j0] : expect->nonsplit[j0];
        ++rep.checks;
        ++out.theta_rows_checked;
        if (rec.dims[row][c] != want)
          rep.fail(std::string("even table row ") + expect->name + " disagrees: " + record_label(d, row, chars[c]));
      }
    }
  }
  return out;
}

TableRVerification verify_corollary(const BesselEngine& engine) {
  TableRVerification out;
  CheckReport& rep = out.check;
  const Field& f = engine.field();
  const CharacterTable& ct = engine.table();
  std::vector<bool> generic(ct.num_rows());
  for (std::size_t row = 0; row < ct.num_rows(); ++row) generic[row] = engine.generic(row);
  for (const BesselDatum& d : nondegenerate_data(f)) {
    const DatumRecords rec = evaluate_datum(engine, d);
    const bool split = rec.ctx.torus.kind() == TorusKind::split;
    ++out.data;
    for (std::size_t row = 0; row < ct.num_rows(); ++row) {
      std::size_t ones = 0;
      for (std::size_t c = 0; c < rec.ctx.characters.size(); ++c) {
        if (!rec.central[row][c]) continue;
        const std::int64_t dim = rec.dims[row][c];
        const std::string where = record_label(d, row, rec.ctx.characters[c]);
        ++out.records;
        ++rep.checks;
        if (split && generic[row]) {
          if (dim < 1 || dim > 2) rep.fail("generic split dimension outside [1,2]: " + where);
        } else if (dim > 1) {
          rep.fail("dimension exceeds 1: " + where);
        }
        if (split && dim == 2) ++out.dim_two_records;
        if (dim == 1) ++ones;
      }
      if (generic[row]) continue;
      ++rep.checks;
      if (ones > 2) rep.fail("nongeneric row has more than two chi of dimension 1: datum " + triple(d.a, d.b, d.c) + ", row " + std::to_string(row));
      if (ones == 2) ++out.two_chi_rows;
    }
  }
  return out;
}

GenericityEquivalence check_genericity_equivalence(const BesselEngine& engine) {
  GenericityEquivalence out;
  const CharacterTable& ct = engine.table();
  out.rows = ct.num_rows();
  std::vector<bool> admits_all(ct.num_rows(), true);
  for (const BesselDatum& d : nondegenerate_data(engine.field())) {
    if (!d.split) continue;
    const DatumRecords rec = evaluate_datum(engine, d);
    for (std::size_t row = 0; row < ct.num_rows(); ++row)
      for (std::size_t c = 0; c < rec.ctx.characters.size(); ++c)
        if (rec.central[row][c] && rec.dims[row][c] == 0) admits_all[row] = false;
  }
  for (std::size_t row = 0; row < ct.num_rows(); ++row)
    if (engine.generic(row) != admits_all[row]) {
      out.holds = false;
      if (out.failure.empty())
        out.failure = "row " + std::to_string(row) + (admits_all[row] ? " is nongeneric but admits every split model"
                                                                        : " is generic but misses a split model");
    }
  return out;
}

}  // namespace gsp4
