#include "gsp4/group.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_set>

namespace gsp4 {

namespace {

int bits_for(int q) {
  int b = 0;
  while ((1 << b) < q) ++b;
  return std::max(b, 1);
}

/// F_p-basis of F_q as element indices: 1, X, X^2, ...
std::vector<int> prime_basis(const Field& f) {
  std::vector<int> out;
  for (int i = 0, v = 1; i < f.n(); ++i, v *= f.p()) out.push_back(v);
  return out;
}

}  // namespace

MatrixArith::MatrixArith(const Field& f) : field_(&f), bits_(bits_for(f.q())) {
  if (16 * bits_ > 64) throw FieldError("field too large for packed 4x4 matrices");
}

Mat4 MatrixArith::scalar(int r) const {
  Mat4 m{};
  for (int i = 0; i < 4; ++i) m[5 * i] = static_cast<std::uint8_t>(r);
  return m;
}

Mat4 MatrixArith::form_J() const {
  const Field& f = *field_;
  Mat4 m{};
  m[0 * 4 + 3] = 1;
  m[1 * 4 + 2] = 1;
  m[2 * 4 + 1] = static_cast<std::uint8_t>(f.neg(1));
  m[3 * 4 + 0] = static_cast<std::uint8_t>(f.neg(1));
  return m;
}

Mat4 MatrixArith::mul(const Mat4& x, const Mat4& y) const {
  const Field& f = *field_;
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      int acc = 0;
      for (int k = 0; k < 4; ++k) {
        const int a = x[4 * i + k], b = y[4 * k + j];
        if (a && b) acc = f.add(acc, f.mul(a, b));
      }
      out[4 * i + j] = static_cast<std::uint8_t>(acc);
    }
  return out;
}

Mat4 MatrixArith::scale(int r, const Mat4& x) const {
  Mat4 out;
  for (int i = 0; i < 16; ++i) out[i] = static_cast<std::uint8_t>(field_->mul(r, x[i]));
  return out;
}

Mat4 MatrixArith::transpose(const Mat4& x) const {
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[4 * i + j] = x[4 * j + i];
  return out;
}

std::optional<int> MatrixArith::multiplier(const Mat4& m) const {
  const Mat4 J = form_J();
  const Mat4 lhs = mul(mul(transpose(m), J), m);
  const int mu = lhs[3];  // J has 1 in position (0,3)
  if (mu == 0) return std::nullopt;
  if (lhs != scale(mu, J)) return std::nullopt;
  return mu;
}

Mat4 MatrixArith::inverse(const Mat4& g) const {
  const auto mu = multiplier(g);
  if (!mu) throw std::invalid_argument("inverse: matrix is not in GSp(4,q)");
  const Mat4 J = form_J();
  const Mat4 Jinv = scale(field_->neg(1), J);
  return scale(field_->inv(*mu), mul(mul(Jinv, transpose(g)), J));
}

Mat4 MatrixArith::power(const Mat4& g, long long e) const {
  Mat4 base = e < 0 ? inverse(g) : g;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  Mat4 acc = identity();
  while (k) {
    if (k & 1) acc = mul(acc, base);
    base = mul(base, base);
    k >>= 1;
  }
  return acc;
}

int MatrixArith::order(const Mat4& g) const {
  const Mat4 id = identity();
  Mat4 x = g;
  int k = 1;
  while (x != id) {
    x = mul(x, g);
    ++k;
    if (k > 1 << 20) throw std::runtime_error("element order computation did not terminate");
  }
  return k;
}

Mat4 MatrixArith::levi(int a, int b, int c, int d, int u) const {
  const Field& f = *field_;
  const int det = f.sub(f.mul(a, d), f.mul(b, c));
  if (det == 0) throw std::invalid_argument("levi: singular block");
  const int s = f.mul(u, f.inv(det));
  Mat4 m{};
  m[0] = static_cast<std::uint8_t>(a);
  m[1] = static_cast<std::uint8_t>(b);
  m[4] = static_cast<std::uint8_t>(c);
  m[5] = static_cast<std::uint8_t>(d);
  m[10] = static_cast<std::uint8_t>(f.mul(s, a));
  m[11] = static_cast<std::uint8_t>(f.mul(s, f.neg(b)));
  m[14] = static_cast<std::uint8_t>(f.mul(s, f.neg(c)));
  m[15] = static_cast<std::uint8_t>(f.mul(s, d));
  return m;
}

Mat4 MatrixArith::siegel_unipotent(int x, int y, int z) const {
  Mat4 m = identity();
  m[0 * 4 + 2] = static_cast<std::uint8_t>(y);
  m[0 * 4 + 3] = static_cast<std::uint8_t>(z);
  m[1 * 4 + 2] = static_cast<std::uint8_t>(x);
  m[1 * 4 + 3] = static_cast<std::uint8_t>(y);
  return m;
}

std::uint64_t MatrixArith::pack(const Mat4& m) const {
  std::uint64_t v = 0;
  for (int i = 0; i < 16; ++i) v = (v << bits_) | m[i];
  return v;
}

Mat4 MatrixArith::unpack(std::uint64_t v) const {
  Mat4 m;
  const std::uint64_t mask = (std::uint64_t{1} << bits_) - 1;
  for (int i = 15; i >= 0; --i) {
    m[i] = static_cast<std::uint8_t>(v & mask);
    v >>= bits_;
  }
  return m;
}

GroupElement::GroupElement(const MatrixArith& arith, const Mat4& m) : entries_(m) {
  const auto mu = arith.multiplier(m);
  if (!mu) throw std::invalid_argument("matrix is not in GSp(4,q)");
  multiplier_ = *mu;
  packed_ = arith.pack(m);
}

std::uint64_t group_order(int q, GroupKind kind) {
  const std::uint64_t Q = static_cast<std::uint64_t>(q);
  const std::uint64_t sp = Q * Q * Q * Q * (Q * Q - 1) * (Q * Q * Q * Q - 1);
  return kind == GroupKind::sp ? sp : sp * (Q - 1);
}

std::size_t estimated_enumeration_bytes(int q, GroupKind kind) {
  // hash-set node and bucket during generation, sorted array, class index
  return static_cast<std::size_t>(group_order(q, kind)) * 64;
}

std::vector<Mat4> group_generators(const MatrixArith& arith, GroupKind kind) {
  const Field& f = arith.field();
  const int g = f.generator();
  std::vector<Mat4> gens;
  gens.push_back(arith.levi(g, 0, 0, 1, 1));
  gens.push_back(arith.levi(0, 1, 1, 0, 1));
  for (int beta : prime_basis(f)) gens.push_back(arith.levi(1, beta, 0, 1, 1));
  for (int beta : prime_basis(f)) gens.push_back(arith.siegel_unipotent(beta, 0, 0));
  gens.push_back(arith.form_J());
  if (kind == GroupKind::gsp && f.q() > 2) gens.push_back(arith.levi(1, 0, 0, 1, g));
  return gens;
}

GroupEnumeration::GroupEnumeration(std::shared_ptr<const Field> f, GroupKind kind)
    : field_(std::move(f)), arith_(*field_), kind_(kind) {}

std::shared_ptr<const GroupEnumeration> GroupEnumeration::build(std::shared_ptr<const Field> f, GroupKind kind,
                                                                const EnumerationOptions& opts) {
  const int q = f->q();
  const std::size_t need = estimated_enumeration_bytes(q, kind);
  if (need > opts.mem_budget_bytes)
    throw BudgetExceeded("enumerating " + std::string(kind == GroupKind::sp ? "Sp" : "GSp") + "(4," +
                         std::to_string(q) + ") needs about " + std::to_string(need >> 20) +
                         " MiB, over the memory budget of " + std::to_string(opts.mem_budget_bytes >> 20) + " MiB");

  std::shared_ptr<GroupEnumeration> out(new GroupEnumeration(std::move(f), kind));
  const MatrixArith& ar = out->arith_;
  out->generators_ = group_generators(ar, kind);

  const std::uint64_t expected = group_order(q, kind);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(static_cast<std::size_t>(expected) + 16);
  std::vector<std::uint64_t> frontier;
  const Mat4 id = ar.identity();
  seen.insert(ar.pack(id));
  frontier.push_back(ar.pack(id));
  std::size_t head = 0;
  while (head < frontier.size()) {
    const Mat4 x = ar.unpack(frontier[head++]);
    for (const Mat4& s : out->generators_) {
      const std::uint64_t y = ar.pack(ar.mul(x, s));
      if (seen.insert(y).second) frontier.push_back(y);
    }
  }
  seen = {};
  std::sort(frontier.begin(), frontier.end());
  out->elements_ = std::move(frontier);
  if (out->elements_.size() != expected)
    throw std::logic_error("generated group has order " + std::to_string(out->elements_.size()) + ", expected " +
                           std::to_string(expected));
  return out;
}

std::optional<std::size_t> GroupEnumeration::find(const Mat4& m) const {
  const std::uint64_t v = arith_.pack(m);
  auto it = std::lower_bound(elements_.begin(), elements_.end(), v);
  if (it == elements_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

std::size_t GroupEnumeration::index_of(const Mat4& m) const {
  auto i = find(m);
  if (!i) throw std::invalid_argument("element not in the enumerated group");
  return *i;
}

std::vector<Mat4> subgroup_N(const MatrixArith& arith) {
  const int q = arith.field().q();
  std::vector<Mat4> out;
  out.reserve(static_cast<std::size_t>(q) * q * q);
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      for (int z = 0; z < q; ++z) out.push_back(arith.siegel_unipotent(x, y, z));
  return out;
}

const char* to_string(RankClass r) {
  switch (r) {
    case RankClass::rank0: return "rank0";
    case RankClass::rank1: return "rank1";
    case RankClass::rank2_square: return "rank2_square";
    case RankClass::rank2_nonsquare: return "rank2_nonsquare";
    case RankClass::all_zero: return "all_zero";
    case RankClass::b_zero_ac_nonzero: return "b_zero_ac_nonzero";
    case RankClass::b_nonzero_eps_plus: return "b_nonzero_eps_plus";
    case RankClass::b_nonzero_eps_minus: return "b_nonzero_eps_minus";
  }
  return "?";
}

int column_index(RankClass r) {
  switch (r) {
    case RankClass::rank0:
    case RankClass::all_zero: return 0;
    case RankClass::rank1:
    case RankClass::b_zero_ac_nonzero: return 1;
    case RankClass::rank2_square:
    case RankClass::b_nonzero_eps_plus: return 2;
    case RankClass::rank2_nonsquare:
    case RankClass::b_nonzero_eps_minus: return 3;
  }
  return -1;
}

bool BesselDatum::nondegenerate() const { return column_index(rank_class) >= 2; }

BesselDatum classify_datum(const Field& f, int a, int b, int c) {
  BesselDatum d{a, b, c, RankClass::rank0, false};
  if (f.is_even()) {
    if (a == 0 && b == 0 && c == 0)
      d.rank_class = RankClass::all_zero;
    else if (b == 0)
      d.rank_class = RankClass::b_zero_ac_nonzero;
    else {
      const int b2 = f.mul(b, b);
      const int e = f.epsilon(f.div(f.mul(a, c), b2));
      d.rank_class = e == 1 ? RankClass::b_nonzero_eps_plus : RankClass::b_nonzero_eps_minus;
      d.split = e == 1;
    }
    return d;
  }
  const int disc = f.sub(f.mul(b, b), f.mul(f.from_int(4), f.mul(a, c)));
  if (a == 0 && b == 0 && c == 0)
    d.rank_class = RankClass::rank0;
  else if (disc == 0)
    d.rank_class = RankClass::rank1;
  else if (f.square_class(disc) == SquareClass::square) {
    d.rank_class = RankClass::rank2_square;
    d.split = true;
  } else
    d.rank_class = RankClass::rank2_nonsquare;
  return d;
}

std::vector<BesselDatum> all_data(const Field& f) {
  std::vector<BesselDatum> out;
  for (int a = 0; a < f.q(); ++a)
    for (int b = 0; b < f.q(); ++b)
      for (int c = 0; c < f.q(); ++c) out.push_back(classify_datum(f, a, b, c));
  return out;
}

std::vector<BesselDatum> nondegenerate_data(const Field& f) {
  std::vector<BesselDatum> out;
  for (const auto& d : all_data(f))
    if (d.nondegenerate()) out.push_back(d);
  return out;
}

int TorusStructure::alpha_plus(const TorusElement& t) const {
  const Field& F = ext_->big();
  return F.add(ext_->embed(t.r), F.mul(ext_->embed(t.s), mu_plus_));
}

int TorusStructure::alpha_minus(const TorusElement& t) const {
  const Field& F = ext_->big();
  return F.add(ext_->embed(t.r), F.mul(ext_->embed(t.s), mu_minus_));
}

std::size_t TorusStructure::index_of(int r, int s) const {
  const int i = lookup_.at(static_cast<std::size_t>(r) * q_ + s);
  if (i < 0) throw std::invalid_argument("(r, s) does not parametrize an element of T");
  return static_cast<std::size_t>(i);
}

std::size_t TorusStructure::t_d(int d) const {
  if (kind_ != TorusKind::split) throw std::logic_error("t_d is defined for split tori");
  for (std::size_t i : t_plus_)
    if (alpha_plus(elements_[i]) == ext_->embed(d)) return i;
  throw std::invalid_argument("t_d: d must be nonzero");
}

TorusStructure subgroup_T(const MatrixArith& arith, const BesselDatum& d) {
  const Field& f = arith.field();
  if (!d.nondegenerate())
    throw std::invalid_argument(f.is_even() ? "torus requires b != 0" : "torus requires b^2 - 4ac != 0");
  TorusStructure T;
  T.datum_ = d;
  T.kind_ = d.split ? TorusKind::split : TorusKind::nonsplit;
  T.ext_ = std::make_shared<const QuadraticExtension>(f);
  T.q_ = f.q();
  const QuadraticExtension& E = *T.ext_;
  const Field& F = E.big();

  // Roots of X^2 + bX + ac in F_{q^2}; for odd q, mu_+ = (-b + sqrt(b^2 - 4ac)) / 2.
  const int B = E.embed(d.b), AC = E.embed(f.mul(d.a, d.c));
  if (!f.is_even()) {
    const int disc = F.sub(F.mul(B, B), F.mul(F.from_int(4), AC));
    const auto delta = F.sqrt(disc);
    if (!delta) throw std::logic_error("discriminant has no square root in F_{q^2}");
    const int half = F.inv(F.from_int(2));
    T.mu_plus_ = F.mul(half, F.sub(*delta, B));
  } else {
    bool found = false;
    for (int y = 0; y < F.q() && !found; ++y)
      if (F.add(F.add(F.mul(y, y), F.mul(B, y)), AC) == 0) {
        T.mu_plus_ = y;
        found = true;
      }
    if (!found) throw std::logic_error("X^2 + bX + ac has no root in F_{q^2}");
  }
  T.mu_minus_ = F.sub(F.neg(B), T.mu_plus_);

  T.lookup_.assign(static_cast<std::size_t>(f.q()) * f.q(), -1);
  for (int r = 0; r < f.q(); ++r)
    for (int s = 0; s < f.q(); ++s) {
      // A = [[r - bs, -as], [cs, r]], D = det A = r^2 - brs + ac s^2
      const int a11 = f.sub(r, f.mul(d.b, s)), a12 = f.neg(f.mul(d.a, s));
      const int a21 = f.mul(d.c, s), a22 = r;
      const int det = f.sub(f.mul(a11, a22), f.mul(a12, a21));
      if (det == 0) continue;
      TorusElement t{r, s, arith.levi(a11, a12, a21, a22, det)};
      T.lookup_[static_cast<std::size_t>(r) * f.q() + s] = static_cast<int>(T.elements_.size());
      T.elements_.push_back(t);
    }

  for (std::size_t i = 0; i < T.elements_.size(); ++i) {
    const TorusElement& t = T.elements_[i];
    if (t.s == 0) T.center_.push_back(i);
    if (T.kind_ == TorusKind::split) {
      if (T.alpha_minus(t) == 1) T.t_plus_.push_back(i);
      if (T.alpha_plus(t) == 1) T.t_minus_.push_back(i);
    }
    if (*arith.multiplier(t.matrix) == 1) T.sp_part_.push_back(i);
  }
  if (f.is_even()) {
    const int target = T.kind_ == TorusKind::split ? E.gamma() : E.eta();
    bool found = false;
    for (std::size_t i : T.sp_part_)
      if (T.alpha_plus(T.elements_[i]) == target) {
        T.sp_generator_ = i;
        found = true;
      }
    if (!found) throw std::logic_error("no element of T cap Sp(4,q) has eigenvalue gamma/eta");
  }
  return T;
}

std::vector<BesselElement> subgroup_R(const MatrixArith& arith, const TorusStructure& torus) {
  const int q = arith.field().q();
  std::vector<BesselElement> out;
  out.reserve(torus.size() * q * q * q);
  for (std::size_t ti = 0; ti < torus.size(); ++ti)
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y)
        for (int z = 0; z < q; ++z)
          out.push_back({ti, x, y, z, arith.mul(torus.elements()[ti].matrix, arith.siegel_unipotent(x, y, z))});
  return out;
}

std::optional<BesselElement> factor_R(const MatrixArith& arith, const TorusStructure& torus, const Mat4& g) {
  // t is the block-diagonal part of g; n = t^{-1} g.
  Mat4 t{};
  for (int i : {0, 1, 4, 5, 10, 11, 14, 15}) t[i] = g[i];
  for (std::size_t ti = 0; ti < torus.size(); ++ti) {
    if (torus.elements()[ti].matrix != t) continue;
    const Mat4 n = arith.mul(arith.inverse(t), g);
    const int x = n[6], y = n[2], z = n[3];
    if (arith.siegel_unipotent(x, y, z) != n) return std::nullopt;
    return BesselElement{ti, x, y, z, g};
  }
  return std::nullopt;
}

AuxiliarySubgroups auxiliary_subgroups(const MatrixArith& arith) {
  const Field& f = arith.field();
  const int q = f.q();
  AuxiliarySubgroups out;
  for (int r = 1; r < q; ++r) out.center.push_back(arith.scalar(r));

  const auto N = subgroup_N(arith);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c)
        for (int d = 0; d < q; ++d) {
          if (f.sub(f.mul(a, d), f.mul(b, c)) == 0) continue;
          for (int u = 1; u < q; ++u) {
            const Mat4 m = arith.levi(a, b, c, d, u);
            for (const Mat4& n : N) out.siegel_parabolic.push_back(arith.mul(m, n));
          }
        }

  for (int t = 0; t < q; ++t) {
    const Mat4 m = arith.levi(1, t, 0, 1, 1);
    for (const Mat4& n : N) out.unipotent.push_back(arith.mul(m, n));
  }
  for (const Mat4& u : out.unipotent)
    if (u[1 * 4 + 2] == 0) out.klingen_radical.push_back(u);
  return out;
}

}  // namespace gsp4
