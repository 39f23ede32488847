#include "gsp4/ffield.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gsp4 {

namespace {

using Poly = std::vector<int>;  // coefficients over Z/p, low degree first

int mod_p(long long v, int p) {
  long long r = v % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

int inv_mod_p(int a, int p) {
  for (int b = 1; b < p; ++b)
    if ((a * b) % p == 1) return b;
  throw FieldError("no inverse mod p");
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, int p) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  const int lead_inv = inv_mod_p(m.back(), p);
  while (static_cast<int>(a.size()) - 1 >= dm) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int c = (a.back() * lead_inv) % p;
    for (int i = 0; i <= dm; ++i) a[shift + i] = mod_p(a[shift + i] - c * m[i], p);
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(r), m, p);
}

Poly poly_gcd(Poly a, Poly b, int p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly digits(int k, int p, int n) {
  Poly d(n);
  for (int i = 0; i < n; ++i) {
    d[i] = k % p;
    k /= p;
  }
  return d;
}

int from_digits(const Poly& d, int p) {
  int k = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) k = k * p + d[i];
  return k;
}

std::uint32_t fnv1a(const FieldRecord& r) {
  std::uint32_t h = 2166136261u;
  auto mix = [&](int v) {
    for (int b = 0; b < 4; ++b) {
      h ^= static_cast<std::uint32_t>((v >> (8 * b)) & 0xff);
      h *= 16777619u;
    }
  };
  mix(r.p);
  mix(r.n);
  for (int c : r.modulus) mix(c);
  mix(r.xi);
  return h;
}

}  // namespace

ComplexRoot::ComplexRoot(int m, long long k) : order(m) {
  if (m <= 0) throw std::invalid_argument("root of unity order must be positive");
  long long r = k % m;
  exponent = static_cast<int>(r < 0 ? r + m : r);
}

ComplexRoot ComplexRoot::operator*(const ComplexRoot& other) const {
  const long long l = std::lcm(static_cast<long long>(order), static_cast<long long>(other.order));
  return ComplexRoot(static_cast<int>(l), exponent * (l / order) + other.exponent * (l / other.order));
}

bool operator==(const ComplexRoot& a, const ComplexRoot& b) {
  const long long l = std::lcm(static_cast<long long>(a.order), static_cast<long long>(b.order));
  return a.exponent * (l / a.order) == b.exponent * (l / b.order);
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible_mod_p(const std::vector<int>& poly, int p) {
  Poly f = poly;
  trim(f);
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 0) return false;
  if (n == 1) return true;
  // gcd(f, X^{p^i} - X) = 1 for i = 1 .. n/2
  Poly x = {0, 1};
  Poly power = x;
  for (int i = 1; i <= n / 2; ++i) {
    Poly acc = {1};
    Poly base = power;
    for (int e = p; e > 0; e >>= 1) {
      if (e & 1) acc = poly_mulmod(acc, base, f, p);
      base = poly_mulmod(base, base, f, p);
    }
    power = acc;
    Poly diff = power;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = mod_p(diff[1] - 1, p);
    Poly g = poly_gcd(f, diff, p);
    if (g.size() != 1) return false;
  }
  return true;
}

Field Field::make(int p, int n, const FieldOptions& opts) {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (n < 1) throw FieldError("degree must be positive");
  long long q = 1;
  for (int i = 0; i < n; ++i) {
    q *= p;
    if (q > opts.max_order) break;
  }
  if (q > opts.max_order)
    throw FieldError("field order " + std::to_string(p) + "^" + std::to_string(n) +
                     " exceeds the configured bound " + std::to_string(opts.max_order));
  if (q > 256) throw FieldError("field order above 256 is not supported");

  Field f;
  f.p_ = p;
  f.n_ = n;
  f.q_ = static_cast<int>(q);

  // Least monic irreducible, ordered by the index of its lower coefficients.
  for (int k = 0; k < f.q_; ++k) {
    Poly m = digits(k, p, n);
    m.push_back(1);
    if (is_irreducible_mod_p(m, p)) {
      f.modulus_ = m;
      break;
    }
  }
  if (f.modulus_.empty()) throw FieldError("no irreducible polynomial found");

  const int Q = f.q_;
  f.add_.resize(Q * Q);
  f.mul_.resize(Q * Q);
  f.neg_.resize(Q);
  std::vector<Poly> polys(Q);
  for (int k = 0; k < Q; ++k) polys[k] = digits(k, p, n);
  for (int x = 0; x < Q; ++x) {
    Poly ng(n);
    for (int i = 0; i < n; ++i) ng[i] = mod_p(-polys[x][i], p);
    f.neg_[x] = static_cast<std::uint8_t>(from_digits(ng, p));
    for (int y = 0; y < Q; ++y) {
      Poly s(n);
      for (int i = 0; i < n; ++i) s[i] = (polys[x][i] + polys[y][i]) % p;
      f.add_[x * Q + y] = static_cast<std::uint8_t>(from_digits(s, p));
      Poly prod = poly_mulmod(polys[x], polys[y], f.modulus_, p);
      prod.resize(n, 0);
      f.mul_[x * Q + y] = static_cast<std::uint8_t>(from_digits(prod, p));
    }
  }

  // Generator: first element of order q - 1.
  for (int x = 1; x < Q; ++x) {
    int y = x, ord = 1;
    while (y != 1) {
      y = f.mul(y, x);
      ++ord;
    }
    if (ord == Q - 1) {
      f.generator_ = x;
      break;
    }
  }
  f.log_.assign(Q, -1);
  f.exp_.resize(Q - 1);
  for (int k = 0, y = 1; k < Q - 1; ++k) {
    f.exp_[k] = y;
    f.log_[y] = k;
    y = f.mul(y, f.generator_);
  }

  f.trace_.resize(Q);
  for (int x = 0; x < Q; ++x) {
    int t = 0, y = x;
    for (int i = 0; i < n; ++i) {
      t = f.add(t, y);
      y = f.pow(y, p);
    }
    if (t >= p) throw FieldError("trace left the prime field");
    f.trace_[x] = static_cast<std::uint8_t>(t);
  }

  // least-index square root
  f.sqrt_.assign(Q, -1);
  for (int y = Q - 1; y >= 0; --y) f.sqrt_[f.mul(y, y)] = y;

  if (f.is_even()) {
    f.q_circle_.assign(Q, 0);
    for (int t = 0; t < Q; ++t) f.q_circle_[f.add(f.mul(t, t), t)] = 1;
  }

  auto xi_ok = [&](int x) {
    if (f.is_even()) return !f.q_circle_[x];
    return x != 0 && f.pow(x, (Q - 1) / 2) != 1;
  };
  if (opts.xi_override) {
    const int x = *opts.xi_override;
    if (x < 0 || x >= Q || !xi_ok(x)) throw FieldError("invalid xi override " + std::to_string(x));
    f.xi_ = x;
  } else {
    for (int x = 0; x < Q; ++x)
      if (xi_ok(x)) {
        f.xi_ = x;
        break;
      }
  }
  f.id_ = fnv1a(f.record());
  return f;
}

int Field::inv(int x) const {
  if (x == 0) throw FieldError("division by zero in F_" + std::to_string(q_));
  return exp_[(q_ - 1 - log_[x]) % (q_ - 1)];
}

int Field::pow(int x, long long e) const {
  if (x == 0) {
    if (e < 0) throw FieldError("division by zero in F_" + std::to_string(q_));
    return e == 0 ? 1 : 0;
  }
  long long k = (static_cast<long long>(log_[x]) * (e % (q_ - 1))) % (q_ - 1);
  if (k < 0) k += q_ - 1;
  return exp_[k];
}

int Field::from_int(long long v) const { return mod_p(v, p_); }

int Field::log(int x) const {
  if (x == 0) throw FieldError("log of zero");
  return log_[x];
}

int Field::exp(long long k) const {
  long long r = k % (q_ - 1);
  return exp_[r < 0 ? r + q_ - 1 : r];
}

int Field::multiplicative_order(int x) const {
  if (x == 0) throw FieldError("order of zero");
  return (q_ - 1) / std::gcd(q_ - 1, log_[x]);
}

SquareClass Field::square_class(int x) const {
  if (is_even()) throw FieldError("square_class is defined for odd q only");
  if (x == 0) return SquareClass::zero;
  return log_[x] % 2 == 0 ? SquareClass::square : SquareClass::nonsquare;
}

int Field::epsilon(int x) const {
  if (!is_even()) throw FieldError("epsilon is defined for even q only");
  return q_circle_[x] ? 1 : -1;
}

bool Field::in_q_circle(int x) const {
  if (!is_even()) throw FieldError("F_q circle is defined for even q only");
  return q_circle_[x] != 0;
}

std::vector<int> Field::q_circle() const {
  std::vector<int> out;
  for (int x = 0; x < q_; ++x)
    if (in_q_circle(x)) out.push_back(x);
  return out;
}

std::optional<int> Field::sqrt(int x) const {
  if (sqrt_[x] < 0) return std::nullopt;
  return sqrt_[x];
}

std::string Field::to_string(int x) const {
  if (x == 0) return "0";
  Poly d = digits(x, p_, n_);
  std::ostringstream out;
  bool first = true;
  for (int i = n_ - 1; i >= 0; --i) {
    if (d[i] == 0) continue;
    if (!first) out << "+";
    first = false;
    if (i == 0 || d[i] != 1) out << d[i];
    if (i >= 1) out << "X";
    if (i >= 2) out << "^" << i;
  }
  return out.str();
}

void Field::check(FieldElement x) const {
  if (x.field_id != id_) throw FieldError("field element belongs to a different field");
  if (x.index >= q_) throw FieldError("field element index out of range");
}

FieldElement Field::element(int index) const {
  if (index < 0 || index >= q_) throw FieldError("field element index out of range");
  return {static_cast<std::uint16_t>(index), id_};
}

FieldElement Field::arith(FieldElement x, FieldElement y, ArithOp op) const {
  check(x);
  if (op != ArithOp::inv && op != ArithOp::pow) check(y);
  switch (op) {
    case ArithOp::add: return element(add(x.index, y.index));
    case ArithOp::sub: return element(sub(x.index, y.index));
    case ArithOp::mul: return element(mul(x.index, y.index));
    case ArithOp::div: return element(div(x.index, y.index));
    case ArithOp::inv: return element(inv(x.index));
    case ArithOp::pow: return element(pow(x.index, y.index));
  }
  throw FieldError("unknown operation");
}

FieldElement Field::arith_pow(FieldElement x, long long e) const {
  check(x);
  return element(pow(x.index, e));
}

AdditiveCharacter::AdditiveCharacter(const Field& f, int scale) : field_(&f), scale_(scale) {
  if (scale <= 0 || scale >= f.q()) throw FieldError("additive character scale must be nonzero");
}

ComplexRoot additive_character(const Field& f, int x) { return ComplexRoot(f.p(), f.trace(x)); }

CyclicCharacter::CyclicCharacter(int group_order, int j) : order_(group_order), j_(j) {
  if (group_order <= 0 || j < 0 || j >= group_order)
    throw std::out_of_range("character index " + std::to_string(j) + " out of range for order " +
                            std::to_string(group_order));
}

CyclicCharacter mult_character(int group_order, int j) { return CyclicCharacter(group_order, j); }

QuadraticExtension::QuadraticExtension(const Field& base)
    : base_(std::make_shared<const Field>(base)),
      big_(Field::make(base.p(), 2 * base.n(), FieldOptions{.max_order = 256, .xi_override = std::nullopt})) {
  const int q = base.q();
  // Map the base field's polynomial variable to the least-index root of its
  // modulus in the big field; this fixes a field embedding.
  const auto& m = base.modulus();
  int root = -1;
  for (int y = 0; y < big_.q() && root < 0; ++y) {
    int acc = 0;
    for (int i = static_cast<int>(m.size()) - 1; i >= 0; --i)
      acc = big_.add(big_.mul(acc, y), big_.from_int(m[i]));
    if (acc == 0) root = y;
  }
  if (root < 0) throw FieldError("base modulus has no root in the quadratic extension");
  embed_.resize(q);
  restrict_.assign(big_.q(), -1);
  for (int x = 0; x < q; ++x) {
    Poly d = digits(x, base.p(), base.n());
    int acc = 0;
    for (int i = base.n() - 1; i >= 0; --i) acc = big_.add(big_.mul(acc, root), big_.from_int(d[i]));
    embed_[x] = acc;
    restrict_[acc] = x;
  }
  gamma_ = big_.pow(big_.generator(), q + 1);
  eta_ = big_.pow(big_.generator(), q - 1);
}

std::optional<int> QuadraticExtension::restrict(int y) const {
  if (restrict_[y] < 0) return std::nullopt;
  return restrict_[y];
}

QuadraticExtension quadratic_extension(const Field& f) { return QuadraticExtension(f); }

int count_norm_one_solutions(const Field& f) {
  if (f.is_even()) throw FieldError("norm-one count is stated for odd q");
  int count = 0;
  for (int x = 0; x < f.q(); ++x)
    for (int y = 0; y < f.q(); ++y)
      if (f.sub(f.mul(y, y), f.mul(f.xi(), f.mul(x, x))) == 1) ++count;
  return count;
}

}  // namespace gsp4
