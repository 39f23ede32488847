#include "gsp4/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gsp4 {

namespace {

using Coeffs = std::vector<std::int64_t>;

long long mod(long long a, long long n) {
  long long r = a % n;
  return r < 0 ? r + n : r;
}

/// Reduces a dense polynomial modulo Phi_n in place; result has length phi(n).
void reduce(Coeffs& v, int n) {
  const Coeffs& phi = cyclotomic_polynomial(n);
  const std::size_t d = phi.size() - 1;
  for (std::size_t i = v.size(); i-- > d;) {
    const std::int64_t c = v[i];
    if (c == 0) continue;
    v[i] = 0;
    for (std::size_t j = 0; j < d; ++j)
      if (phi[j] != 0) v[i - d + j] = checked_add(v[i - d + j], -checked_mul(c, phi[j]));
  }
  v.resize(d, 0);
}

}  // namespace

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("cyclotomic coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("cyclotomic coefficient overflow");
  return r;
}

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  if (n > 1) result -= result / n;
  return result;
}

const std::vector<std::int64_t>& cyclotomic_polynomial(int n) {
  static std::mutex m;
  static std::map<int, std::shared_ptr<const Coeffs>> cache;
  if (n <= 0) throw std::invalid_argument("cyclotomic polynomial index must be positive");
  {
    std::lock_guard lock(m);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
  }
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, by exact division.
  Coeffs num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    const Coeffs& den = cyclotomic_polynomial(d);
    const std::size_t dd = den.size() - 1;
    Coeffs quo(num.size() - dd, 0);
    for (std::size_t i = num.size(); i-- > dd;) {
      const std::int64_t c = num[i];
      quo[i - dd] = c;
      for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    num = std::move(quo);
  }
  std::lock_guard lock(m);
  auto [it, inserted] = cache.emplace(n, std::make_shared<const Coeffs>(std::move(num)));
  return *it->second;
}

Cyclotomic Cyclotomic::integer(std::int64_t v) { return Cyclotomic(1, {v}); }

Cyclotomic Cyclotomic::root(int n, long long k) {
  Coeffs dense(n, 0);
  dense[mod(k, n)] = 1;
  return from_group_ring(n, std::move(dense));
}

Cyclotomic Cyclotomic::from_group_ring(int n, Coeffs dense) {
  if (n <= 0 || static_cast<int>(dense.size()) != n) throw std::invalid_argument("group ring vector has wrong size");
  reduce(dense, n);
  return Cyclotomic(n, std::move(dense));
}

Cyclotomic Cyclotomic::from_coefficients(int n, Coeffs coeffs) {
  if (n <= 0) throw std::invalid_argument("conductor must be positive");
  reduce(coeffs, n);
  return Cyclotomic(n, std::move(coeffs));
}

Cyclotomic Cyclotomic::promote(int m) const {
  if (m == n_) return *this;
  if (m % n_ != 0) throw std::invalid_argument("promote: conductor does not divide target");
  Coeffs dense(m, 0);
  const int step = m / n_;
  for (std::size_t i = 0; i < c_.size(); ++i) dense[i * step] = c_[i];
  return from_group_ring(m, std::move(dense));
}

bool Cyclotomic::is_zero() const {
  for (auto c : c_)
    if (c != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

std::optional<std::int64_t> Cyclotomic::to_integer() const {
  if (!is_rational()) return std::nullopt;
  return c_.empty() ? 0 : c_[0];
}

Cyclotomic Cyclotomic::conj() const { return galois(-1); }

Cyclotomic Cyclotomic::galois(long long k) const {
  if (std::gcd(mod(k, n_), static_cast<long long>(n_)) != 1 && n_ > 1)
    throw std::invalid_argument("galois: exponent not coprime to conductor");
  Coeffs dense(n_, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    auto& slot = dense[mod(static_cast<long long>(i) * k, n_)];
    slot = checked_add(slot, c_[i]);
  }
  return from_group_ring(n_, std::move(dense));
}

Cyclotomic Cyclotomic::operator-() const {
  Coeffs c = c_;
  for (auto& v : c) v = checked_mul(v, -1);
  return Cyclotomic(n_, std::move(c));
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  const int l = std::lcm(n_, o.n_);
  Cyclotomic a = promote(l), b = o.promote(l);
  for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] = checked_add(a.c_[i], b.c_[i]);
  return a;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  const int l = std::lcm(n_, o.n_);
  const int sa = l / n_, sb = l / o.n_;
  Coeffs dense(l, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      auto& slot = dense[(i * sa + j * sb) % l];
      slot = checked_add(slot, checked_mul(c_[i], o.c_[j]));
    }
  }
  return from_group_ring(l, std::move(dense));
}

Cyclotomic Cyclotomic::operator*(std::int64_t s) const {
  Coeffs c = c_;
  for (auto& v : c) v = checked_mul(v, s);
  return Cyclotomic(n_, std::move(c));
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return Cyclotomic::compare(a, b) == 0; }

int Cyclotomic::compare(const Cyclotomic& a, const Cyclotomic& b) {
  const int l = std::lcm(a.n_, b.n_);
  const Cyclotomic x = a.promote(l), y = b.promote(l);
  for (std::size_t i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i] < y.c_[i]) return -1;
    if (x.c_[i] > y.c_[i]) return 1;
  }
  return 0;
}

std::string Cyclotomic::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const std::int64_t c = c_[i];
    if (c == 0) continue;
    if (!first) out << (c > 0 ? " + " : " - ");
    else if (c < 0) out << "-";
    const std::int64_t a = c < 0 ? -c : c;
    if (i == 0)
      out << a;
    else {
      if (a != 1) out << a << "*";
      out << "z" << n_;
      if (i > 1) out << "^" << i;
    }
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

CyclotomicAccumulator::CyclotomicAccumulator(int n) : n_(n), acc_(n, 0) {
  if (n <= 0) throw std::invalid_argument("conductor must be positive");
}

void CyclotomicAccumulator::add_root(long long k, std::int64_t w) {
  auto& slot = acc_[mod(k, n_)];
  slot = checked_add(slot, w);
}

void CyclotomicAccumulator::add_scaled(const Cyclotomic& v, long long shift, std::int64_t w) {
  if (n_ % v.conductor() != 0) throw std::invalid_argument("accumulator conductor is not a multiple");
  const long long step = n_ / v.conductor();
  const auto& c = v.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) add_root(shift + static_cast<long long>(i) * step, checked_mul(w, c[i]));
}

Cyclotomic CyclotomicAccumulator::value() const { return Cyclotomic::from_group_ring(n_, acc_); }

}  // namespace gsp4
