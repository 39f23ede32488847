#pragma once

// Exact elements of Z[zeta_n] in the power basis 1, zeta_n, ..., zeta_n^{phi(n)-1},
// i.e. integer polynomials reduced modulo the n-th cyclotomic polynomial.
//
// Coefficients are 64-bit; every operation is overflow-checked and throws
// std::overflow_error rather than wrapping.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsp4/ffield.hpp"

namespace gsp4 {

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

int euler_phi(int n);
/// Coefficients of Phi_n, low degree first (monic, length phi(n) + 1).
const std::vector<std::int64_t>& cyclotomic_polynomial(int n);

class Cyclotomic {
 public:
  Cyclotomic() = default;  // zero, conductor 1

  static Cyclotomic integer(std::int64_t v);
  static Cyclotomic root(int n, long long k);
  static Cyclotomic from_root(const ComplexRoot& r) { return root(r.order, r.exponent); }
  /// sum_m dense[m] zeta_n^m with dense.size() == n.
  static Cyclotomic from_group_ring(int n, std::vector<std::int64_t> dense);
  /// Power-basis coefficients, length at most phi(n).
  static Cyclotomic from_coefficients(int n, std::vector<std::int64_t> coeffs);

  int conductor() const { return n_; }
  const std::vector<std::int64_t>& coefficients() const { return c_; }

  /// Same value written over conductor m (n must divide m).
  Cyclotomic promote(int m) const;
  bool is_zero() const;
  bool is_rational() const;
  std::optional<std::int64_t> to_integer() const;

  Cyclotomic conj() const;
  /// zeta_n -> zeta_n^k, gcd(k, n) = 1.
  Cyclotomic galois(long long k) const;

  Cyclotomic operator-() const;
  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic operator*(std::int64_t s) const;

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  /// Total order: compare over the common conductor, coefficient by coefficient.
  static int compare(const Cyclotomic& a, const Cyclotomic& b);

  std::string to_string() const;

 private:
  Cyclotomic(int n, std::vector<std::int64_t> c) : n_(n), c_(std::move(c)) {}
  int n_ = 1;
  std::vector<std::int64_t> c_ = {0};
};

/// Dense accumulator in Z[x]/(x^n - 1); value() reduces modulo Phi_n.
class CyclotomicAccumulator {
 public:
  explicit CyclotomicAccumulator(int n);
  int conductor() const { return n_; }
  void add_root(long long k, std::int64_t w);
  /// Adds w * zeta_n^shift * v, where v.conductor() divides n.
  void add_scaled(const Cyclotomic& v, long long shift, std::int64_t w);
  Cyclotomic value() const;

 private:
  int n_;
  std::vector<std::int64_t> acc_;
};

}  // namespace gsp4
