#pragma once

// Finite fields F_q, q = p^n, small enough that every operation is a table
// lookup. Elements are integer indices: index k encodes the polynomial
// sum_i c_i X^i whose coefficients c_i are the base-p digits of k.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsp4 {

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// zeta_order^exponent, kept exact.
struct ComplexRoot {
  int order = 1;
  int exponent = 0;

  ComplexRoot() = default;
  ComplexRoot(int m, long long k);
  ComplexRoot operator*(const ComplexRoot& other) const;
  ComplexRoot inverse() const { return ComplexRoot(order, -static_cast<long long>(exponent)); }
  bool is_one() const { return exponent == 0; }
  friend bool operator==(const ComplexRoot& a, const ComplexRoot& b);
};

struct FieldElement {
  std::uint16_t index = 0;
  std::uint32_t field_id = 0;
  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

enum class ArithOp { add, sub, mul, div, inv, pow };
enum class SquareClass { zero, square, nonsquare };

struct FieldOptions {
  int max_order = 16;
  /// Replaces the default choice of xi (must still be a valid xi).
  std::optional<int> xi_override;
};

/// Small serializable description of a field: enough to rebuild it.
struct FieldRecord {
  int p = 0;
  int n = 0;
  std::vector<int> modulus;  // c_0 .. c_n, monic
  int generator = 0;
  int xi = 0;
  friend bool operator==(const FieldRecord&, const FieldRecord&) = default;
};

class Field {
 public:
  static Field make(int p, int n, const FieldOptions& opts = {});

  int p() const { return p_; }
  int n() const { return n_; }
  int q() const { return q_; }
  bool is_even() const { return p_ == 2; }
  const std::vector<int>& modulus() const { return modulus_; }
  std::uint32_t id() const { return id_; }
  FieldRecord record() const { return {p_, n_, modulus_, generator_, xi_}; }

  // Raw index arithmetic for hot loops. Arguments are assumed to lie in [0, q).
  int zero() const { return 0; }
  int one() const { return 1; }
  int add(int x, int y) const { return add_[x * q_ + y]; }
  int sub(int x, int y) const { return add_[x * q_ + neg_[y]]; }
  int neg(int x) const { return neg_[x]; }
  int mul(int x, int y) const { return mul_[x * q_ + y]; }
  int inv(int x) const;
  int div(int x, int y) const { return mul(x, inv(y)); }
  int pow(int x, long long e) const;
  int from_int(long long v) const;  // image of an integer under Z -> F_p -> F_q

  int generator() const { return generator_; }
  int xi() const { return xi_; }
  /// Discrete log to the base of generator(); x must be nonzero.
  int log(int x) const;
  int exp(long long k) const;
  int multiplicative_order(int x) const;

  /// Absolute trace to Z/p, returned as an integer in [0, p).
  int trace(int x) const { return trace_[x]; }
  SquareClass square_class(int x) const;
  /// Artin-Schreier sign: +1 iff x = t^2 + t for some t (even q only).
  int epsilon(int x) const;
  bool in_q_circle(int x) const;
  std::vector<int> q_circle() const;
  std::optional<int> sqrt(int x) const;

  std::string to_string(int x) const;  // polynomial rendering, e.g. "X+1"

  // Checked element API.
  FieldElement element(int index) const;
  FieldElement arith(FieldElement x, FieldElement y, ArithOp op) const;
  FieldElement arith_pow(FieldElement x, long long e) const;

  friend bool operator==(const Field& a, const Field& b) { return a.record() == b.record(); }

 private:
  Field() = default;
  void check(FieldElement x) const;

  int p_ = 0, n_ = 0, q_ = 0;
  std::vector<int> modulus_;
  std::uint32_t id_ = 0;
  int generator_ = 0;
  int xi_ = 0;
  std::vector<std::uint8_t> add_, mul_;
  std::vector<std::uint8_t> neg_, trace_;
  std::vector<int> log_, exp_;
  std::vector<std::uint8_t> q_circle_;
  std::vector<int> sqrt_;  // -1 if no square root
};

/// psi_scale(x) = zeta_p^{Tr(scale * x)}; scale = 1 is the fixed convention.
class AdditiveCharacter {
 public:
  explicit AdditiveCharacter(const Field& f, int scale = 1);
  int exponent(int x) const { return field_->trace(field_->mul(scale_, x)); }
  ComplexRoot operator()(int x) const { return ComplexRoot(field_->p(), exponent(x)); }
  int scale() const { return scale_; }

 private:
  const Field* field_;
  int scale_;
};

ComplexRoot additive_character(const Field& f, int x);

/// chi_j(g^k) = zeta_order^{jk} on a cyclic group of the given order.
class CyclicCharacter {
 public:
  CyclicCharacter(int group_order, int j);
  ComplexRoot at_log(long long k) const { return ComplexRoot(order_, static_cast<long long>(j_) * k); }
  int order() const { return order_; }
  int index() const { return j_; }

 private:
  int order_;
  int j_;
};

CyclicCharacter mult_character(int group_order, int j);

/// F_{q^2} together with the embedding of F_q and the distinguished elements
/// gamma (order q-1) and eta (order q+1).
class QuadraticExtension {
 public:
  explicit QuadraticExtension(const Field& base);

  const Field& base() const { return *base_; }
  const Field& big() const { return big_; }
  int embed(int x) const { return embed_[x]; }
  /// Inverse of embed(); nullopt if y is not in the image of F_q.
  std::optional<int> restrict(int y) const;
  int norm(int y) const { return big_.pow(y, base_->q() + 1); }
  int trace(int y) const { return big_.add(y, frobenius(y)); }
  int frobenius(int y) const { return big_.pow(y, base_->q()); }
  int gamma() const { return gamma_; }
  int eta() const { return eta_; }
  std::optional<int> sqrt_of_base(int x) const { return big_.sqrt(embed(x)); }

 private:
  std::shared_ptr<const Field> base_;
  Field big_;
  std::vector<int> embed_;
  std::vector<int> restrict_;
  int gamma_ = 0, eta_ = 0;
};

QuadraticExtension quadratic_extension(const Field& f);

bool is_prime(long long n);
/// Ben-Or irreducibility over Z/p; coefficients c_0..c_n of a monic polynomial.
bool is_irreducible_mod_p(const std::vector<int>& poly, int p);
/// Number of (x, y) in F_q^2 with y^2 - xi x^2 = 1 (odd q).
int count_norm_one_solutions(const Field& f);

}  // namespace gsp4
