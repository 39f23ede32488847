#pragma once

// GSp(4,q) for the antidiagonal form J = antidiag(1, 1, -1, -1), its
// enumeration, and the subgroups used by the Bessel computations.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gsp4/ffield.hpp"

namespace gsp4 {

/// Row-major 4x4 matrix of field element indices.
using Mat4 = std::array<std::uint8_t, 16>;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MatrixArith {
 public:
  explicit MatrixArith(const Field& f);

  const Field& field() const { return *field_; }
  int bits_per_entry() const { return bits_; }

  Mat4 identity() const { return scalar(1); }
  Mat4 scalar(int r) const;
  Mat4 form_J() const;
  Mat4 mul(const Mat4& x, const Mat4& y) const;
  Mat4 scale(int r, const Mat4& x) const;
  Mat4 transpose(const Mat4& x) const;
  /// mu with ^t m J m = mu J, or nullopt when m is not in GSp(4,q).
  std::optional<int> multiplier(const Mat4& m) const;
  /// Inverse of a group element, via g^{-1} = mu^{-1} J^{-1} ^t g J.
  Mat4 inverse(const Mat4& g) const;
  Mat4 conjugate(const Mat4& s, const Mat4& s_inv, const Mat4& g) const { return mul(mul(s, g), s_inv); }
  Mat4 power(const Mat4& g, long long e) const;
  int order(const Mat4& g) const;

  /// Block diagonal diag(A, u A') with A' = det(A)^{-1} [[a,-b],[-c,d]].
  Mat4 levi(int a, int b, int c, int d, int u) const;
  /// Element of the Siegel radical N with coordinates (x, y, z).
  Mat4 siegel_unipotent(int x, int y, int z) const;

  std::uint64_t pack(const Mat4& m) const;
  Mat4 unpack(std::uint64_t v) const;

 private:
  const Field* field_;
  int bits_;
};

class GroupElement {
 public:
  /// Throws std::invalid_argument if m is not in GSp(4,q).
  GroupElement(const MatrixArith& arith, const Mat4& m);

  const Mat4& entries() const { return entries_; }
  int multiplier() const { return multiplier_; }
  std::uint64_t packed() const { return packed_; }

 private:
  Mat4 entries_;
  int multiplier_;
  std::uint64_t packed_;
};

enum class GroupKind { gsp, sp };

struct EnumerationOptions {
  std::size_t mem_budget_bytes = std::size_t{1} << 30;
};

std::uint64_t group_order(int q, GroupKind kind);
std::size_t estimated_enumeration_bytes(int q, GroupKind kind);

/// Generators: Levi torus, Levi Weyl element, Levi root elements for an
/// F_p-basis of F_q, Siegel radical elements for the same basis, J, and
/// (for GSp) a multiplier-gamma element.
std::vector<Mat4> group_generators(const MatrixArith& arith, GroupKind kind);

/// Full element list of GSp(4,q) or Sp(4,q), sorted by packed encoding.
class GroupEnumeration {
 public:
  static std::shared_ptr<const GroupEnumeration> build(std::shared_ptr<const Field> f, GroupKind kind,
                                                       const EnumerationOptions& opts = {});

  const Field& field() const { return *field_; }
  std::shared_ptr<const Field> field_ptr() const { return field_; }
  const MatrixArith& arith() const { return arith_; }
  GroupKind kind() const { return kind_; }
  std::size_t size() const { return elements_.size(); }
  std::uint64_t packed(std::size_t i) const { return elements_[i]; }
  Mat4 element(std::size_t i) const { return arith_.unpack(elements_[i]); }
  std::optional<std::size_t> find(const Mat4& m) const;
  std::size_t index_of(const Mat4& m) const;  // throws if absent
  const std::vector<Mat4>& generators() const { return generators_; }
  const std::vector<std::uint64_t>& packed_elements() const { return elements_; }

 private:
  GroupEnumeration(std::shared_ptr<const Field> f, GroupKind kind);

  std::shared_ptr<const Field> field_;
  MatrixArith arith_;
  GroupKind kind_;
  std::vector<Mat4> generators_;
  std::vector<std::uint64_t> elements_;
};

/// Index of (x, y, z) in subgroup_N's list.
inline std::size_t siegel_index(int q, int x, int y, int z) { return (static_cast<std::size_t>(x) * q + y) * q + z; }
std::vector<Mat4> subgroup_N(const MatrixArith& arith);

enum class RankClass {
  rank0,
  rank1,
  rank2_square,
  rank2_nonsquare,
  all_zero,
  b_zero_ac_nonzero,
  b_nonzero_eps_plus,
  b_nonzero_eps_minus,
};

const char* to_string(RankClass r);
/// Column position 0..3 in the odd or even Hom_N tables.
int column_index(RankClass r);

struct BesselDatum {
  int a = 0, b = 0, c = 0;
  RankClass rank_class = RankClass::rank0;
  bool split = false;
  /// b^2 - 4ac != 0 (equivalently b != 0 for even q).
  bool nondegenerate() const;
  friend bool operator==(const BesselDatum&, const BesselDatum&) = default;
};

BesselDatum classify_datum(const Field& f, int a, int b, int c);
std::vector<BesselDatum> all_data(const Field& f);
std::vector<BesselDatum> nondegenerate_data(const Field& f);

/// Value of the linear form a x + b y + c z.
inline int bessel_form(const Field& f, const BesselDatum& d, int x, int y, int z) {
  return f.add(f.add(f.mul(d.a, x), f.mul(d.b, y)), f.mul(d.c, z));
}

enum class TorusKind { split, nonsplit };

struct TorusElement {
  int r = 0, s = 0;
  Mat4 matrix{};
};

class TorusStructure {
 public:
  const BesselDatum& datum() const { return datum_; }
  TorusKind kind() const { return kind_; }
  const std::vector<TorusElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const QuadraticExtension& extension() const { return *ext_; }

  /// Eigenvalue maps T -> F_{q^2}^x (big-field indices): r + s mu_+ and r + s mu_-,
  /// where mu_+- are the roots of X^2 + bX + ac.
  int alpha_plus(const TorusElement& t) const;
  int alpha_minus(const TorusElement& t) const;
  int root_plus() const { return mu_plus_; }
  int root_minus() const { return mu_minus_; }

  /// Elements with s = 0 (the centre Z).
  const std::vector<std::size_t>& center() const { return center_; }
  /// Split only: T_+ = {alpha_- = 1}, T_- = {alpha_+ = 1}.
  const std::vector<std::size_t>& t_plus() const { return t_plus_; }
  const std::vector<std::size_t>& t_minus() const { return t_minus_; }
  /// Split only: the element of T_+ with eigenvalues (d, 1); d is an F_q index.
  std::size_t t_d(int d) const;
  /// T intersected with Sp(4,q) and the element identified with gamma or eta.
  const std::vector<std::size_t>& sp_part() const { return sp_part_; }
  std::size_t sp_generator() const { return sp_generator_; }

  std::size_t index_of(int r, int s) const;

 private:
  friend TorusStructure subgroup_T(const MatrixArith& arith, const BesselDatum& d);
  BesselDatum datum_;
  TorusKind kind_ = TorusKind::split;
  std::shared_ptr<const QuadraticExtension> ext_;
  std::vector<TorusElement> elements_;
  std::vector<int> lookup_;  // r * q + s -> index, or -1
  int q_ = 0;
  int mu_plus_ = 0, mu_minus_ = 0;
  std::vector<std::size_t> center_, t_plus_, t_minus_, sp_part_;
  std::size_t sp_generator_ = 0;
};

/// Throws std::invalid_argument for degenerate data.
TorusStructure subgroup_T(const MatrixArith& arith, const BesselDatum& d);

struct BesselElement {
  std::size_t torus_index;
  int x, y, z;
  Mat4 matrix;
};

/// R = TN as t * n(x,y,z), ordered by (torus index, x, y, z).
std::vector<BesselElement> subgroup_R(const MatrixArith& arith, const TorusStructure& torus);
/// Recovers (torus index, x, y, z) from an element of R.
std::optional<BesselElement> factor_R(const MatrixArith& arith, const TorusStructure& torus, const Mat4& g);

struct AuxiliarySubgroups {
  std::vector<Mat4> center;
  std::vector<Mat4> siegel_parabolic;
  std::vector<Mat4> unipotent;        // upper unitriangular elements of G
  std::vector<Mat4> klingen_radical;  // unipotent radical of the stabilizer of <e_1>
};

AuxiliarySubgroups auxiliary_subgroups(const MatrixArith& arith);

}  // namespace gsp4
