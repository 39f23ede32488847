#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gsp4/group.hpp"

namespace gsp4 {

/// Conjugacy classes of an enumerated group, or (even q) of G = Sp(4,q) x Z
/// assembled from the classes of Sp(4,q).
///
/// Classes of an enumerated group are ordered by (element order, class size,
/// least packed member); the least packed member is the representative.
/// Product classes are indexed as base_class * (q - 1) + log(z).
class ClassData {
 public:
  static std::shared_ptr<const ClassData> compute(std::shared_ptr<const GroupEnumeration> group);
  static std::shared_ptr<const ClassData> product_with_center(std::shared_ptr<const ClassData> sp_classes);

  std::size_t num_classes() const { return reps_.size(); }
  const Mat4& representative(std::size_t k) const { return reps_[k]; }
  std::uint64_t class_size(std::size_t k) const { return sizes_[k]; }
  int element_order(std::size_t k) const { return orders_[k]; }
  std::uint64_t group_order() const { return group_order_; }
  int exponent() const { return exponent_; }
  std::size_t identity_class() const { return identity_; }
  std::size_t inverse_class(std::size_t k) const { return inverse_[k]; }
  std::size_t power_class(std::size_t k, long long t) const;

  /// Class of any element of G (normalizes by the centre in the product case).
  std::size_t class_of(const Mat4& g) const;
  /// Enumerated case only: class of the i-th enumerated element.
  std::size_t class_of_index(std::size_t i) const { return class_index_[i]; }

  const MatrixArith& arith() const { return group_->arith(); }
  const Field& field() const { return group_->field(); }
  const GroupEnumeration& enumeration() const { return *group_; }
  std::shared_ptr<const GroupEnumeration> enumeration_ptr() const { return group_; }
  bool is_center_product() const { return base_ != nullptr; }
  std::shared_ptr<const ClassData> base() const { return base_; }
  /// Product case: base class of k and log of its central factor.
  std::size_t base_class(std::size_t k) const { return k / center_order_; }
  int center_log(std::size_t k) const { return static_cast<int>(k % center_order_); }

 private:
  ClassData() = default;
  void finish();

  std::shared_ptr<const GroupEnumeration> group_;
  std::shared_ptr<const ClassData> base_;
  int center_order_ = 1;
  std::vector<std::uint32_t> class_index_;
  std::vector<Mat4> reps_;
  std::vector<std::uint64_t> sizes_;
  std::vector<int> orders_;
  std::vector<std::size_t> inverse_;
  std::uint64_t group_order_ = 0;
  int exponent_ = 1;
  std::size_t identity_ = 0;
};

std::shared_ptr<const ClassData> conjugacy_classes(std::shared_ptr<const GroupEnumeration> group);

/// a_{ijk} for the class sums K_i K_j = sum_k a_{ijk} K_k.
class ClassConstants {
 public:
  static ClassConstants compute(const ClassData& cd);
  std::uint64_t operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * n_ + j) * n_ + k];
  }
  std::size_t num_classes() const { return n_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> data_;
};

/// #{(x, y) in C_i x C_j : xy = z0} for a given z0 (enumerated class data only).
std::uint64_t class_constant_at(const ClassData& cd, std::size_t i, std::size_t j, const Mat4& z0);
std::uint64_t class_constants(const ClassData& cd, std::size_t i, std::size_t j, std::size_t k);

// ---------------------------------------------------------------------------
// Orbits of X = [[y, z], [x, y]] under X -> u A X (A')^{-1}.

enum class Orbit2x2 {
  zero,
  rank1,
  det_square,        // odd q
  det_nonsquare,     // odd q
  det_nonzero_diag,  // even q, x = z = 0
  det_nonzero_mixed  // even q, (x, z) != (0, 0)
};

const char* to_string(Orbit2x2 o);
Orbit2x2 canonical_form_2x2(const Field& f, int x, int y, int z);
/// The (x, y, z) of the canonical representative of an orbit.
std::array<int, 3> orbit_representative(const Field& f, Orbit2x2 o);
/// u A X (A')^{-1}, returned as (x, y, z); throws if the result leaves the shape.
std::array<int, 3> act_2x2(const Field& f, const std::array<int, 4>& A, int u, const std::array<int, 3>& xyz);
/// Exhaustive orbit partition of all q^3 matrices: orbit id per siegel_index.
std::vector<int> orbits_2x2(const Field& f);

struct CanonicalFormReport {
  bool passed = true;
  std::size_t orbits = 0;
  std::size_t random_moves = 0;
  std::string failure;
};

/// The exhaustive partition has exactly four orbits and agrees with
/// canonical_form_2x2; random moves never leave a representative's orbit.
CanonicalFormReport check_canonical_forms(const Field& f, std::uint64_t seed = 0, int moves_per_orbit = 200);

// ---------------------------------------------------------------------------
// Conjugacy types of elements t n of R = TN.

enum class TNFamily { s_zero, D0, D1, F0, F1, C2, D2, C4, D4 };

const char* to_string(TNFamily f);

struct TNTypeLabel {
  TNFamily family = TNFamily::s_zero;
  /// D: sorted pair of F_q indices; F: sorted Galois orbit of F_{q^2} indices;
  /// even q: the exponent min(i, order - i).
  std::vector<int> parameter;
  friend bool operator==(const TNTypeLabel&, const TNTypeLabel&) = default;
  friend auto operator<=>(const TNTypeLabel&, const TNTypeLabel&) = default;
};

TNTypeLabel tn_type(const MatrixArith& arith, const TorusStructure& torus, const BesselElement& g);

struct TypeSoundnessReport {
  bool passed = true;
  std::size_t labelled_elements = 0;
  std::size_t distinct_labels = 0;
  std::size_t classes_hit = 0;
  std::string failure;
};

/// Same label => same class; different families => different classes; the four
/// representatives of the 2x2 orbits lie in distinct classes covering N.
TypeSoundnessReport check_type_soundness(const ClassData& cd);

}  // namespace gsp4
