#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "gsp4/chartab.hpp"

namespace gsp4 {

using Rational = boost::rational<std::int64_t>;

class IntegralityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Exponential sums over the quadric y^2 - xz, each as a closed form and as a
// brute-force triple loop (psi(-ax - by - cz) summed over the locus).

std::int64_t cone_sum(const Field& f, int a, int b, int c);
std::int64_t cone_sum_brute(const Field& f, int a, int b, int c);
std::int64_t square_locus_sum(const Field& f, int a, int b, int c);
std::int64_t square_locus_sum_brute(const Field& f, int a, int b, int c);
std::int64_t nonsquare_locus_sum(const Field& f, int a, int b, int c);
/// Total sum minus the cone, the origin and the square locus.
std::int64_t nonsquare_locus_sum_derived(const Field& f, int a, int b, int c);
std::int64_t nonsquare_locus_sum_brute(const Field& f, int a, int b, int c);

struct EvenLocusSums {
  std::int64_t diagonal = 0;  // det != 0, x = z = 0
  std::int64_t mixed = 0;     // det != 0, (x, z) != (0, 0)
  friend bool operator==(const EvenLocusSums&, const EvenLocusSums&) = default;
};
EvenLocusSums even_locus_sums(const Field& f, int a, int b, int c);
EvenLocusSums even_locus_sums_brute(const Field& f, int a, int b, int c);

struct CheckReport {
  bool passed = true;
  std::size_t checks = 0;
  std::string failure;  // first counterexample, empty when passed
  void fail(const std::string& msg) {
    if (passed) failure = msg;
    passed = false;
  }
};

/// All closed forms against brute force for every (a, b, c).
CheckReport verify_lemmas(const Field& f);
/// y^2 - xi x^2 = 1 has q + 1 solutions (odd q); |F_q°| = q / 2 (even q).
CheckReport verify_counting_facts(const Field& f);

// ---------------------------------------------------------------------------
// Characters of the torus T of a Bessel datum.

struct TorusCharacter {
  /// split odd: (j1, j2) with chi = zeta_{q-1}^{j1 log alpha_+ + j2 log alpha_-};
  /// nonsplit odd: (j) on F_{q^2}^x via alpha_+;
  /// even: (k, j), k a character of Z and j the index on <gamma> or <eta>.
  std::vector<int> index;
  /// chi(t) = zeta_e^{exponent[t]} for each torus element, e the table conductor.
  std::vector<long long> exponent;
  std::string label() const;
};

std::vector<TorusCharacter> torus_characters(const TorusStructure& torus, int conductor);

/// Everything needed to evaluate Hom_R for one datum.
struct DatumContext {
  BesselDatum datum;
  TorusStructure torus;
  std::vector<TorusCharacter> characters;
  std::vector<std::size_t> r_class;  // class of t * n(x, y, z) at t * q^3 + siegel_index
  std::vector<int> form_trace;       // Tr(-(ax + by + cz)) at siegel_index
};

struct S1S2 {
  Rational s1{0}, s2{0};
};

struct HomNRow {
  std::size_t row = 0;
  std::int64_t degree = 0;
  std::array<std::int64_t, 4> dims{};
  bool generic = false;
  bool cuspidal = false;
  friend bool operator==(const HomNRow&, const HomNRow&) = default;
};

struct HomDimReportN {
  int q = 0;
  std::vector<HomNRow> rows;
  friend bool operator==(const HomDimReportN&, const HomDimReportN&) = default;
};

struct HomRRecord {
  std::size_t row = 0;
  std::int64_t degree = 0;
  std::size_t chi = 0;
  std::vector<int> chi_index;
  bool central_match = false;
  std::int64_t dim = 0;
  Rational s1{0}, s2{0};
  friend bool operator==(const HomRRecord&, const HomRRecord&) = default;
};

struct HomDimReportR {
  int q = 0;
  BesselDatum datum;
  TorusKind kind = TorusKind::split;
  std::vector<HomRRecord> records;  // by row, then character
  friend bool operator==(const HomDimReportR&, const HomDimReportR&) = default;
};

class BesselEngine {
 public:
  explicit BesselEngine(std::shared_ptr<const CharacterTable> table);

  const CharacterTable& table() const { return *table_; }
  const ClassData& classes() const { return *table_->classes; }
  const Field& field() const { return classes().field(); }
  int conductor() const { return table_->conductor; }
  const CentralCharacter& central(std::size_t row) const { return central_[row]; }

  /// (1/q^3) sum_n psi_scale(-(ax + by + cz)) theta(n).
  std::int64_t hom_dim_N(std::size_t row, int a, int b, int c, int psi_scale = 1) const;
  /// Same value from theta at the four orbit representatives and the lemma sums.
  std::int64_t hom_dim_N_four_class(std::size_t row, int a, int b, int c) const;
  /// Same, but with the representatives built from an alternative field (e.g. another xi).
  std::int64_t hom_dim_N_four_class(std::size_t row, int a, int b, int c, const Field& alt) const;

  DatumContext context(const BesselDatum& d, int psi_scale = 1) const;
  /// F(t) = sum_n psi(-(ax + by + cz)) theta(t n), one value per torus element.
  std::vector<Cyclotomic> torus_profile(const DatumContext& ctx, std::size_t row) const;
  bool central_match(const DatumContext& ctx, std::size_t row, const TorusCharacter& chi) const;
  std::int64_t hom_dim_R(const DatumContext& ctx, std::size_t row, const TorusCharacter& chi) const;
  std::int64_t hom_dim_R(const DatumContext& ctx, const std::vector<Cyclotomic>& profile,
                         const TorusCharacter& chi) const;
  S1S2 s1_s2_decomposition(const DatumContext& ctx, const std::vector<Cyclotomic>& profile,
                           const TorusCharacter& chi) const;

  /// (1/q^4) sum_u psi(-(l1 u_12 + l2 u_23)) theta(u) over the unitriangular group.
  std::int64_t whittaker_dim(std::size_t row, int l1 = 1, int l2 = 1) const;
  std::int64_t klingen_invariants(std::size_t row) const;
  bool generic(std::size_t row) const;
  bool cuspidal(std::size_t row) const;

  HomDimReportN report_N() const;
  HomDimReportR report_R(const BesselDatum& d) const;

 private:
  std::int64_t average(const CyclotomicAccumulator& acc, std::int64_t denominator, const char* what) const;

  std::shared_ptr<const CharacterTable> table_;
  std::vector<CentralCharacter> central_;
  std::vector<std::size_t> n_class_;  // class of n(x, y, z) at siegel_index
  std::vector<std::size_t> u_class_;
  std::vector<std::array<int, 2>> u_coords_;
  std::vector<std::size_t> klingen_class_;
};

// ---------------------------------------------------------------------------
// The symbolic tables, instantiated at q, and the verifiers.

using QPoly = std::int64_t (*)(std::int64_t);

struct SymbolicRowN {
  const char* name;
  QPoly degree;
  std::array<QPoly, 4> dims;
  bool cuspidal;
  bool generic;
};

/// Hom_N table rows for odd q (GSp characters) or even q (Sp characters).
const std::vector<SymbolicRowN>& table_N_rows(bool even);

/// Fully explicit rows of the even-q Hom_R table: values in terms of delta_{j,0}.
struct SymbolicRowR {
  const char* name;
  std::int64_t split[2];     // value when j != 0, when j = 0
  std::int64_t nonsplit[2];  // same, nonsplit torus
};
const std::vector<SymbolicRowR>& table_R_theta_rows();

struct RowMatch {
  std::size_t row = 0;
  std::vector<std::string> candidates;
};

struct TableNVerification {
  CheckReport check;
  HomDimReportN report;
  std::vector<RowMatch> matches;
};

/// Rank-class constancy, path agreement, psi-scale independence, flag sanity and
/// row matching against the instantiated table.
TableNVerification verify_table_N(const BesselEngine& engine);

struct TableRVerification {
  CheckReport check;
  std::size_t data = 0;
  std::size_t records = 0;
  std::size_t two_chi_rows = 0;        // (row, datum) pairs with two chi of dim 1, nongeneric
  std::size_t dim_two_records = 0;     // split records with dim 2
  std::size_t theta_rows_checked = 0;  // literal even-q theta-row checks
};

/// Integrality, isotypic completeness, induced-dimension sum rules, S1 + S2
/// agreement and (for q = 2) the literal theta rows of the even Hom_R table.
TableRVerification verify_table_R(const BesselEngine& engine, const TableNVerification& table_n);
/// Bounds and at-most-two-chi statements for every datum and character.
TableRVerification verify_corollary(const BesselEngine& engine);

struct GenericityEquivalence {
  bool holds = true;
  std::size_t rows = 0;
  std::string failure;
};

/// generic <=> nonzero Hom_R for every split datum and every chi with chi|_Z = omega.
GenericityEquivalence check_genericity_equivalence(const BesselEngine& engine);

}  // namespace gsp4
