#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "gsp4/conj.hpp"
#include "gsp4/cyclotomic.hpp"

namespace gsp4 {

class OrthogonalityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exact character table. Rows are irreducible characters sorted by degree and
/// then by their value sequence; the value at class k has conductor
/// element_order(k).
struct CharacterTable {
  std::shared_ptr<const ClassData> classes;
  int conductor = 1;        // exponent of the group
  std::uint64_t prime = 0;  // modulus used by Dixon-Schneider (for even q, on Sp(4,q))
  std::vector<std::vector<Cyclotomic>> chars;
  std::vector<std::int64_t> degrees;

  std::size_t num_rows() const { return chars.size(); }
  const Cyclotomic& value(std::size_t row, std::size_t k) const { return chars[row][k]; }
};

/// Smallest prime l = 1 mod e with l > 2 sqrt(order).
std::uint64_t dixon_prime(int exponent, std::uint64_t order);

CharacterTable dixon_schneider(std::shared_ptr<const ClassData> cd);
/// Characters of G = Sp(4,q) x Z from those of Sp(4,q), q even.
CharacterTable even_q_assembly(const CharacterTable& sp_table);

/// Throws OrthogonalityError unless both orthogonality relations hold exactly,
/// sum of squared degrees is |G|, and values at g and g^{-1} are conjugate.
void verify_orthogonality(const CharacterTable& ct);

struct CentralCharacter {
  int order = 1;  // q - 1
  int index = 0;  // omega(g I) = zeta_{q-1}^{index * log g}
  std::vector<Cyclotomic> values;  // omega at generator^k I, k = 0 .. q-2
};

CentralCharacter central_character(const CharacterTable& ct, std::size_t row);

struct TableOptions {
  EnumerationOptions enumeration;
};

/// Full pipeline: enumerate, compute classes, build the table of G.
CharacterTable compute_character_table(std::shared_ptr<const Field> f, const TableOptions& opts = {});
/// Class data of G only (odd q: GSp classes; even q: Sp classes times Z).
std::shared_ptr<const ClassData> compute_group_classes(std::shared_ptr<const Field> f,
                                                       const EnumerationOptions& opts = {});

}  // namespace gsp4
