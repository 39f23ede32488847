#pragma once

#include <map>
#include <memory>

#include "gsp4/bessel.hpp"

namespace fixtures {

inline std::shared_ptr<const gsp4::Field> field(int p, int n) {
  return std::make_shared<const gsp4::Field>(gsp4::Field::make(p, n));
}

/// Character table and Bessel engine for q = p^n, built once per process.
inline const gsp4::BesselEngine& engine(int p, int n) {
  static std::map<std::pair<int, int>, std::unique_ptr<gsp4::BesselEngine>> cache;
  auto& slot = cache[{p, n}];
  if (!slot) {
    auto table = std::make_shared<const gsp4::CharacterTable>(gsp4::compute_character_table(field(p, n)));
    slot = std::make_unique<gsp4::BesselEngine>(table);
  }
  return *slot;
}

}  // namespace fixtures
