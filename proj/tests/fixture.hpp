#pragma once

// The Z_2^4-cover of P1 x P1 used throughout the tests, typed in by hand.

#include <abelcov/building.hpp>

#include <utility>
#include <vector>

namespace fixture {

inline const std::vector<std::pair<const char*, abelcov::DivisorClass>>& branch_table() {
  static const std::vector<std::pair<const char*, abelcov::DivisorClass>> t{
      {"1000", {2, 0}}, {"0101", {2, 0}}, {"0100", {2, 0}}, {"1001", {0, 2}},
      {"1011", {0, 1}}, {"1010", {0, 1}}, {"0111", {0, 1}}, {"0110", {0, 1}},
  };
  return t;
}

inline const std::vector<std::pair<const char*, abelcov::DivisorClass>>& bundle_table() {
  static const std::vector<std::pair<const char*, abelcov::DivisorClass>> t{
      {"0001", {1, 2}}, {"0010", {0, 2}}, {"0100", {2, 1}}, {"1000", {1, 2}}, {"0011", {1, 2}},
      {"0101", {1, 2}}, {"0110", {2, 1}}, {"0111", {1, 2}}, {"1001", {2, 1}}, {"1010", {1, 2}},
      {"1011", {2, 1}}, {"1100", {3, 3}}, {"1101", {2, 1}}, {"1110", {3, 1}}, {"1111", {2, 1}},
  };
  return t;
}

inline abelcov::BuildingData branch_only() {
  abelcov::BuildingData d(abelcov::preset_p1xp1(), 4);
  for (const auto& [s, c] : branch_table()) d.set_branch(abelcov::GroupElement::parse(s), c);
  d.assumptions = {true, true, true};
  return d;
}

inline abelcov::BuildingData data() {
  abelcov::BuildingData d = branch_only();
  for (const auto& [s, c] : bundle_table()) d.set_bundle(abelcov::Character::parse(s), c);
  return d;
}

}  // namespace fixture
