#pragma once

// Numerical invariants of a smooth Z_2^n-cover X -> Y computed from its
// building data:
//
//   2 K_X   = f^*(2 K_Y + B)
//   K_X^2   = 2^(n-2) (2 K_Y + B)^2
//   p_g(X)  = p_g(Y) + sum_chi h0(K_Y + L_chi)
//   chi(O_X) = 2^n chi(O_Y) + sum_chi L_chi (L_chi + K_Y) / 2
//
// and q(X) = p_g + 1 - chi.

#include <abelcov/building.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace abelcov {

struct GenusBreakdown {
  std::int64_t base_pg = 0;
  std::vector<std::pair<Character, std::int64_t>> contributions;  // every nontrivial chi, mask order
  std::int64_t total = 0;
};

struct InvariantSet {
  std::int64_t K2 = 0;
  std::int64_t pg = 0;
  std::int64_t chi = 0;
  std::int64_t q = 0;
  DivisorClass two_K;
  std::vector<std::pair<Character, std::int64_t>> pg_contributions;
  std::vector<std::pair<Character, std::int64_t>> chi_terms;  // L(L+K)/2
};

DivisorClass two_canonical_class(const BuildingData& data);
std::int64_t k_squared(const BuildingData& data);
/// Requires every L_chi to be present.
GenusBreakdown geometric_genus(const BuildingData& data);
/// Throws ParityError if some L(L+K) is odd.
std::int64_t euler_characteristic(const BuildingData& data);
std::vector<std::pair<Character, std::int64_t>> euler_terms(const BuildingData& data);
/// q = pg + 1 - chi; throws NegativeIrregularity.
std::int64_t irregularity(std::int64_t pg, std::int64_t chi);

/// Validates first; throws InvalidBuildingData on failure.
InvariantSet compute_invariants(const BuildingData& data);

/// 16 (pg - 2) <= K^2 <= 9 chi.
struct BmyGate {
  std::int64_t lower = 0;  // 16 (pg - 2)
  std::int64_t K2 = 0;
  std::int64_t upper = 0;  // 9 chi
  bool lower_holds() const { return lower <= K2; }
  bool upper_holds() const { return K2 <= upper; }
  bool passed() const { return lower_holds() && upper_holds(); }
  std::int64_t lower_margin() const { return K2 - lower; }
  std::int64_t upper_margin() const { return upper - K2; }
};

BmyGate bmy_gate(std::int64_t pg, std::int64_t K2, std::int64_t chi);
BmyGate bmy_gate(const InvariantSet& inv);

enum class PositivityVerdict { MinimalGeneralType, Neutral };

struct PositivityReport {
  DivisorClass two_K;
  PositivityVerdict verdict = PositivityVerdict::Neutral;
  std::string reason;
};

/// Sufficient check only: 2K_X is the pullback of an ample class on a preset.
PositivityReport positivity_gate(const BuildingData& data);

}  // namespace abelcov
