#pragma once

// Exhaustive enumeration of branch assignments sigma -> D_sigma on P1 x P1
// for Z_2^n-covers, filtered by target invariants and reduced modulo
// GL(n, F2) x (F <-> G).
//
// Slots are filled in a fixed schedule (non-unit elements first, unit
// vectors last). A partial assignment is pruned when
//   * no completion of the branch totals (x, y) can hit the K^2 target,
//   * the odd-coordinate parity residual  sum{sigma : D_sigma odd} sigma
//     can no longer be cancelled by the remaining slots (this is exactly
//     2-divisibility of every branch sum), or
//   * the nonzero slots can no longer span G (some L_chi would be 0).
// Orbit reduction is by canonical-form filtering at the leaves.

#include <abelcov/building.hpp>
#include <abelcov/canonical.hpp>
#include <abelcov/invariants.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace abelcov {

struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  bool contains(std::int64_t v) const { return lo <= v && v <= hi; }
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

struct SearchTargets {
  std::optional<IntRange> K2;
  std::optional<IntRange> pg;
  std::optional<IntRange> q;
  std::optional<IntRange> chi;
  bool single_contributing = false;
  std::optional<std::int64_t> canonical_degree;
};

/// "K2=32,pg=4,q=1" or with ranges "K2=30..34".
SearchTargets parse_targets(std::string_view text);

inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000;
inline constexpr int kMaxSearchRank = 5;

struct SearchSpec {
  int rank = 4;
  /// Allowed classes for D_sigma, indexed by sigma's mask; entry 0 unused.
  std::vector<std::vector<DivisorClass>> slot_classes;
  SearchTargets targets;
  bool symmetry = true;
  unsigned jobs = 1;
  std::uint64_t budget = kDefaultBudget;

  static SearchSpec uniform(int rank, const std::vector<DivisorClass>& classes);
};

struct SearchResult {
  BuildingData data;  // canonical representative, bundles solved
  std::uint64_t orbit_size = 1;
  InvariantSet invariants;
  std::vector<std::pair<Character, std::int64_t>> contributing;
  std::optional<std::int64_t> canonical_degree;
};

struct SearchStats {
  std::uint64_t estimated_nodes = 0;
  std::uint64_t nodes = 0;      // partial assignments that survived pruning, root included
  std::uint64_t leaves = 0;     // complete assignments giving a valid cover
  std::uint64_t matches = 0;    // leaves passing every filter
  std::uint64_t emitted = 0;    // orbit representatives
  std::uint64_t symmetry_order = 1;
};

struct SearchOutcome {
  std::vector<SearchResult> results;  // sorted by canonical form
  SearchStats stats;
};

/// Fill order of the slots, as masks.
std::vector<Mask> slot_schedule(int rank);

/// Upper bound on visited nodes (exact for the totals and parity prunes).
std::uint64_t estimate_nodes(const SearchSpec& spec);

/// Throws BudgetExceeded when estimate_nodes exceeds spec.budget.
SearchOutcome enumerate(const SearchSpec& spec);

/// Prefix in slot_schedule order. True when some completion may be a solution.
bool prune_bound(const SearchSpec& spec, std::span<const DivisorClass> prefix);

/// Lexicographically minimal relabeling under GL(n, F2) x (F <-> G); the
/// order compares D_sigma for sigma = 1, 2, ... by class coordinates.
/// Quadric base, rank <= 4.
BuildingData canonicalize(const BuildingData& data);

/// Key used for the lexicographic order: D_sigma for sigma = 1..2^n - 1.
std::vector<DivisorClass> branch_key(const BuildingData& data);

}  // namespace abelcov
