#pragma once

// Restriction of a Z_2^n-cover to a general member of a ruling and the
// Riemann-Hurwitz genus of the resulting curve cover of P1.

#include <abelcov/building.hpp>
#include <abelcov/canonical.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace abelcov {

struct FiberRestriction {
  int rank = 0;
  DivisorClass ruling;
  std::vector<std::pair<GroupElement, std::int64_t>> points;  // sigma -> D_sigma . R, positive only
  Subgroup inertia;                                           // span of sigma with points
  std::int64_t components = 0;                                // 2^n / |inertia|
  std::int64_t genus = 0;                                     // of each component

  std::int64_t branch_points() const;
};

/// The fiber is assumed general: transverse to every D_sigma and away from
/// their pairwise intersections. Throws InputError unless R^2 = 0.
FiberRestriction restrict_to_fiber(const BuildingData& data, const DivisorClass& ruling);

/// 2g - 2 = -2 |G0| + (branch points) |G0| / 2 for each connected component.
std::int64_t fiber_genus(const FiberRestriction& restriction);

struct EllipticProbe {
  DivisorClass branch;                // branch class of the double cover X/H -> Y
  std::optional<int> ruling_index;    // basis index R with branch = k R
  std::int64_t branch_multiple = 0;   // k
  std::optional<std::int64_t> curve_genus;  // k/2 - 1
  bool product = false;
  std::string description;
};

/// Requires |G/H| = 2.
EllipticProbe elliptic_quotient_probe(const BuildingData& data, const Subgroup& subgroup);

}  // namespace abelcov
