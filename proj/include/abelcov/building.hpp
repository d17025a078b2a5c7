#pragma once

// Building data {L_chi, D_sigma} of a Z_2^n-cover and the relations
// 2 L_chi = sum_{chi(sigma) = -1} D_sigma that characterize it.

#include <abelcov/groups.hpp>
#include <abelcov/picard.hpp>

#include <optional>
#include <string>
#include <vector>

namespace abelcov {

/// Geometric hypotheses the class-level data cannot decide; declared by the user.
struct Assumptions {
  bool components_smooth = false;
  bool pairwise_distinct = false;
  bool normal_crossings = false;

  friend bool operator==(const Assumptions&, const Assumptions&) = default;
};

class BuildingData {
 public:
  BuildingData(SurfacePtr surface, int rank);

  const BaseSurface& surface() const { return *surface_; }
  const SurfacePtr& surface_ptr() const { return surface_; }
  int rank() const { return rank_; }
  Mask group_order() const { return Mask{1} << rank_; }

  /// D_sigma; the zero class when unset. sigma must be nonzero.
  const DivisorClass& branch(const GroupElement& sigma) const;
  void set_branch(const GroupElement& sigma, DivisorClass d);

  /// L_chi, if one was supplied or solved. chi must be nontrivial.
  const std::optional<DivisorClass>& bundle(const Character& chi) const;
  void set_bundle(const Character& chi, DivisorClass l);
  bool has_all_bundles() const;

  /// Nonzero group elements / nontrivial characters in increasing mask order.
  std::vector<GroupElement> nonzero_elements() const;
  std::vector<Character> nontrivial_characters() const;

  Assumptions assumptions;

  friend bool operator==(const BuildingData& a, const BuildingData& b) {
    return a.surface_ == b.surface_ && a.rank_ == b.rank_ && a.branch_ == b.branch_ &&
           a.bundles_ == b.bundles_ && a.assumptions == b.assumptions;
  }

 private:
  std::size_t index_of(const GroupElement& sigma) const;
  std::size_t index_of(const Character& chi) const;

  SurfacePtr surface_;
  int rank_;
  std::vector<DivisorClass> branch_;                  // by mask; slot 0 unused
  std::vector<std::optional<DivisorClass>> bundles_;  // by mask; slot 0 unused
};

/// sum of D_sigma over sigma with chi(sigma) = -1.
DivisorClass branch_sum(const BuildingData& data, const Character& chi);

/// B = sum of all D_sigma.
DivisorClass total_branch(const BuildingData& data);

struct RelationCheck {
  Character chi;
  std::optional<DivisorClass> twice_bundle;  // 2 L_chi; empty if L_chi is missing
  DivisorClass branch_sum;
  bool holds = false;
};

struct ValidationReport {
  std::vector<RelationCheck> relations;            // one per nontrivial character, mask order
  std::vector<GroupElement> non_effective_branch;  // D_sigma not effective
  std::vector<Character> trivial_bundles;          // L_chi = 0
  std::vector<Character> missing_bundles;
  Assumptions assumptions;
  // Informational only; never affect the verdict.
  std::vector<std::pair<GroupElement, GroupElement>> equal_nonzero_classes;
  std::vector<std::pair<GroupElement, GroupElement>> forced_common_components;

  bool passed() const;
  std::vector<Character> failed_relations() const;
};

ValidationReport validate(const BuildingData& data);

struct BundleSolution {
  std::vector<std::optional<DivisorClass>> bundles;  // by character mask; slot 0 unused
  std::vector<Character> odd_characters;             // branch sum not 2-divisible
  std::vector<Character> trivial_characters;         // solved L_chi = 0
  bool ok() const { return odd_characters.empty() && trivial_characters.empty(); }
};

/// L_chi = (branch_sum chi) / 2 for every nontrivial chi. Bundles already on
/// `data` are ignored.
BundleSolution solve_bundles(const BuildingData& data);

/// Copy of `data` with every L_chi replaced by the solved value; throws
/// DivisibilityError or TrivialityError when no cover exists.
BuildingData with_solved_bundles(const BuildingData& data);

/// Relabels the group by `map`: D'_{A sigma} = D_sigma, L'_{A^-T chi} = L_chi.
BuildingData relabel(const BuildingData& data, const Automorphism& map);

/// Exchanges F and G on every class (quadric preset only).
BuildingData swap_rulings(const BuildingData& data);

}  // namespace abelcov
