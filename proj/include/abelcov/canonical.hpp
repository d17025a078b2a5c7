#pragma once

// Character-theoretic analysis of the canonical map of a Z_2^n-cover.
//
// H^0(X, K_X) splits into eigenspaces H^0(Y, K_Y + L_chi) on which G acts by
// chi. The subgroup H cut out by the contributing characters acts trivially
// on canonical sections, so the canonical map factors through X/H.

#include <abelcov/building.hpp>
#include <abelcov/invariants.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace abelcov {

/// Nontrivial characters with h0(K_Y + L_chi) > 0. pg(Y) is not listed.
std::vector<std::pair<Character, std::int64_t>> contributing_characters(const BuildingData& data);

/// Intersection of the kernels of the contributing characters.
/// Throws DegenerateCanonical if nothing contributes and pg(Y) = 0.
Subgroup trivially_acting_subgroup(const BuildingData& data);

enum class QuotientMode {
  /// D_sigma with sigma in H are dropped: they ramify X -> X/H only.
  Permissive,
  /// Any nonzero D_sigma with sigma in H raises UnsupportedRamification.
  Strict,
};

struct QuotientCover {
  Subgroup subgroup;
  std::vector<int> positions;  // coordinates of G/H inside G
  BuildingData data;           // (G/H)-cover of the same base, bundles solved
  std::vector<GroupElement> ramified_in_subgroup;
  /// Original branch components lying over nonzero cosets.
  std::vector<std::pair<GroupElement, DivisorClass>> components;
  std::optional<std::int64_t> node_count;  // set when |G/H| = 2

  int quotient_rank() const { return data.rank(); }
};

/// Requires H proper and nontrivial.
QuotientCover quotient_cover(const BuildingData& data, const Subgroup& subgroup,
                             QuotientMode mode = QuotientMode::Permissive);

/// Nodes of a double cover branched on pairwise transverse smooth components:
/// one per intersection point of two distinct components.
std::int64_t double_cover_node_count(const BaseSurface& surface, std::span<const DivisorClass> components);

enum class Justification { JustifiedByPattern, Unverified };

struct LedgerEntry {
  std::string assumption;
  Justification status = Justification::Unverified;
  std::string note;
};

struct ImageDescriptor {
  std::int64_t projective_dimension = 0;  // h0 - 1
  std::int64_t self_intersection = 0;     // of the base system
};

struct CanonicalReport {
  std::vector<std::pair<Character, std::int64_t>> contributing;
  std::int64_t pg = 0;
  Subgroup trivially_acting;
  CharacterSubgroup annihilator;
  std::optional<QuotientCover> factorization;
  std::string factorization_note;
  std::optional<DivisorClass> base_system;  // K_Y + L_chi0 when a single character carries everything
  std::optional<std::int64_t> base_map_degree;
  std::optional<std::int64_t> canonical_degree;  // empty = undetermined
  std::string degree_note;
  std::optional<ImageDescriptor> image;
  std::vector<LedgerEntry> ledger;
};

/// Throws DegenerateCanonical when pg(X) <= 2.
CanonicalReport canonical_degree_report(const BuildingData& data);

}  // namespace abelcov
