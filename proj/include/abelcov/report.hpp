#pragma once

// Human-readable and JSON renderings of every analysis. The text layout of
// the full report follows the order of the construction: validation,
// invariants, canonical map, quotient, fibrations.

#include <abelcov/building.hpp>
#include <abelcov/canonical.hpp>
#include <abelcov/fibration.hpp>
#include <abelcov/invariants.hpp>
#include <abelcov/search.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace abelcov {

using Json = nlohmann::ordered_json;

/// "Z₂⁴"
std::string group_name(int rank);
/// "P¹×P¹", "P²" or the surface name.
std::string surface_name(const BaseSurface& surface);

Json class_json(const DivisorClass& d);

std::string render_validation(const BuildingData& data, const ValidationReport& report);
Json validation_json(const BuildingData& data, const ValidationReport& report);

std::string render_invariants(const BuildingData& data, const InvariantSet& inv, const BmyGate& bmy,
                              const PositivityReport& positivity);
Json invariants_json(const BuildingData& data, const InvariantSet& inv, const BmyGate& bmy,
                     const PositivityReport& positivity);

std::string render_canonical(const BuildingData& data, const CanonicalReport& report);
Json canonical_json(const BuildingData& data, const CanonicalReport& report);

std::string render_quotient(const BuildingData& data, const QuotientCover& quotient);
Json quotient_json(const BuildingData& data, const QuotientCover& quotient);

struct FiberAnalysis {
  std::vector<FiberRestriction> rulings;  // one per basis ruling
  std::vector<std::pair<Character, EllipticProbe>> products;  // index-2 quotients ker(chi) that are products
  std::optional<std::string> albanese;
};

/// Restricts to both rulings of the quadric and probes every index-2 quotient.
FiberAnalysis analyze_fibers(const BuildingData& data);
std::string render_fibers(const BuildingData& data, const FiberAnalysis& analysis);
Json fibers_json(const BuildingData& data, const FiberAnalysis& analysis);

/// "canonical map: degree 16 Z₂⁴-cover of P¹×P¹" or an undetermined verdict.
std::string canonical_verdict(const BuildingData& data, const CanonicalReport& report);

Json search_result_json(const SearchResult& result);
Json search_summary_json(const SearchStats& stats);

}  // namespace abelcov
