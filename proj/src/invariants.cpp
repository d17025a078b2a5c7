#include <abelcov/invariants.hpp>

namespace abelcov {

DivisorClass two_canonical_class(const BuildingData& data) {
  return 2 * data.surface().canonical + total_branch(data);
}

std::int64_t k_squared(const BuildingData& data) {
  const DivisorClass two_k = two_canonical_class(data);
  const std::int64_t square = intersect(data.surface(), two_k, two_k);
  // 2^n (2K_Y + B)^2 / 4 stays exact for n = 1 as well: 2K_Y + B = 2(K_Y + L).
  const std::int64_t scaled = checked_mul(square, std::int64_t{1} << data.rank());
  if (scaled % 4 != 0) throw ParityError("2^n (2K_Y + B)^2 is not divisible by 4");
  return scaled / 4;
}

namespace {

const DivisorClass& require_bundle(const BuildingData& data, const Character& chi) {
  const auto& l = data.bundle(chi);
  if (!l) throw InvalidBuildingData("L_" + chi.to_string() + " is missing");
  return *l;
}

}  // namespace

GenusBreakdown geometric_genus(const BuildingData& data) {
  const BaseSurface& y = data.surface();
  GenusBreakdown out;
  out.base_pg = y.pg;
  out.total = y.pg;
  for (const Character& chi : data.nontrivial_characters()) {
    const std::int64_t h = h0(y, y.canonical + require_bundle(data, chi));
    out.contributions.emplace_back(chi, h);
    out.total = checked_add(out.total, h);
  }
  return out;
}

std::vector<std::pair<Character, std::int64_t>> euler_terms(const BuildingData& data) {
  const BaseSurface& y = data.surface();
  std::vector<std::pair<Character, std::int64_t>> out;
  for (const Character& chi : data.nontrivial_characters()) {
    const DivisorClass& l = require_bundle(data, chi);
    const std::int64_t product = intersect(y, l, l + y.canonical);
    if (product % 2 != 0) {
      throw ParityError("L(L+K) is odd at character " + chi.to_string() +
                        "; the base surface data is inconsistent");
    }
    out.emplace_back(chi, product / 2);
  }
  return out;
}

std::int64_t euler_characteristic(const BuildingData& data) {
  std::int64_t total = checked_mul(std::int64_t{1} << data.rank(), data.surface().chi);
  for (const auto& [chi, term] : euler_terms(data)) total = checked_add(total, term);
  return total;
}

std::int64_t irregularity(std::int64_t pg, std::int64_t chi) {
  const std::int64_t q = pg + 1 - chi;
  if (q < 0) {
    throw NegativeIrregularity("derived irregularity is negative (pg=" + std::to_string(pg) +
                               ", chi=" + std::to_string(chi) + ")");
  }
  return q;
}

InvariantSet compute_invariants(const BuildingData& data) {
  const ValidationReport report = validate(data);
  if (!report.passed()) throw InvalidBuildingData("building data failed validation");
  InvariantSet inv;
  inv.two_K = two_canonical_class(data);
  inv.K2 = k_squared(data);
  GenusBreakdown genus = geometric_genus(data);
  inv.pg = genus.total;
  inv.pg_contributions = std::move(genus.contributions);
  inv.chi_terms = euler_terms(data);
  inv.chi = euler_characteristic(data);
  inv.q = irregularity(inv.pg, inv.chi);
  return inv;
}

BmyGate bmy_gate(std::int64_t pg, std::int64_t K2, std::int64_t chi) {
  return BmyGate{checked_mul(16, pg - 2), K2, checked_mul(9, chi)};
}

BmyGate bmy_gate(const InvariantSet& inv) { return bmy_gate(inv.pg, inv.K2, inv.chi); }

PositivityReport positivity_gate(const BuildingData& data) {
  PositivityReport out;
  out.two_K = two_canonical_class(data);
  const SurfaceKind kind = data.surface().kind;
  if (kind != SurfaceKind::Quadric && kind != SurfaceKind::Plane) {
    out.reason = "no ampleness rule for a custom base surface";
    return out;
  }
  bool all_positive = true;
  for (auto c : out.two_K.coords()) all_positive = all_positive && c > 0;
  if (all_positive) {
    out.verdict = PositivityVerdict::MinimalGeneralType;
    out.reason = "2K_X is the pullback of the ample class " + format_class(data.surface(), out.two_K);
  } else {
    out.reason = "2K_Y + B = " + format_class(data.surface(), out.two_K) + " is not ample";
  }
  return out;
}

}  // namespace abelcov
