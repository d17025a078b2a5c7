#include <abelcov/building.hpp>

namespace abelcov {

BuildingData::BuildingData(SurfacePtr surface, int rank) : surface_(std::move(surface)), rank_(rank) {
  if (!surface_) throw InputError("building data needs a base surface");
  GroupElement::zero(rank);  // validates the rank
  const std::size_t size = std::size_t{1} << rank;
  branch_.assign(size, DivisorClass::zero(surface_->rank()));
  bundles_.assign(size, std::nullopt);
}

std::size_t BuildingData::index_of(const GroupElement& sigma) const {
  sigma.require_same_rank(GroupElement::zero(rank_));
  if (sigma.is_zero()) throw InputError("D_sigma is only defined for sigma != 0");
  return sigma.bits();
}

std::size_t BuildingData::index_of(const Character& chi) const {
  chi.require_same_rank(Character::zero(rank_));
  if (chi.is_zero()) throw InputError("L_chi is only defined for nontrivial chi");
  return chi.bits();
}

const DivisorClass& BuildingData::branch(const GroupElement& sigma) const { return branch_[index_of(sigma)]; }

void BuildingData::set_branch(const GroupElement& sigma, DivisorClass d) {
  if (d.rank() != surface_->rank()) throw RankMismatch("branch class has wrong Picard rank");
  branch_[index_of(sigma)] = std::move(d);
}

const std::optional<DivisorClass>& BuildingData::bundle(const Character& chi) const {
  return bundles_[index_of(chi)];
}

void BuildingData::set_bundle(const Character& chi, DivisorClass l) {
  if (l.rank() != surface_->rank()) throw RankMismatch("bundle class has wrong Picard rank");
  bundles_[index_of(chi)] = std::move(l);
}

bool BuildingData::has_all_bundles() const {
  for (std::size_t i = 1; i < bundles_.size(); ++i) {
    if (!bundles_[i]) return false;
  }
  return true;
}

std::vector<GroupElement> BuildingData::nonzero_elements() const {
  std::vector<GroupElement> out;
  for (Mask m = 1; m < group_order(); ++m) out.emplace_back(rank_, m);
  return out;
}

std::vector<Character> BuildingData::nontrivial_characters() const {
  std::vector<Character> out;
  for (Mask m = 1; m < group_order(); ++m) out.emplace_back(rank_, m);
  return out;
}

DivisorClass branch_sum(const BuildingData& data, const Character& chi) {
  if (chi.is_zero()) throw InputError("branch_sum is undefined for the trivial character");
  DivisorClass total = DivisorClass::zero(data.surface().rank());
  for (const GroupElement& sigma : data.nonzero_elements()) {
    if (char_eval(chi, sigma) == -1) total += data.branch(sigma);
  }
  return total;
}

DivisorClass total_branch(const BuildingData& data) {
  DivisorClass total = DivisorClass::zero(data.surface().rank());
  for (const GroupElement& sigma : data.nonzero_elements()) total += data.branch(sigma);
  return total;
}

bool ValidationReport::passed() const {
  return failed_relations().empty() && non_effective_branch.empty() && trivial_bundles.empty() &&
         missing_bundles.empty();
}

std::vector<Character> ValidationReport::failed_relations() const {
  std::vector<Character> out;
  for (const auto& r : relations) {
    if (!r.holds) out.push_back(r.chi);
  }
  return out;
}

ValidationReport validate(const BuildingData& data) {
  const BaseSurface& y = data.surface();
  ValidationReport report;
  report.assumptions = data.assumptions;
  for (const Character& chi : data.nontrivial_characters()) {
    RelationCheck check{chi, std::nullopt, branch_sum(data, chi), false};
    const auto& l = data.bundle(chi);
    if (!l) {
      report.missing_bundles.push_back(chi);
    } else {
      check.twice_bundle = 2 * *l;
      check.holds = *check.twice_bundle == check.branch_sum;
      if (l->is_zero()) report.trivial_bundles.push_back(chi);
    }
    report.relations.push_back(std::move(check));
  }
  const auto sigmas = data.nonzero_elements();
  for (const GroupElement& sigma : sigmas) {
    if (!is_effective(y, data.branch(sigma))) report.non_effective_branch.push_back(sigma);
  }
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    const DivisorClass& a = data.branch(sigmas[i]);
    if (a.is_zero()) continue;
    for (std::size_t j = i + 1; j < sigmas.size(); ++j) {
      const DivisorClass& b = data.branch(sigmas[j]);
      if (b.is_zero()) continue;
      if (a == b) report.equal_nonzero_classes.emplace_back(sigmas[i], sigmas[j]);
      // Effective classes with negative intersection must share a component.
      if (intersect(y, a, b) < 0) report.forced_common_components.emplace_back(sigmas[i], sigmas[j]);
    }
  }
  return report;
}

BundleSolution solve_bundles(const BuildingData& data) {
  BundleSolution out;
  out.bundles.assign(data.group_order(), std::nullopt);
  for (const Character& chi : data.nontrivial_characters()) {
    auto half = halve(branch_sum(data, chi));
    if (!half) {
      out.odd_characters.push_back(chi);
      continue;
    }
    if (half->is_zero()) out.trivial_characters.push_back(chi);
    out.bundles[chi.bits()] = std::move(*half);
  }
  return out;
}

namespace {

std::string join(const std::vector<Character>& chars) {
  std::string s;
  for (const auto& c : chars) s += (s.empty() ? "" : ",") + c.to_string();
  return s;
}

}  // namespace

BuildingData with_solved_bundles(const BuildingData& data) {
  BundleSolution solved = solve_bundles(data);
  if (!solved.odd_characters.empty()) {
    throw DivisibilityError("branch sum is not 2-divisible at characters " + join(solved.odd_characters));
  }
  if (!solved.trivial_characters.empty()) {
    throw TrivialityError("L_chi is trivial at characters " + join(solved.trivial_characters));
  }
  BuildingData out = data;
  for (const Character& chi : data.nontrivial_characters()) out.set_bundle(chi, *solved.bundles[chi.bits()]);
  return out;
}

BuildingData relabel(const BuildingData& data, const Automorphism& map) {
  if (map.rank() != data.rank()) throw RankMismatch("automorphism rank differs from group rank");
  BuildingData out(data.surface_ptr(), data.rank());
  out.assumptions = data.assumptions;
  for (const GroupElement& sigma : data.nonzero_elements()) out.set_branch(map.apply(sigma), data.branch(sigma));
  for (const Character& chi : data.nontrivial_characters()) {
    if (const auto& l = data.bundle(chi)) out.set_bundle(map.apply(chi), *l);
  }
  return out;
}

BuildingData swap_rulings(const BuildingData& data) {
  if (data.surface().kind != SurfaceKind::Quadric) throw InputError("ruling swap needs the quadric preset");
  auto swap = [](const DivisorClass& d) { return DivisorClass{d[1], d[0]}; };
  BuildingData out(data.surface_ptr(), data.rank());
  out.assumptions = data.assumptions;
  for (const GroupElement& sigma : data.nonzero_elements()) out.set_branch(sigma, swap(data.branch(sigma)));
  for (const Character& chi : data.nontrivial_characters()) {
    if (const auto& l = data.bundle(chi)) out.set_bundle(chi, swap(*l));
  }
  return out;
}

}  // namespace abelcov
