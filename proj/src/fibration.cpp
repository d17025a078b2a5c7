#include <abelcov/fibration.hpp>

namespace abelcov {

std::int64_t FiberRestriction::branch_points() const {
  std::int64_t total = 0;
  for (const auto& [sigma, count] : points) total = checked_add(total, count);
  return total;
}

FiberRestriction restrict_to_fiber(const BuildingData& data, const DivisorClass& ruling) {
  const BaseSurface& y = data.surface();
  if (intersect(y, ruling, ruling) != 0) {
    throw InputError("restriction class " + format_class(y, ruling) + " has nonzero self-intersection");
  }
  if (ruling.is_zero() || !is_effective(y, ruling)) {
    throw InputError("restriction class must be a nonzero effective class");
  }
  FiberRestriction out;
  out.rank = data.rank();
  out.ruling = ruling;
  out.inertia = Subgroup(data.rank());
  for (const GroupElement& sigma : data.nonzero_elements()) {
    const std::int64_t count = intersect(y, data.branch(sigma), ruling);
    if (count < 0) throw InputError("negative intersection with the fiber class");
    if (count > 0) {
      out.points.emplace_back(sigma, count);
      out.inertia.insert(sigma);
    }
  }
  out.components = static_cast<std::int64_t>((std::uint64_t{1} << data.rank()) / out.inertia.order());
  out.genus = fiber_genus(out);
  return out;
}

std::int64_t fiber_genus(const FiberRestriction& restriction) {
  const auto sheets = static_cast<std::int64_t>(restriction.inertia.order());
  const std::int64_t points = restriction.branch_points();
  if (points > 0 && sheets < 2) throw InputError("branch points without inertia");
  const std::int64_t euler_defect = checked_add(-2 * sheets, checked_mul(points, sheets / 2));  // 2g - 2
  if (euler_defect % 2 != 0) {
    throw ParityError("Riemann-Hurwitz gives odd 2g - 2; the inertia does not sum to zero on the fiber");
  }
  const std::int64_t genus = euler_defect / 2 + 1;
  if (genus < 0) throw NegativeGenus("negative genus " + std::to_string(genus) + " on the fiber");
  return genus;
}

EllipticProbe elliptic_quotient_probe(const BuildingData& data, const Subgroup& subgroup) {
  const QuotientCover quotient = quotient_cover(data, subgroup, QuotientMode::Permissive);
  if (quotient.quotient_rank() != 1) {
    throw InputError("elliptic probe needs a subgroup of index 2");
  }
  const BaseSurface& y = data.surface();
  EllipticProbe probe;
  probe.branch = quotient.data.branch(GroupElement(1, 1));
  int nonzero = 0;
  int index = -1;
  for (int i = 0; i < probe.branch.rank(); ++i) {
    if (probe.branch[i] != 0) {
      ++nonzero;
      index = i;
    }
  }
  if (y.kind != SurfaceKind::Quadric || nonzero != 1 || probe.branch[index] < 0) {
    probe.description = "not a ruling-branched product";
    return probe;
  }
  const std::int64_t k = probe.branch[index];
  if (k % 2 != 0) throw ParityError("odd number of branch fibers in a double cover");
  probe.ruling_index = index;
  probe.branch_multiple = k;
  probe.curve_genus = k / 2 - 1;
  probe.product = true;
  const std::string kind = *probe.curve_genus == 1 ? " (elliptic)" : "";
  probe.description = "P1 x C, C a genus-" + std::to_string(*probe.curve_genus) + kind +
                      " double cover of P1 branched at " + std::to_string(k) + " points";
  return probe;
}

}  // namespace abelcov
