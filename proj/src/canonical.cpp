#include <abelcov/canonical.hpp>

namespace abelcov {

std::vector<std::pair<Character, std::int64_t>> contributing_characters(const BuildingData& data) {
  std::vector<std::pair<Character, std::int64_t>> out;
  for (const auto& [chi, h] : geometric_genus(data).contributions) {
    if (h > 0) out.emplace_back(chi, h);
  }
  return out;
}

Subgroup trivially_acting_subgroup(const BuildingData& data) {
  const auto contributing = contributing_characters(data);
  if (contributing.empty() && data.surface().pg == 0) {
    throw DegenerateCanonical("no canonical sections: no character contributes and pg(Y) = 0");
  }
  std::vector<Character> chars;
  for (const auto& [chi, h] : contributing) chars.push_back(chi);
  return annihilator(span(data.rank(), chars));
}

QuotientCover quotient_cover(const BuildingData& data, const Subgroup& subgroup, QuotientMode mode) {
  if (subgroup.ambient_rank() != data.rank()) throw RankMismatch("subgroup rank differs from group rank");
  if (subgroup.dimension() == 0) throw InputError("quotient needs a nontrivial subgroup");
  if (subgroup.dimension() == data.rank()) throw InputError("quotient needs a proper subgroup");

  std::vector<GroupElement> ramified;
  for (const GroupElement& sigma : data.nonzero_elements()) {
    if (subgroup.contains(sigma) && !data.branch(sigma).is_zero()) ramified.push_back(sigma);
  }
  if (mode == QuotientMode::Strict && !ramified.empty()) {
    std::string list;
    for (const auto& s : ramified) list += (list.empty() ? "" : ",") + s.to_string();
    throw UnsupportedRamification("subgroup meets the inertia: D_sigma != 0 for sigma in {" + list + "}");
  }

  const int quotient_rank = data.rank() - subgroup.dimension();
  BuildingData grouped(data.surface_ptr(), quotient_rank);
  grouped.assumptions = data.assumptions;
  std::vector<std::pair<GroupElement, DivisorClass>> components;
  for (const GroupElement& sigma : data.nonzero_elements()) {
    if (subgroup.contains(sigma)) continue;
    const DivisorClass& d = data.branch(sigma);
    const GroupElement tau = project_to_quotient(sigma, subgroup);
    grouped.set_branch(tau, grouped.branch(tau) + d);
    if (!d.is_zero()) components.emplace_back(sigma, d);
  }
  QuotientCover out{subgroup, quotient_positions(subgroup), with_solved_bundles(grouped), std::move(ramified),
                    std::move(components), std::nullopt};
  if (quotient_rank == 1) {
    std::vector<DivisorClass> classes;
    for (const auto& [sigma, d] : out.components) classes.push_back(d);
    out.node_count = double_cover_node_count(data.surface(), classes);
  }
  return out;
}

std::int64_t double_cover_node_count(const BaseSurface& surface, std::span<const DivisorClass> components) {
  std::int64_t nodes = 0;
  for (std::size_t i = 0; i < components.size(); ++i) {
    for (std::size_t j = i + 1; j < components.size(); ++j) {
      nodes = checked_add(nodes, intersect(surface, components[i], components[j]));
    }
  }
  return nodes;
}

namespace {

// Degree of the map given by |S| on a preset, for the systems where it is known.
std::optional<std::int64_t> base_map_degree(const BaseSurface& y, const DivisorClass& s, std::string& note) {
  switch (y.kind) {
    case SurfaceKind::Quadric:
      if (s[0] >= 1 && s[1] >= 1) {
        note = "|" + format_class(y, s) + "| embeds P1xP1 (Segre-Veronese)";
        return 1;
      }
      note = "|" + format_class(y, s) + "| does not map P1xP1 onto a surface";
      return std::nullopt;
    case SurfaceKind::Plane:
      if (s[0] >= 1) {
        note = "|" + format_class(y, s) + "| embeds P2 (Veronese)";
        return 1;
      }
      note = "|" + format_class(y, s) + "| is not a positive-dimensional system";
      return std::nullopt;
    case SurfaceKind::Custom:
      break;
  }
  note = "no degree table for a custom base surface";
  return std::nullopt;
}

bool base_point_free_on_preset(const BaseSurface& y, const DivisorClass& s) {
  if (y.kind == SurfaceKind::Custom) return false;
  for (auto c : s.coords()) {
    if (c < 0) return false;
  }
  return true;
}

}  // namespace

CanonicalReport canonical_degree_report(const BuildingData& data) {
  const BaseSurface& y = data.surface();
  const InvariantSet inv = compute_invariants(data);
  if (inv.pg <= 2) {
    throw DegenerateCanonical("pg(X) = " + std::to_string(inv.pg) + ": the canonical image is not a surface");
  }
  CanonicalReport report;
  report.pg = inv.pg;
  report.contributing = contributing_characters(data);
  report.trivially_acting = trivially_acting_subgroup(data);
  report.annihilator = annihilator(report.trivially_acting);

  const Subgroup& h = report.trivially_acting;
  bool inertia_disjoint = false;
  if (h.dimension() == 0) {
    inertia_disjoint = true;
    report.factorization_note = "H is trivial; the canonical map does not factor through a quotient";
  } else if (h.dimension() == data.rank()) {
    report.factorization_note = "H is the whole group; the canonical map factors through Y";
  } else {
    try {
      report.factorization = quotient_cover(data, h, QuotientMode::Strict);
      inertia_disjoint = true;
      report.factorization_note = "canonical map factors through X/H, a Z_2^" +
                                  std::to_string(report.factorization->quotient_rank()) + "-cover of Y";
    } catch (const UnsupportedRamification& e) {
      report.factorization_note = std::string("factorization through X/H not constructed: ") + e.what();
    }
  }

  const std::int64_t group_order = std::int64_t{1} << data.rank();
  if (report.contributing.size() == 1 && y.pg == 0) {
    const auto& [chi0, dim] = report.contributing.front();
    const DivisorClass system = y.canonical + *data.bundle(chi0);
    report.base_system = system;
    std::string table_note;
    report.base_map_degree = base_map_degree(y, system, table_note);
    const std::int64_t square = intersect(y, system, system);
    if (report.base_map_degree) {
      report.canonical_degree = checked_mul(group_order, *report.base_map_degree);
      report.image = ImageDescriptor{dim - 1, square};
      report.degree_note = "canonical system is the pullback of |" + format_class(y, system) + "| (character " +
                           chi0.to_string() + "); " + table_note;
    } else {
      report.degree_note = "single contributing character " + chi0.to_string() + ", but " + table_note;
    }
    report.ledger.push_back({"base system is birational onto its image",
                             report.base_map_degree ? Justification::JustifiedByPattern : Justification::Unverified,
                             table_note});

    const bool flags = data.assumptions.components_smooth && data.assumptions.normal_crossings;
    const bool numeric = report.canonical_degree && checked_mul(*report.canonical_degree, square) == inv.K2;
    const bool pattern = inertia_disjoint && base_point_free_on_preset(y, system) && flags && numeric;
    std::string note;
    if (pattern) {
      note = "X -> X/H ramifies only over nodes of X/H, |" + format_class(y, system) +
             "| is base point free, and deg * image^2 = K^2";
    } else {
      if (!inertia_disjoint) note += "H meets the inertia; ";
      if (!base_point_free_on_preset(y, system)) note += "base system not known to be base point free; ";
      if (!flags) note += "smoothness/normal crossings not declared; ";
      if (!numeric) note += "deg * image^2 != K^2; ";
      note.resize(note.size() - 2);
    }
    report.ledger.push_back({"|K_X| is base point free",
                             pattern ? Justification::JustifiedByPattern : Justification::Unverified, note});
  } else {
    std::string why;
    if (y.pg != 0) {
      why = "pg(Y) > 0 also contributes";
    } else {
      why = std::to_string(report.contributing.size()) + " characters contribute";
    }
    report.degree_note = "undetermined: " + why + "; H has index " +
                         std::to_string(std::int64_t{1} << (data.rank() - h.dimension()));
    report.ledger.push_back({"|K_X| is base point free", Justification::Unverified, "pattern does not apply"});
  }
  return report;
}

}  // namespace abelcov
