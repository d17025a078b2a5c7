#include <abelcov/report.hpp>

#include <iomanip>
#include <sstream>

namespace abelcov {

namespace {

std::string superscript(std::int64_t v) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string out;
  for (char c : std::to_string(v)) out += digits[c - '0'];
  return out;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string cls(const BuildingData& data, const DivisorClass& d) { return format_class(data.surface(), d); }

std::string join_elements(const std::vector<GroupElement>& v) {
  std::string s;
  for (const auto& e : v) s += (s.empty() ? "" : ", ") + e.to_string();
  return s;
}

std::string join_characters(const std::vector<Character>& v) {
  std::string s;
  for (const auto& e : v) s += (s.empty() ? "" : ", ") + e.to_string();
  return s;
}

template <class V>
Json basis_json(const Span<V>& s) {
  Json out = Json::array();
  for (const auto& b : s.basis()) out.push_back(b.to_string());
  return out;
}

const char* justification_name(Justification j) {
  return j == Justification::JustifiedByPattern ? "justified-by-pattern" : "unverified";
}

}  // namespace

std::string group_name(int rank) { return "Z₂" + superscript(rank); }

std::string surface_name(const BaseSurface& surface) {
  switch (surface.kind) {
    case SurfaceKind::Quadric:
      return "P¹×P¹";
    case SurfaceKind::Plane:
      return "P²";
    case SurfaceKind::Custom:
      break;
  }
  return surface.name;
}

Json class_json(const DivisorClass& d) { return Json(d.coords()); }

std::string render_validation(const BuildingData& data, const ValidationReport& report) {
  std::ostringstream out;
  out << "[validation] " << group_name(data.rank()) << "-cover of " << surface_name(data.surface()) << "\n";
  out << "  branch data:\n";
  for (const GroupElement& sigma : data.nonzero_elements()) {
    if (!data.branch(sigma).is_zero()) out << "    D_" << sigma.to_string() << " = " << cls(data, data.branch(sigma)) << "\n";
  }
  out << "  B = " << cls(data, total_branch(data)) << "\n";
  out << "  relations 2L_chi = sum_{chi(sigma)=-1} D_sigma:\n";
  for (const RelationCheck& r : report.relations) {
    out << "    " << r.chi.to_string() << "  2L = " << pad(r.twice_bundle ? cls(data, *r.twice_bundle) : "missing", 10)
        << " sum = " << pad(cls(data, r.branch_sum), 10) << (r.holds ? "ok" : "FAIL") << "\n";
  }
  if (!report.non_effective_branch.empty()) {
    out << "  non-effective branch classes: " << join_elements(report.non_effective_branch) << "\n";
  }
  if (!report.trivial_bundles.empty()) out << "  trivial L_chi: " << join_characters(report.trivial_bundles) << "\n";
  if (!report.missing_bundles.empty()) out << "  missing L_chi: " << join_characters(report.missing_bundles) << "\n";
  auto flag = [](bool v) { return v ? "declared" : "not declared"; };
  out << "  assumptions: components smooth " << flag(report.assumptions.components_smooth)
      << "; pairwise distinct " << flag(report.assumptions.pairwise_distinct) << "; normal crossings "
      << flag(report.assumptions.normal_crossings) << "\n";
  for (const auto& [a, b] : report.equal_nonzero_classes) {
    out << "  note: D_" << a.to_string() << " and D_" << b.to_string()
        << " share a class; distinctness must be arranged by choice of members\n";
  }
  for (const auto& [a, b] : report.forced_common_components) {
    out << "  note: D_" << a.to_string() << " and D_" << b.to_string()
        << " intersect negatively and must share a component\n";
  }
  const auto failed = report.failed_relations();
  out << "  verdict: " << (report.passed() ? "pass" : "FAIL");
  if (!failed.empty()) out << " (relation fails at " << join_characters(failed) << ")";
  out << "\n";
  return out.str();
}

Json validation_json(const BuildingData& data, const ValidationReport& report) {
  Json j;
  j["rank"] = data.rank();
  j["surface"] = data.surface().name;
  Json branch = Json::object();
  for (const GroupElement& sigma : data.nonzero_elements()) {
    if (!data.branch(sigma).is_zero()) branch[sigma.to_string()] = class_json(data.branch(sigma));
  }
  j["branch"] = branch;
  j["total_branch"] = class_json(total_branch(data));
  Json relations = Json::array();
  for (const RelationCheck& r : report.relations) {
    relations.push_back({{"chi", r.chi.to_string()},
                         {"twice_bundle", r.twice_bundle ? class_json(*r.twice_bundle) : Json()},
                         {"branch_sum", class_json(r.branch_sum)},
                         {"holds", r.holds}});
  }
  j["relations"] = relations;
  Json non_eff = Json::array(), trivial = Json::array(), missing = Json::array();
  for (const auto& s : report.non_effective_branch) non_eff.push_back(s.to_string());
  for (const auto& c : report.trivial_bundles) trivial.push_back(c.to_string());
  for (const auto& c : report.missing_bundles) missing.push_back(c.to_string());
  j["non_effective_branch"] = non_eff;
  j["trivial_bundles"] = trivial;
  j["missing_bundles"] = missing;
  j["assumptions"] = {{"components_smooth", report.assumptions.components_smooth},
                      {"pairwise_distinct", report.assumptions.pairwise_distinct},
                      {"normal_crossings", report.assumptions.normal_crossings}};
  Json equal = Json::array(), forced = Json::array();
  for (const auto& [a, b] : report.equal_nonzero_classes) equal.push_back({a.to_string(), b.to_string()});
  for (const auto& [a, b] : report.forced_common_components) forced.push_back({a.to_string(), b.to_string()});
  j["equal_nonzero_classes"] = equal;
  j["forced_common_components"] = forced;
  j["passed"] = report.passed();
  return j;
}

std::string render_invariants(const BuildingData& data, const InvariantSet& inv, const BmyGate& bmy,
                              const PositivityReport& positivity) {
  const BaseSurface& y = data.surface();
  std::ostringstream out;
  out << "[invariants] K2=" << inv.K2 << " pg=" << inv.pg << " q=" << inv.q << " chi=" << inv.chi << " twoK=\""
      << cls(data, inv.two_K) << "\"\n";
  out << "  2K_X = f^*(" << cls(data, inv.two_K) << ")\n";
  out << "  " << pad("chi", 6) << pad("L_chi", 10) << pad("K_Y+L_chi", 11) << pad("h0", 5) << "L(L+K)/2\n";
  for (std::size_t i = 0; i < inv.pg_contributions.size(); ++i) {
    const auto& [chi, h] = inv.pg_contributions[i];
    const DivisorClass& l = *data.bundle(chi);
    out << "  " << pad(chi.to_string(), 6) << pad(cls(data, l), 10) << pad(cls(data, y.canonical + l), 11)
        << pad(std::to_string(h), 5) << inv.chi_terms[i].second << "\n";
  }
  out << "  pg = " << y.pg;
  for (const auto& [chi, h] : inv.pg_contributions) {
    if (h > 0) out << " + " << h;
  }
  out << " = " << inv.pg << "\n";
  out << "  chi = " << (std::int64_t{1} << data.rank()) << "*" << y.chi;
  std::int64_t sum = 0;
  for (const auto& [chi, t] : inv.chi_terms) sum += t;
  out << (sum < 0 ? " - " : " + ") << (sum < 0 ? -sum : sum) << " = " << inv.chi << "\n";
  out << "  q = pg + 1 - chi = " << inv.q << "\n";
  out << "  BMY chain: 16(pg-2) = " << bmy.lower << " <= K2 = " << bmy.K2 << " <= 9chi = " << bmy.upper << "  "
      << (bmy.passed() ? "pass" : "FAIL") << " (margins " << bmy.lower_margin() << ", " << bmy.upper_margin() << ")\n";
  out << "  positivity: "
      << (positivity.verdict == PositivityVerdict::MinimalGeneralType ? "minimal, general type" : "neutral") << " ("
      << positivity.reason << ")\n";
  return out.str();
}

Json invariants_json(const BuildingData& data, const InvariantSet& inv, const BmyGate& bmy,
                     const PositivityReport& positivity) {
  const BaseSurface& y = data.surface();
  Json j;
  j["K2"] = inv.K2;
  j["pg"] = inv.pg;
  j["q"] = inv.q;
  j["chi"] = inv.chi;
  j["two_K"] = class_json(inv.two_K);
  Json table = Json::array();
  for (std::size_t i = 0; i < inv.pg_contributions.size(); ++i) {
    const auto& [chi, h] = inv.pg_contributions[i];
    const DivisorClass& l = *data.bundle(chi);
    table.push_back({{"chi", chi.to_string()},
                     {"L", class_json(l)},
                     {"K_plus_L", class_json(y.canonical + l)},
                     {"h0", h},
                     {"chi_term", inv.chi_terms[i].second}});
  }
  j["characters"] = table;
  std::int64_t terms = 0;
  for (const auto& [chi, t] : inv.chi_terms) terms += t;
  j["chi_decomposition"] = {{"group_order", std::int64_t{1} << data.rank()}, {"terms_total", terms}};
  j["base"] = {{"pg", y.pg}, {"q", y.q}, {"chi", y.chi}};
  j["bmy"] = {{"chain", "16(pg-2) <= K2 <= 9chi"},
              {"lower", bmy.lower},
              {"K2", bmy.K2},
              {"upper", bmy.upper},
              {"lower_margin", bmy.lower_margin()},
              {"upper_margin", bmy.upper_margin()},
              {"passed", bmy.passed()}};
  j["positivity"] = {
      {"two_K", class_json(positivity.two_K)},
      {"verdict", positivity.verdict == PositivityVerdict::MinimalGeneralType ? "minimal-general-type" : "neutral"},
      {"reason", positivity.reason}};
  return j;
}

std::string render_quotient(const BuildingData& data, const QuotientCover& q) {
  std::ostringstream out;
  out << "[quotient] H = <";
  std::string gens;
  for (const auto& b : q.subgroup.basis()) gens += (gens.empty() ? "" : ", ") + b.to_string();
  out << gens << ">, order " << q.subgroup.order() << "; X/H is a " << group_name(q.quotient_rank()) << "-cover of "
      << surface_name(data.surface()) << "\n";
  if (!q.ramified_in_subgroup.empty()) {
    out << "  D_sigma with sigma in H (ramification of X -> X/H only): " << join_elements(q.ramified_in_subgroup)
        << "\n";
  }
  for (const GroupElement& tau : q.data.nonzero_elements()) {
    const DivisorClass& d = q.data.branch(tau);
    if (d.is_zero()) continue;
    out << "  coset " << tau.to_string() << ": branch ";
    std::string parts;
    for (const auto& [sigma, c] : q.components) {
      if (project_to_quotient(sigma, q.subgroup) == tau) parts += (parts.empty() ? "D_" : " + D_") + sigma.to_string();
    }
    out << parts << " = " << cls(data, d) << "\n";
  }
  for (const Character& chi : q.data.nontrivial_characters()) {
    out << "  L_" << chi.to_string() << " = " << cls(data, *q.data.bundle(chi)) << "  (2L = "
        << cls(data, 2 * *q.data.bundle(chi)) << ")\n";
  }
  if (q.node_count) out << "  double cover singularities: " << *q.node_count << " nodes\n";
  return out.str();
}

Json quotient_json(const BuildingData& data, const QuotientCover& q) {
  (void)data;
  Json j;
  j["subgroup"] = basis_json(q.subgroup);
  j["subgroup_order"] = q.subgroup.order();
  j["quotient_rank"] = q.quotient_rank();
  Json ramified = Json::array();
  for (const auto& s : q.ramified_in_subgroup) ramified.push_back(s.to_string());
  j["ramified_in_subgroup"] = ramified;
  Json branch = Json::object(), bundles = Json::object(), components = Json::array();
  for (const GroupElement& tau : q.data.nonzero_elements()) branch[tau.to_string()] = class_json(q.data.branch(tau));
  for (const Character& chi : q.data.nontrivial_characters()) bundles[chi.to_string()] = class_json(*q.data.bundle(chi));
  for (const auto& [sigma, c] : q.components) components.push_back({{"sigma", sigma.to_string()}, {"class", class_json(c)}});
  j["branch"] = branch;
  j["bundles"] = bundles;
  j["components"] = components;
  j["node_count"] = q.node_count ? Json(*q.node_count) : Json();
  return j;
}

std::string canonical_verdict(const BuildingData& data, const CanonicalReport& report) {
  if (report.canonical_degree) {
    return "canonical map: degree " + std::to_string(*report.canonical_degree) + " " + group_name(data.rank()) +
           "-cover of " + surface_name(data.surface());
  }
  return "canonical map: degree undetermined (" + report.degree_note + ")";
}

std::string render_canonical(const BuildingData& data, const CanonicalReport& r) {
  std::ostringstream out;
  out << "[canonical] pg = " << r.pg << "\n";
  out << "  contributing characters:";
  if (r.contributing.empty()) out << " none";
  for (const auto& [chi, h] : r.contributing) {
    out << " " << chi.to_string() << " -> h0(" << cls(data, data.surface().canonical + *data.bundle(chi)) << ") = " << h;
  }
  out << "\n";
  std::string gens;
  for (const auto& b : r.trivially_acting.basis()) gens += (gens.empty() ? "" : ", ") + b.to_string();
  out << "  H = <" << gens << ">, order " << r.trivially_acting.order() << " (acts trivially on H^0(K_X))\n";
  std::string perp;
  for (const auto& b : r.annihilator.basis()) perp += (perp.empty() ? "" : ", ") + b.to_string();
  out << "  H^perp = <" << perp << ">\n";
  out << "  " << r.factorization_note << "\n";
  if (r.factorization) {
    const QuotientCover& q = *r.factorization;
    if (q.quotient_rank() == 1) {
      const DivisorClass& b1 = q.data.branch(GroupElement(1, 1));
      out << "  B1 = " << cls(data, b1) << " = 2L = 2(" << cls(data, *q.data.bundle(Character(1, 1))) << ")\n";
    }
    if (q.node_count) out << "  X/H has " << *q.node_count << " nodes\n";
  }
  if (r.base_system) out << "  canonical system pulled back from |" << cls(data, *r.base_system) << "|\n";
  if (r.image) {
    out << "  image: surface in P" << superscript(r.image->projective_dimension) << " of degree "
        << r.image->self_intersection << "\n";
  }
  if (r.canonical_degree && r.image) {
    out << "  degree * image degree = " << *r.canonical_degree << " * " << r.image->self_intersection << " = "
        << *r.canonical_degree * r.image->self_intersection << "\n";
  }
  out << "  " << r.degree_note << "\n";
  out << "  assumption ledger:\n";
  for (const auto& e : r.ledger) {
    out << "    " << e.assumption << ": " << justification_name(e.status) << " (" << e.note << ")\n";
  }
  out << "  " << canonical_verdict(data, r) << "\n";
  return out.str();
}

Json canonical_json(const BuildingData& data, const CanonicalReport& r) {
  Json j;
  j["pg"] = r.pg;
  Json contributing = Json::object();
  for (const auto& [chi, h] : r.contributing) contributing[chi.to_string()] = h;
  j["contributing"] = contributing;
  j["H"] = basis_json(r.trivially_acting);
  j["H_order"] = r.trivially_acting.order();
  j["H_perp"] = basis_json(r.annihilator);
  j["factorization"] = r.factorization ? quotient_json(data, *r.factorization) : Json();
  j["factorization_note"] = r.factorization_note;
  j["base_system"] = r.base_system ? class_json(*r.base_system) : Json();
  j["base_map_degree"] = r.base_map_degree ? Json(*r.base_map_degree) : Json();
  j["canonical_degree"] = r.canonical_degree ? Json(*r.canonical_degree) : Json("undetermined");
  j["image"] = r.image ? Json{{"projective_dimension", r.image->projective_dimension},
                              {"self_intersection", r.image->self_intersection}}
                       : Json();
  j["degree_times_image"] =
      r.canonical_degree && r.image ? Json(*r.canonical_degree * r.image->self_intersection) : Json();
  j["degree_note"] = r.degree_note;
  Json ledger = Json::array();
  for (const auto& e : r.ledger) {
    ledger.push_back({{"assumption", e.assumption}, {"status", justification_name(e.status)}, {"note", e.note}});
  }
  j["ledger"] = ledger;
  j["verdict"] = canonical_verdict(data, r);
  return j;
}

FiberAnalysis analyze_fibers(const BuildingData& data) {
  const BaseSurface& y = data.surface();
  if (y.kind != SurfaceKind::Quadric) throw InputError("fiber analysis needs the quadric preset");
  FiberAnalysis out;
  for (int i = 0; i < y.rank(); ++i) {
    DivisorClass r = DivisorClass::zero(y.rank());
    std::vector<std::int64_t> coords(static_cast<std::size_t>(y.rank()), 0);
    coords[static_cast<std::size_t>(i)] = 1;
    out.rulings.push_back(restrict_to_fiber(data, DivisorClass(coords)));
  }
  for (const Character& chi : data.nontrivial_characters()) {
    const Subgroup kernel = annihilator(span(data.rank(), std::vector<Character>{chi}));
    EllipticProbe probe = elliptic_quotient_probe(data, kernel);
    if (probe.product) out.products.emplace_back(chi, std::move(probe));
  }
  for (const auto& [chi, probe] : out.products) {
    if (probe.curve_genus != 1) continue;
    const FiberRestriction& f = out.rulings[static_cast<std::size_t>(*probe.ruling_index)];
    out.albanese = "X -> ker(" + chi.to_string() + ") quotient " + probe.description + "; Albanese fibres are the " +
                   std::to_string(f.components) + " components over a general " +
                   y.basis_names[static_cast<std::size_t>(*probe.ruling_index)] + "-curve, genus " +
                   std::to_string(f.genus);
    break;
  }
  return out;
}

std::string render_fibers(const BuildingData& data, const FiberAnalysis& a) {
  std::ostringstream out;
  out << "[fibers]\n";
  for (const FiberRestriction& f : a.rulings) {
    out << "  ruling " << cls(data, f.ruling) << ":";
    if (f.points.empty()) out << " no branch points";
    for (const auto& [sigma, n] : f.points) {
      out << " " << sigma.to_string() << "(" << cls(data, data.branch(sigma)) << ")->" << n;
    }
    std::string gens;
    for (const auto& b : f.inertia.basis()) gens += (gens.empty() ? "" : ", ") + b.to_string();
    out << "\n    G0 = <" << gens << ">, order " << f.inertia.order() << "; " << f.components
        << (f.components == 1 ? " component" : " components") << " of genus " << f.genus << "\n";
  }
  if (a.products.empty()) out << "  probe: not a ruling-branched product for any index-2 quotient\n";
  for (const auto& [chi, probe] : a.products) {
    out << "  probe ker(" << chi.to_string() << "): branch " << cls(data, probe.branch) << " -> " << probe.description
        << "\n";
  }
  if (a.albanese) out << "  " << *a.albanese << "\n";
  return out.str();
}

Json fibers_json(const BuildingData& data, const FiberAnalysis& a) {
  Json j;
  Json rulings = Json::array();
  for (const FiberRestriction& f : a.rulings) {
    Json points = Json::object();
    for (const auto& [sigma, n] : f.points) points[sigma.to_string()] = n;
    rulings.push_back({{"ruling", class_json(f.ruling)},
                       {"ruling_name", cls(data, f.ruling)},
                       {"points", points},
                       {"branch_points", f.branch_points()},
                       {"inertia", basis_json(f.inertia)},
                       {"inertia_order", f.inertia.order()},
                       {"components", f.components},
                       {"genus", f.genus}});
  }
  j["rulings"] = rulings;
  Json products = Json::array();
  for (const auto& [chi, probe] : a.products) {
    products.push_back({{"character", chi.to_string()},
                        {"branch", class_json(probe.branch)},
                        {"branch_multiple", probe.branch_multiple},
                        {"curve_genus", probe.curve_genus ? Json(*probe.curve_genus) : Json()},
                        {"description", probe.description}});
  }
  j["products"] = products;
  j["albanese"] = a.albanese ? Json(*a.albanese) : Json();
  return j;
}

Json search_result_json(const SearchResult& r) {
  const BuildingData& d = r.data;
  Json j;
  j["rank"] = d.rank();
  Json branch = Json::object(), bundles = Json::object();
  for (const GroupElement& sigma : d.nonzero_elements()) {
    if (!d.branch(sigma).is_zero()) branch[sigma.to_string()] = class_json(d.branch(sigma));
  }
  for (const Character& chi : d.nontrivial_characters()) bundles[chi.to_string()] = class_json(*d.bundle(chi));
  j["branch"] = branch;
  j["bundles"] = bundles;
  j["orbit_size"] = r.orbit_size;
  j["invariants"] = {{"K2", r.invariants.K2},
                     {"pg", r.invariants.pg},
                     {"q", r.invariants.q},
                     {"chi", r.invariants.chi},
                     {"two_K", class_json(r.invariants.two_K)}};
  Json contributing = Json::object();
  for (const auto& [chi, h] : r.contributing) contributing[chi.to_string()] = h;
  j["contributing"] = contributing;
  j["canonical_degree"] = r.canonical_degree ? Json(*r.canonical_degree) : Json("undetermined");
  return j;
}

Json search_summary_json(const SearchStats& s) {
  return Json{{"summary",
               {{"estimated_nodes", s.estimated_nodes},
                {"nodes", s.nodes},
                {"valid_leaves", s.leaves},
                {"matches", s.matches},
                {"orbits", s.emitted},
                {"symmetry_order", s.symmetry_order}}}};
}

}  // namespace abelcov
