#include <abelcov/cli.hpp>

#include <abelcov/config.hpp>
#include <abelcov/report.hpp>
#include <abelcov/search.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace abelcov::cli {

namespace {

struct Options {
  bool json = false;
  std::string config;
  std::string expect;
  std::string subgroup;
  bool strict = false;
  // search
  int rank = 4;
  std::string classes = "0,F,2F,G,2G";
  std::string target;
  std::optional<std::int64_t> canonical_degree;
  bool single_character = false;
  unsigned jobs = 1;
  std::string out_path;
  bool no_symmetry = false;
  std::optional<std::uint64_t> budget;
};

struct Loaded {
  CoverConfig config;
  BuildingData data;
};

Loaded load(const Options& o) {
  CoverConfig config = load_config(o.config);
  BuildingData data = to_building_data(config);
  return {std::move(config), std::move(data)};
}

void print(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

/// Merges `--expect` over the config's [expected] table.
std::map<std::string, IntRange> expectations(const Options& o, const CoverConfig& config) {
  std::map<std::string, IntRange> out;
  for (const auto& [k, v] : config.expected) out[k] = IntRange{v, v};
  if (!o.expect.empty()) {
    const SearchTargets t = parse_targets(o.expect);
    if (t.single_contributing || t.canonical_degree) throw InputError("--expect takes K2, pg, q and chi only");
    if (t.K2) out["K2"] = *t.K2;
    if (t.pg) out["pg"] = *t.pg;
    if (t.q) out["q"] = *t.q;
    if (t.chi) out["chi"] = *t.chi;
  }
  return out;
}

std::string range_text(const IntRange& r) {
  return r.lo == r.hi ? std::to_string(r.lo) : std::to_string(r.lo) + ".." + std::to_string(r.hi);
}

struct ExpectationCheck {
  std::vector<std::string> mismatches;
  Json json = Json::object();
};

ExpectationCheck check_expectations(const std::map<std::string, IntRange>& expected, const InvariantSet& inv) {
  const std::map<std::string, std::int64_t> actual{{"K2", inv.K2}, {"pg", inv.pg}, {"q", inv.q}, {"chi", inv.chi}};
  ExpectationCheck c;
  for (const auto& [k, r] : expected) {
    const std::int64_t v = actual.at(k);
    const bool ok = r.contains(v);
    c.json[k] = {{"expected", range_text(r)}, {"actual", v}, {"ok", ok}};
    if (!ok) c.mismatches.push_back(k + ": expected " + range_text(r) + ", got " + std::to_string(v));
  }
  return c;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Loaded l = load(o);
  const ValidationReport report = validate(l.data);
  if (o.json) {
    print(out, validation_json(l.data, report));
  } else {
    out << render_validation(l.data, report);
  }
  return report.passed() ? kOk : kCheckFailed;
}

int cmd_invariants(const Options& o, std::ostream& out) {
  const Loaded l = load(o);
  const ValidationReport report = validate(l.data);
  if (!report.passed()) {
    if (o.json) {
      print(out, Json{{"validation", validation_json(l.data, report)}});
    } else {
      out << render_validation(l.data, report);
    }
    return kCheckFailed;
  }
  const InvariantSet inv = compute_invariants(l.data);
  const BmyGate bmy = bmy_gate(inv);
  const PositivityReport pos = positivity_gate(l.data);
  const ExpectationCheck check = check_expectations(expectations(o, l.config), inv);
  if (o.json) {
    Json j = invariants_json(l.data, inv, bmy, pos);
    j["expected"] = check.json;
    print(out, j);
  } else {
    out << render_invariants(l.data, inv, bmy, pos);
    for (const auto& m : check.mismatches) out << "  expectation FAILED " << m << "\n";
    if (!check.json.empty() && check.mismatches.empty()) out << "  expectations: all met\n";
  }
  return check.mismatches.empty() ? kOk : kCheckFailed;
}

int require_valid(const Options& o, const BuildingData& data, std::ostream& out) {
  const ValidationReport report = validate(data);
  if (report.passed()) return kOk;
  if (o.json) {
    print(out, Json{{"validation", validation_json(data, report)}});
  } else {
    out << render_validation(data, report);
  }
  return kCheckFailed;
}

int cmd_canonical(const Options& o, std::ostream& out) {
  const Loaded l = load(o);
  if (int rc = require_valid(o, l.data, out)) return rc;
  const CanonicalReport report = canonical_degree_report(l.data);
  if (o.json) {
    print(out, canonical_json(l.data, report));
  } else {
    out << render_canonical(l.data, report);
  }
  return kOk;
}

int cmd_quotient(const Options& o, std::ostream& out) {
  const Loaded l = load(o);
  if (int rc = require_valid(o, l.data, out)) return rc;
  const Subgroup h = parse_subgroup(l.data.rank(), o.subgroup);
  const QuotientCover q = quotient_cover(l.data, h, o.strict ? QuotientMode::Strict : QuotientMode::Permissive);
  if (o.json) {
    print(out, quotient_json(l.data, q));
  } else {
    out << render_quotient(l.data, q);
  }
  return kOk;
}

int cmd_fibers(const Options& o, std::ostream& out) {
  const Loaded l = load(o);
  if (int rc = require_valid(o, l.data, out)) return rc;
  const FiberAnalysis a = analyze_fibers(l.data);
  if (o.json) {
    print(out, fibers_json(l.data, a));
  } else {
    out << render_fibers(l.data, a);
  }
  return kOk;
}

int cmd_report(const Options& o, std::ostream& out) {
  const Loaded l = load(o);
  const ValidationReport validation = validate(l.data);
  if (!validation.passed()) {
    if (o.json) {
      print(out, Json{{"validation", validation_json(l.data, validation)}});
    } else {
      out << render_validation(l.data, validation);
    }
    return kCheckFailed;
  }
  const InvariantSet inv = compute_invariants(l.data);
  const BmyGate bmy = bmy_gate(inv);
  const PositivityReport pos = positivity_gate(l.data);
  const ExpectationCheck check = check_expectations(expectations(o, l.config), inv);
  std::optional<CanonicalReport> canonical;
  std::string canonical_error;
  try {
    canonical = canonical_degree_report(l.data);
  } catch (const DegenerateCanonical& e) {
    canonical_error = e.what();
  }
  std::optional<FiberAnalysis> fibers;
  if (l.data.surface().kind == SurfaceKind::Quadric) fibers = analyze_fibers(l.data);

  if (o.json) {
    Json j;
    j["validation"] = validation_json(l.data, validation);
    j["invariants"] = invariants_json(l.data, inv, bmy, pos);
    j["invariants"]["expected"] = check.json;
    j["canonical"] = canonical ? canonical_json(l.data, *canonical) : Json{{"error", canonical_error}};
    j["quotient"] = canonical && canonical->factorization ? quotient_json(l.data, *canonical->factorization) : Json();
    j["fibers"] = fibers ? fibers_json(l.data, *fibers) : Json();
    j["verdict"] = canonical ? canonical_verdict(l.data, *canonical) : "canonical map: " + canonical_error;
    print(out, j);
  } else {
    out << render_validation(l.data, validation) << "\n";
    out << render_invariants(l.data, inv, bmy, pos);
    for (const auto& m : check.mismatches) out << "  expectation FAILED " << m << "\n";
    out << "\n";
    if (canonical) {
      out << render_canonical(l.data, *canonical) << "\n";
      if (canonical->factorization) out << render_quotient(l.data, *canonical->factorization) << "\n";
    } else {
      out << "[canonical] " << canonical_error << "\n\n";
    }
    if (fibers) out << render_fibers(l.data, *fibers) << "\n";
    out << (canonical ? canonical_verdict(l.data, *canonical) : "canonical map: " + canonical_error) << "\n";
  }
  return check.mismatches.empty() ? kOk : kCheckFailed;
}

std::vector<DivisorClass> parse_class_list(const BaseSurface& surface, const std::string& text) {
  std::vector<DivisorClass> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_class(surface, item));
  if (out.empty()) throw InputError("--classes is empty");
  return out;
}

std::uint64_t parse_budget(const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || text[0] == '-') throw InputError("invalid budget '" + text + "'");
  return v;
}

int cmd_search(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.rank < 1 || o.rank > kMaxSearchRank) {
    throw InputError("--rank must lie in 1.." + std::to_string(kMaxSearchRank));
  }
  SearchSpec spec = SearchSpec::uniform(o.rank, parse_class_list(*preset_p1xp1(), o.classes));
  if (!o.target.empty()) spec.targets = parse_targets(o.target);
  if (o.canonical_degree) spec.targets.canonical_degree = o.canonical_degree;
  if (o.single_character) spec.targets.single_contributing = true;
  spec.symmetry = !o.no_symmetry;
  spec.jobs = std::max(1u, o.jobs);
  if (const char* env = std::getenv("ABELCOV_BUDGET")) spec.budget = parse_budget(env);
  if (o.budget) spec.budget = *o.budget;

  std::ofstream file;
  if (!o.out_path.empty()) {
    file.open(o.out_path);
    if (!file) throw InputError("cannot open '" + o.out_path + "' for writing");
  }
  std::ostream& sink = o.out_path.empty() ? out : file;

  const auto start = std::chrono::steady_clock::now();
  const SearchOutcome outcome = enumerate(spec);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const SearchResult& r : outcome.results) sink << search_result_json(r).dump() << "\n";
  sink << search_summary_json(outcome.stats).dump() << "\n";
  err << "search: " << outcome.stats.emitted << " orbits, " << outcome.stats.nodes << " nodes, " << seconds
      << " s\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"abelcov: building data, invariants and canonical maps of Z_2^n-covers", "abelcov"};
  app.require_subcommand(1);
  Options o;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("config", o.config, "cover configuration file")->required();
    sub->add_flag("--json", o.json, "emit JSON");
  };
  CLI::App* verify = app.add_subcommand("verify", "check the relations 2L_chi = sum D_sigma");
  add_config(verify);
  CLI::App* invariants = app.add_subcommand("invariants", "compute K2, pg, q, chi");
  add_config(invariants);
  invariants->add_option("--expect", o.expect, "expected values, e.g. K2=32,pg=4,q=1,chi=4");
  CLI::App* canonical = app.add_subcommand("canonical", "analyse the canonical map");
  add_config(canonical);
  CLI::App* fibers = app.add_subcommand("fibers", "restrict to the rulings and probe product quotients");
  add_config(fibers);
  CLI::App* quotient = app.add_subcommand("quotient", "building data of X/H");
  add_config(quotient);
  quotient->add_option("--subgroup", o.subgroup, "generators, e.g. 0001,0010,1100")->required();
  quotient->add_flag("--strict", o.strict, "refuse subgroups meeting the branch locus");
  CLI::App* report = app.add_subcommand("report", "full narrative");
  add_config(report);
  report->add_option("--expect", o.expect, "expected values, e.g. K2=32,pg=4,q=1,chi=4");

  CLI::App* search = app.add_subcommand("search", "enumerate branch data on P1 x P1");
  search->add_option("--rank", o.rank, "rank n of Z_2^n");
  search->add_option("--classes", o.classes, "allowed classes for every D_sigma, comma separated");
  search->add_option("--target", o.target, "e.g. K2=32,pg=4,q=1 (ranges as K2=30..34)");
  search->add_option("--canonical-degree", o.canonical_degree, "required canonical degree");
  search->add_flag("--single-character", o.single_character, "exactly one character carries all of pg");
  search->add_option("--jobs", o.jobs, "worker threads");
  search->add_option("--out", o.out_path, "write JSON lines here instead of stdout");
  search->add_flag("--no-symmetry", o.no_symmetry, "emit every assignment, not orbit representatives");
  search->add_option("--budget", o.budget, "refuse when the node estimate exceeds this");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (verify->parsed()) return cmd_verify(o, out);
    if (invariants->parsed()) return cmd_invariants(o, out);
    if (canonical->parsed()) return cmd_canonical(o, out);
    if (fibers->parsed()) return cmd_fibers(o, out);
    if (quotient->parsed()) return cmd_quotient(o, out);
    if (report->parsed()) return cmd_report(o, out);
    if (search->parsed()) return cmd_search(o, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << o.config << ": " << e.what() << "\n";
    return kInputError;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBudgetRefused;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const RankMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kInputError;
}

}  // namespace abelcov::cli
