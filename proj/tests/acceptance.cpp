// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <abelcov/canonical.hpp>
#include <abelcov/cli.hpp>
#include <abelcov/config.hpp>
#include <abelcov/fibration.hpp>
#include <abelcov/invariants.hpp>
#include <abelcov/search.hpp>

#include "oracles.hpp"

#include <json.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace abelcov;

namespace {

const std::string kFixture = std::string(ABELCOV_DATA_DIR) + "/example_z2_4.toml";

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects the first failed expectation of a criterion.
class Checker {
 public:
  template <class A, class B>
  void equal(const std::string& what, const A& actual, const B& expected) {
    if (!(actual == expected)) fail(what);
  }
  void that(const std::string& what, bool value) {
    if (!value) fail(what);
  }
  void note(const std::string& text) { notes_ += (notes_.empty() ? "" : "; ") + text; }
  Outcome outcome() const { return {failures_.empty(), failures_.empty() ? notes_ : "failed: " + failures_}; }

 private:
  void fail(const std::string& what) { failures_ += (failures_.empty() ? "" : ", ") + what; }
  std::string failures_;
  std::string notes_;
};

BuildingData fixture() { return to_building_data(load_config(kFixture)); }

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

Outcome fixture_validation() {
  Checker c;
  const BuildingData d = fixture();
  int nonzero = 0;
  for (const GroupElement& s : d.nonzero_elements()) nonzero += !d.branch(s).is_zero();
  c.equal("8 nonzero branch classes", nonzero, 8);
  c.that("15 bundles present", d.has_all_bundles() && d.nontrivial_characters().size() == 15);

  double best = 1e9;
  ValidationReport report;
  for (int i = 0; i < 50; ++i) {
    const auto t = std::chrono::steady_clock::now();
    report = validate(d);
    best = std::min(best, seconds_since(t));
  }
  int holding = 0;
  for (const auto& r : report.relations) holding += r.holds;
  c.equal("15 relations hold", holding, 15);
  c.that("validation passes", report.passed());
  c.that("validation under 1 ms", best < 1e-3);

  int rejected = 0;
  for (const Character& chi : d.nontrivial_characters()) {
    BuildingData p = d;
    p.set_bundle(chi, *d.bundle(chi) + DivisorClass{1, 0});
    const ValidationReport r = validate(p);
    rejected += !r.passed() && r.failed_relations() == std::vector<Character>{chi};
  }
  c.equal("15 perturbations rejected", rejected, 15);
  std::ostringstream n;
  n << holding << "/15 relations hold, " << rejected << "/15 perturbations rejected, validate " << best * 1e6 << " us";
  c.note(n.str());
  return c.outcome();
}

Outcome invariants() {
  Checker c;
  const BuildingData d = fixture();
  const InvariantSet inv = compute_invariants(d);
  c.equal("K2", inv.K2, 32);
  c.equal("pg", inv.pg, 4);
  c.equal("q", inv.q, 1);
  c.equal("chi", inv.chi, 4);
  c.equal("2K_X", inv.two_K, DivisorClass{2, 2});
  // L = aF + bG contributes ab - a - b; grouped by the five bundle shapes.
  std::map<DivisorClass, std::int64_t> library, expanded;
  for (const auto& [chi, t] : inv.chi_terms) {
    const DivisorClass& l = *d.bundle(chi);
    library[l] += t;
    expanded[l] += l[0] * l[1] - l[0] - l[1];
  }
  c.equal("terms match the expansion", library, expanded);
  c.equal("F+2G", library[DivisorClass{1, 2}], -6);
  c.equal("2F+G", library[DivisorClass{2, 1}], -6);
  c.equal("2G", library[DivisorClass{0, 2}], -2);
  c.equal("3F+3G", library[DivisorClass{3, 3}], 3);
  c.equal("3F+G", library[DivisorClass{3, 1}], -1);
  const auto o = oracle::cover_numbers(4, branch_key(d));
  c.that("closed-form oracle agrees", o && o->K2 == 32 && o->pg == 4 && o->q == 1 && o->chi == 4);
  c.note("K2=32 pg=4 q=1 chi=4 2K=2F+2G; chi terms -6 -6 -2 +3 -1");
  return c.outcome();
}

Outcome canonical() {
  Checker c;
  const BuildingData d = fixture();
  const CanonicalReport r = canonical_degree_report(d);
  c.equal("contributing", r.contributing, std::vector<std::pair<Character, std::int64_t>>{{Character::parse("1100"), 4}});
  c.equal("H", r.trivially_acting, parse_subgroup(4, "0001,0010,1100"));
  c.equal("|H|", r.trivially_acting.order(), 8u);
  c.equal("H perp", r.annihilator, span(4, std::vector<Character>{Character::parse("1100")}));
  c.that("factorization built", r.factorization.has_value());
  if (r.factorization) {
    const QuotientCover& q = *r.factorization;
    c.equal("B1", q.data.branch(GroupElement(1, 1)), DivisorClass{6, 6});
    c.equal("B1 = 2 L_1100", q.data.branch(GroupElement(1, 1)), 2 * *d.bundle(Character::parse("1100")));
    c.equal("nodes", q.node_count, std::optional<std::int64_t>{36});
  }
  c.equal("degree", r.canonical_degree, std::optional<std::int64_t>{16});
  c.that("image in P3", r.image && r.image->projective_dimension == 3);
  c.that("image degree 2", r.image && r.image->self_intersection == 2);
  c.that("16 * 2 = K2", r.canonical_degree && r.image &&
                            *r.canonical_degree * r.image->self_intersection == compute_invariants(d).K2);
  c.note("H=<0001,0010,1100>, H^perp=<1100>, B1=6F+6G, 36 nodes, degree 16 onto a quadric in P3");
  return c.outcome();
}

Outcome fibration() {
  Checker c;
  const BuildingData d = fixture();
  const FiberRestriction g = restrict_to_fiber(d, {0, 1});
  const FiberRestriction f = restrict_to_fiber(d, {1, 0});
  const oracle::CurveCover og = oracle::hurwitz(d, {0, 1});
  const oracle::CurveCover of = oracle::hurwitz(d, {1, 0});
  c.equal("G components", g.components, 2);
  c.equal("G genus", g.genus, 5);
  c.equal("F components", f.components, 1);
  c.equal("F genus", f.genus, 9);
  c.that("G matches oracle", og.components == 2 && og.genus == 5);
  c.that("F matches oracle", of.components == 1 && of.genus == 9);
  const EllipticProbe p = elliptic_quotient_probe(d, parse_subgroup(4, "1000,0100,0001"));
  c.that("product quotient", p.product);
  c.equal("curve genus", p.curve_genus, std::optional<std::int64_t>{1});
  c.note("G-ruling 2 x genus 5, F-ruling 1 x genus 9, X/<1000,0100,0001> = P1 x elliptic curve");
  return c.outcome();
}

Outcome bmy() {
  Checker c;
  const BmyGate g = bmy_gate(compute_invariants(fixture()));
  c.equal("lower", g.lower, 32);
  c.equal("K2", g.K2, 32);
  c.equal("upper", g.upper, 36);
  c.that("chain holds", g.passed());
  c.equal("left equality", g.lower_margin(), 0);
  c.note("16(4-2) = 32 <= 32 <= 36 = 9*4");
  return c.outcome();
}

Outcome search() {
  Checker c;
  auto run_search = [](const char* jobs, std::string& out) {
    std::ostringstream o, e;
    const int code = cli::run({"search", "--rank", "4", "--classes", "0,F,2F,G,2G", "--target", "K2=32,pg=4,q=1",
                               "--single-character", "--jobs", jobs},
                              o, e);
    out = o.str();
    return code;
  };
  std::string parallel, serial;
  const auto t0 = std::chrono::steady_clock::now();
  const int code8 = run_search("8", parallel);
  const double elapsed = seconds_since(t0);
  const int code1 = run_search("1", serial);
  c.equal("exit codes", code8 + code1, 0);
  c.that("under 5 minutes with 8 workers", elapsed < 300);
  c.that("byte-identical serial rerun", !parallel.empty() && parallel == serial);

  const BuildingData canonical_fixture = canonicalize(fixture());
  bool found = false;
  std::size_t orbits = 0;
  std::istringstream lines(parallel);
  std::string line;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    if (j.contains("summary")) continue;
    ++orbits;
    bool same = true;
    for (const GroupElement& s : canonical_fixture.nonzero_elements()) {
      const std::string k = s.to_string();
      const std::vector<std::int64_t> got =
          j["branch"].contains(k) ? j["branch"][k].get<std::vector<std::int64_t>>() : std::vector<std::int64_t>{0, 0};
      same = same && got == canonical_fixture.branch(s).coords();
    }
    found = found || same;
  }
  c.that("fixture's canonical form emitted", found);
  std::ostringstream n;
  n << orbits << " orbit(s), fixture form present, 8 workers " << elapsed << " s, serial output identical";
  c.note(n.str());
  return c.outcome();
}

Outcome properties() {
  Checker c;
  // Bilinearity of the pairing, exhaustive on Z_2^4.
  bool bilinear = true;
  for (Mask a = 0; a < 16; ++a)
    for (Mask b = 0; b < 16; ++b)
      for (Mask x = 0; x < 16; ++x) {
        const Character ca(4, a), cb(4, b);
        const GroupElement gx(4, x), gb(4, b);
        bilinear = bilinear && char_eval(ca + cb, gx) == char_eval(ca, gx) * char_eval(cb, gx) &&
                   char_eval(ca, gx + gb) == char_eval(ca, gx) * char_eval(ca, gb);
      }
  c.that("bilinearity", bilinear);

  const auto subs = all_subgroups(4);
  bool involution = subs.size() == 67;
  for (const Subgroup& h : subs) involution = involution && annihilator(annihilator(h)) == h;
  c.that("annihilator involution on 67 subgroups", involution);

  std::mt19937_64 rng(20240101);
  int round_trips = 0, valid = 0;
  while (valid < 1000) {
    const BuildingData raw = oracle::random_even_data(rng, 2 + static_cast<int>(rng() % 3));
    if (!solve_bundles(raw).ok()) continue;
    ++valid;
    const BuildingData d = with_solved_bundles(raw);
    bool ok = validate(d).passed();
    for (const GroupElement& s : d.nonzero_elements()) ok = ok && oracle::reconstruct_branch(d, s.bits()) == d.branch(s);
    round_trips += ok;
  }
  c.equal("1000 round trips", round_trips, 1000);

  const BuildingData f = fixture();
  const InvariantSet base = compute_invariants(f);
  int constant = 0;
  for (int i = 0; i < 100; ++i) {
    const InvariantSet inv = compute_invariants(relabel(f, random_automorphism(4, rng)));
    constant += inv.K2 == base.K2 && inv.pg == base.pg && inv.q == base.q && inv.chi == base.chi &&
                inv.two_K == base.two_K;
  }
  c.equal("100 relabelings", constant, 100);

  const std::vector<DivisorClass> classes{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {0, 2}, {1, 1}, {2, 2}, {3, 1}};
  SearchSpec spec = SearchSpec::uniform(2, classes);
  spec.symmetry = false;
  std::set<oracle::Key> got;
  for (const auto& r : enumerate(spec).results) got.insert(branch_key(r.data));
  const std::set<oracle::Key> expected = oracle::brute_force_search(2, classes, {});
  c.that("rank-2 search equals brute force", got == expected && !expected.empty());
  std::ostringstream n;
  n << "bilinearity, 67 involutions, 1000 round trips, 100 relabelings, rank-2 search " << got.size() << "/"
    << expected.size();
  c.note(n.str());
  return c.outcome();
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"fixture validation", fixture_validation},
      {"invariants", invariants},
      {"canonical analysis", canonical},
      {"fibration", fibration},
      {"BMY gate", bmy},
      {"search", search},
      {"property suites", properties},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << index << " " << name << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
