#include <abelcov/search.hpp>

#include "fixture.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <map>
#include <random>
#include <set>

using namespace abelcov;

namespace {

using oracle::Key;

oracle::Filter to_filter(const SearchTargets& t) {
  oracle::Filter f;
  auto conv = [](const std::optional<IntRange>& r) {
    return r ? std::optional(std::pair(r->lo, r->hi)) : std::nullopt;
  };
  f.K2 = conv(t.K2);
  f.pg = conv(t.pg);
  f.q = conv(t.q);
  f.chi = conv(t.chi);
  f.single = t.single_contributing;
  f.degree = t.canonical_degree;
  return f;
}

std::set<Key> brute_force(int rank, const std::vector<DivisorClass>& classes, const SearchTargets& targets) {
  return oracle::brute_force_search(rank, classes, to_filter(targets));
}

BuildingData from_key(int rank, const Key& key) {
  BuildingData d(preset_p1xp1(), rank);
  for (Mask m = 1; m <= key.size(); ++m) d.set_branch(GroupElement(rank, m), key[m - 1]);
  return d;
}

std::vector<DivisorClass> grid(std::int64_t max) {
  std::vector<DivisorClass> out;
  for (std::int64_t a = 0; a <= max; ++a)
    for (std::int64_t b = 0; b <= max; ++b) out.push_back({a, b});
  return out;
}

const std::vector<DivisorClass> kSmall{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {0, 2}};

}  // namespace

TEST_CASE("target parsing") {
  const SearchTargets t = parse_targets("K2=32,pg=4,q=1");
  CHECK(t.K2 == IntRange{32, 32});
  CHECK(t.pg == IntRange{4, 4});
  CHECK(t.q == IntRange{1, 1});
  CHECK_FALSE(t.chi.has_value());
  CHECK(parse_targets("K2=30..34, chi = 4").K2 == IntRange{30, 34});
  CHECK_THROWS_AS(parse_targets("K3=1"), InputError);
  CHECK_THROWS_AS(parse_targets("K2"), InputError);
  CHECK_THROWS_AS(parse_targets("K2=x"), InputError);
  CHECK_THROWS_AS(parse_targets("K2=5..4"), InputError);
  CHECK_THROWS_AS(parse_targets("pg=4,q=1,chi=3"), InputError);
}

TEST_CASE("schedule puts unit vectors last") {
  CHECK(slot_schedule(2) == std::vector<Mask>{3, 1, 2});
  const auto s = slot_schedule(4);
  CHECK(s.size() == 15);
  for (std::size_t i = 0; i < 11; ++i) CHECK(std::popcount(s[i]) > 1);
  for (std::size_t i = 11; i < 15; ++i) CHECK(std::popcount(s[i]) == 1);
}

TEST_CASE("rank-2 search equals the unpruned brute force") {
  const std::vector<std::vector<DivisorClass>> class_sets{kSmall, grid(3)};
  const std::vector<std::string> targets{"", "K2=0..8", "pg=1..4", "q=0", "K2=4,pg=4", "chi=2..5"};
  for (const auto& classes : class_sets) {
    for (const auto& target : targets) {
      SearchSpec spec = SearchSpec::uniform(2, classes);
      spec.targets = parse_targets(target);
      spec.symmetry = false;
      const std::set<Key> expected = brute_force(2, classes, spec.targets);
      const SearchOutcome out = enumerate(spec);
      std::set<Key> got;
      for (const auto& r : out.results) got.insert(branch_key(r.data));
      CHECK(got == expected);
      CHECK(out.results.size() == expected.size());
      CHECK(out.stats.matches == expected.size());
      CHECK(out.stats.nodes <= out.stats.estimated_nodes);

      // With symmetry: representatives are the orbit minima, orbit sizes add up.
      spec.symmetry = true;
      const SearchOutcome reduced = enumerate(spec);
      std::set<Key> minima;
      for (const Key& k : expected) minima.insert(branch_key(canonicalize(from_key(2, k))));
      std::set<Key> reps;
      std::uint64_t total = 0;
      for (const auto& r : reduced.results) {
        reps.insert(branch_key(r.data));
        total += r.orbit_size;
      }
      CHECK(reps == minima);
      CHECK(total == expected.size());
    }
  }
}

TEST_CASE("rank-3 search with filters equals the brute force") {
  SearchSpec spec = SearchSpec::uniform(3, kSmall);
  spec.targets = parse_targets("K2=8..16");
  spec.symmetry = false;
  const std::set<Key> expected = brute_force(3, kSmall, spec.targets);
  CHECK_FALSE(expected.empty());
  std::set<Key> got;
  for (const auto& r : enumerate(spec).results) got.insert(branch_key(r.data));
  CHECK(got == expected);

  spec.targets = parse_targets("pg=3..10");
  spec.targets.single_contributing = true;
  spec.targets.canonical_degree = 8;
  const std::set<Key> expected_deg = brute_force(3, kSmall, spec.targets);
  got.clear();
  for (const auto& r : enumerate(spec).results) got.insert(branch_key(r.data));
  CHECK(got == expected_deg);
}

TEST_CASE("parallel and serial runs agree") {
  SearchSpec spec = SearchSpec::uniform(3, kSmall);
  spec.targets = parse_targets("K2=0..16");
  const SearchOutcome serial = enumerate(spec);
  spec.jobs = 4;
  const SearchOutcome parallel = enumerate(spec);
  REQUIRE(serial.results.size() == parallel.results.size());
  for (std::size_t i = 0; i < serial.results.size(); ++i) {
    CHECK(serial.results[i].data == parallel.results[i].data);
    CHECK(serial.results[i].orbit_size == parallel.results[i].orbit_size);
  }
  CHECK(serial.stats.nodes == parallel.stats.nodes);
  CHECK(serial.stats.matches == parallel.stats.matches);
}

TEST_CASE("prune bound") {
  SearchSpec spec = SearchSpec::uniform(4, kSmall);
  spec.targets = parse_targets("K2=32");
  CHECK(prune_bound(spec, {}));
  // K^2 = 8(x - 4)(y - 4) for totals (x, y), so x lies in {0, 2, 3, 5, 6, 8}.
  std::vector<DivisorClass> heavy(5, DivisorClass{2, 0});
  CHECK(prune_bound(spec, std::span(heavy).first(4)));
  CHECK_FALSE(prune_bound(spec, heavy));

  // The fixture in schedule order is feasible; an odd perturbation is not.
  const BuildingData f = fixture::data();
  std::vector<DivisorClass> full;
  for (Mask m : slot_schedule(4)) full.push_back(f.branch(GroupElement(4, m)));
  CHECK(prune_bound(spec, full));
  std::vector<DivisorClass> broken = full;
  broken.back() = DivisorClass{1, 0};
  CHECK_FALSE(prune_bound(spec, broken));

  // Only zero classes cannot span the group.
  SearchSpec zero = SearchSpec::uniform(2, {{0, 0}});
  CHECK_FALSE(prune_bound(zero, {}));
}

TEST_CASE("the zero class alone yields nothing") {
  SearchSpec spec = SearchSpec::uniform(3, {{0, 0}});
  const SearchOutcome out = enumerate(spec);
  CHECK(out.results.empty());
  CHECK(out.stats.leaves == 0);
}

TEST_CASE("budget refusal") {
  SearchSpec spec = SearchSpec::uniform(4, kSmall);
  spec.targets = parse_targets("K2=32,pg=4,q=1");
  const std::uint64_t estimate = estimate_nodes(spec);
  CHECK(estimate > 1000);
  spec.budget = 1000;
  CHECK_THROWS_AS(enumerate(spec), BudgetExceeded);
  SearchSpec unbounded = SearchSpec::uniform(5, kSmall);
  unbounded.budget = 1'000'000;
  CHECK_THROWS_AS(enumerate(unbounded), BudgetExceeded);
}

TEST_CASE("estimate bounds the visited nodes") {
  for (const char* target : {"", "K2=8", "K2=0..100", "K2=-8..0"}) {
    SearchSpec spec = SearchSpec::uniform(3, kSmall);
    spec.targets = parse_targets(target);
    const SearchOutcome out = enumerate(spec);
    CHECK(out.stats.nodes <= out.stats.estimated_nodes);
  }
}

TEST_CASE("canonical forms") {
  const BuildingData f = fixture::data();
  const BuildingData c = canonicalize(f);
  CHECK(canonicalize(c) == c);
  CHECK(branch_key(c) <= branch_key(f));
  CHECK(compute_invariants(with_solved_bundles(c)).K2 == 32);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    BuildingData r = relabel(f, random_automorphism(4, rng));
    if (trial % 2) r = swap_rulings(r);
    CHECK(branch_key(canonicalize(r)) == branch_key(c));
  }
  CHECK_THROWS_AS(canonicalize(with_solved_bundles([] {
                    BuildingData d(preset_p2(), 1);
                    d.set_branch(GroupElement(1, 1), {6});
                    return d;
                  }())),
                  InputError);
}
