#include <abelcov/invariants.hpp>

#include "fixture.hpp"

#include <doctest.h>

#include <map>
#include <random>

using namespace abelcov;

namespace {

// L = aF + bG: L(L+K)/2 = ab - a - b.
std::int64_t quadric_chi_term(const DivisorClass& l) { return l[0] * l[1] - l[0] - l[1]; }

// K + L = (a-2)F + (b-2)G has (a-1)(b-1) sections when a, b >= 2.
std::int64_t quadric_pg_term(const DivisorClass& l) { return l[0] >= 2 && l[1] >= 2 ? (l[0] - 1) * (l[1] - 1) : 0; }

BuildingData double_cover(SurfacePtr s, DivisorClass branch) {
  BuildingData d(std::move(s), 1);
  d.set_branch(GroupElement(1, 1), branch);
  return with_solved_bundles(d);
}

}  // namespace

TEST_CASE("fixture invariants") {
  const BuildingData d = fixture::data();
  const InvariantSet inv = compute_invariants(d);
  CHECK(inv.K2 == 32);
  CHECK(inv.pg == 4);
  CHECK(inv.q == 1);
  CHECK(inv.chi == 4);
  CHECK(inv.two_K == DivisorClass{2, 2});
  CHECK(k_squared(d) == 32);
  CHECK(two_canonical_class(d) == DivisorClass{2, 2});
}

TEST_CASE("fixture genus and Euler terms agree with the bidegree expansion") {
  const BuildingData d = fixture::data();
  const GenusBreakdown pg = geometric_genus(d);
  CHECK(pg.base_pg == 0);
  CHECK(pg.total == 4);
  std::int64_t oracle_pg = 0;
  for (const auto& [chi, h] : pg.contributions) {
    CHECK(h == quadric_pg_term(*d.bundle(chi)));
    oracle_pg += h;
    CHECK((h > 0) == (chi == Character::parse("1100")));
  }
  CHECK(oracle_pg == 4);

  // Grouped by the five bundle shapes: 6 x (F+2G), 6 x (2F+G), 2G, 3F+3G, 3F+G.
  std::map<DivisorClass, std::int64_t> by_shape;
  for (const auto& [chi, t] : euler_terms(d)) {
    CHECK(t == quadric_chi_term(*d.bundle(chi)));
    by_shape[*d.bundle(chi)] += t;
  }
  CHECK(by_shape.size() == 5);
  CHECK(by_shape[DivisorClass{1, 2}] == -6);
  CHECK(by_shape[DivisorClass{2, 1}] == -6);
  CHECK(by_shape[DivisorClass{0, 2}] == -2);
  CHECK(by_shape[DivisorClass{3, 3}] == 3);
  CHECK(by_shape[DivisorClass{3, 1}] == -1);
  CHECK(euler_characteristic(d) == 16 - 12);
}

TEST_CASE("classical double covers") {
  // K3: double plane branched on a sextic.
  InvariantSet k3 = compute_invariants(double_cover(preset_p2(), {6}));
  CHECK(k3.K2 == 0);
  CHECK(k3.pg == 1);
  CHECK(k3.chi == 2);
  CHECK(k3.q == 0);
  // Double plane branched on an octic.
  InvariantSet octic = compute_invariants(double_cover(preset_p2(), {8}));
  CHECK(octic.K2 == 2);
  CHECK(octic.pg == 3);
  CHECK(octic.chi == 4);
  CHECK(octic.q == 0);
  // Double quadric branched on a (6, 6) curve.
  InvariantSet quad = compute_invariants(double_cover(preset_p1xp1(), {6, 6}));
  CHECK(quad.K2 == 4);
  CHECK(quad.pg == 4);
  CHECK(quad.chi == 5);
  CHECK(quad.q == 0);
  // Noether's formula holds in each case: 12 chi = K^2 + e, e = 2 e(Y) - e(B) with e(B) = -B(B+K).
  auto topological_euler = [](const BaseSurface& y, std::int64_t ey, const DivisorClass& b) {
    return 2 * ey + intersect(y, b, b + y.canonical);
  };
  CHECK(12 * k3.chi == k3.K2 + topological_euler(*preset_p2(), 3, {6}));
  CHECK(12 * octic.chi == octic.K2 + topological_euler(*preset_p2(), 3, {8}));
  CHECK(12 * quad.chi == quad.K2 + topological_euler(*preset_p1xp1(), 4, {6, 6}));
}

TEST_CASE("invariants are constant under 100 random relabelings") {
  const BuildingData d = fixture::data();
  const InvariantSet base = compute_invariants(d);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const BuildingData r = relabel(d, random_automorphism(4, rng));
    const InvariantSet inv = compute_invariants(r);
    CHECK(inv.K2 == base.K2);
    CHECK(inv.pg == base.pg);
    CHECK(inv.q == base.q);
    CHECK(inv.chi == base.chi);
    CHECK(inv.two_K == base.two_K);
  }
}

TEST_CASE("ruling swap preserves the numbers and swaps 2K") {
  const InvariantSet inv = compute_invariants(swap_rulings(fixture::data()));
  CHECK(inv.K2 == 32);
  CHECK(inv.pg == 4);
  CHECK(inv.q == 1);
  CHECK(inv.chi == 4);
}

TEST_CASE("invalid data is refused") {
  BuildingData d = fixture::data();
  d.set_bundle(Character::parse("1100"), DivisorClass{3, 2});
  CHECK_THROWS_AS(compute_invariants(d), InvalidBuildingData);
  CHECK_THROWS_AS(irregularity(1, 3), NegativeIrregularity);
  CHECK(irregularity(4, 4) == 1);
}

TEST_CASE("odd L(L+K) is a parity error") {
  auto custom = std::make_shared<BaseSurface>(*preset_p2());
  custom->name = "odd";
  custom->kind = SurfaceKind::Custom;
  custom->canonical = DivisorClass{0};
  custom->effective = [](const DivisorClass& c) { return c[0] >= 0; };
  BuildingData d(custom, 1);
  d.set_branch(GroupElement(1, 1), DivisorClass{2});
  d.set_bundle(Character(1, 1), DivisorClass{1});
  CHECK_THROWS_AS(euler_characteristic(d), ParityError);
}

TEST_CASE("BMY gate") {
  const BmyGate g = bmy_gate(compute_invariants(fixture::data()));
  CHECK(g.lower == 32);
  CHECK(g.K2 == 32);
  CHECK(g.upper == 36);
  CHECK(g.passed());
  CHECK(g.lower_margin() == 0);
  CHECK(g.upper_margin() == 4);
  CHECK_FALSE(bmy_gate(5, 32, 4).lower_holds());
  CHECK_FALSE(bmy_gate(3, 40, 4).upper_holds());
  CHECK(bmy_gate(3, 16, 4).passed());
}

TEST_CASE("positivity gate") {
  const PositivityReport p = positivity_gate(fixture::data());
  CHECK(p.verdict == PositivityVerdict::MinimalGeneralType);
  CHECK(p.two_K == DivisorClass{2, 2});
  CHECK(positivity_gate(double_cover(preset_p2(), {6})).verdict == PositivityVerdict::Neutral);
  CHECK(positivity_gate(double_cover(preset_p2(), {8})).verdict == PositivityVerdict::MinimalGeneralType);
  CHECK(positivity_gate(double_cover(preset_p1xp1(), {6, 4})).verdict == PositivityVerdict::Neutral);
}
