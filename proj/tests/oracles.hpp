#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance binary. None of them call the library code they check.

#include <abelcov/building.hpp>

#include <bit>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using abelcov::BuildingData;
using abelcov::DivisorClass;
using abelcov::Mask;
using Key = std::vector<DivisorClass>;

// D_sigma = -(1 / 2^(n-2)) sum_chi chi(sigma) L_chi, from character
// orthogonality. Needs rank >= 2 and a quadric base.
inline std::optional<DivisorClass> reconstruct_branch(const BuildingData& d, Mask sigma) {
  std::vector<std::int64_t> acc(2, 0);
  for (Mask chi = 1; chi < (Mask{1} << d.rank()); ++chi) {
    const DivisorClass& l = *d.bundle(abelcov::Character(d.rank(), chi));
    const std::int64_t sign = std::popcount(chi & sigma) % 2 ? -1 : 1;
    for (std::size_t i = 0; i < 2; ++i) acc[i] += sign * l[static_cast<int>(i)];
  }
  const std::int64_t scale = std::int64_t{1} << (d.rank() - 2);
  for (auto& v : acc) {
    if (v % scale != 0) return std::nullopt;
    v = -v / scale;
  }
  return DivisorClass(acc);
}

// Random quadric branch data whose branch sums are all even: the parity
// residual of each ruling is cancelled by bumping one slot.
inline BuildingData random_even_data(std::mt19937_64& rng, int rank) {
  BuildingData d(abelcov::preset_p1xp1(), rank);
  for (Mask s = 1; s < (Mask{1} << rank); ++s) {
    if (rng() % 3 == 0) continue;
    d.set_branch(abelcov::GroupElement(rank, s),
                 DivisorClass{static_cast<std::int64_t>(rng() % 4), static_cast<std::int64_t>(rng() % 4)});
  }
  for (int coord = 0; coord < 2; ++coord) {
    Mask residual = 0;
    for (Mask s = 1; s < (Mask{1} << rank); ++s)
      if (d.branch(abelcov::GroupElement(rank, s))[coord] % 2 != 0) residual ^= s;
    if (residual == 0) continue;
    const abelcov::GroupElement r(rank, residual);
    std::vector<std::int64_t> c = d.branch(r).coords();
    c[static_cast<std::size_t>(coord)] += 1;
    d.set_branch(r, DivisorClass(c));
  }
  return d;
}

struct CurveCover {
  std::int64_t components = 0;
  std::int64_t genus = 0;  // of each component
};

// Builds the restriction to a general member of `ruling` sheet by sheet:
// sheets are group elements and the monodromy around a point of D_sigma is
// translation by sigma. Components come from union-find, the genus from
// Riemann-Hurwitz with explicit cycle counts. Quadric base only.
inline CurveCover hurwitz(const BuildingData& d, const DivisorClass& ruling) {
  const int n = 1 << d.rank();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  std::vector<std::pair<Mask, std::int64_t>> monodromy;
  for (Mask s = 1; s < static_cast<Mask>(n); ++s) {
    const DivisorClass& b = d.branch(abelcov::GroupElement(d.rank(), s));
    const std::int64_t k = b[0] * ruling[1] + b[1] * ruling[0];
    if (k > 0) monodromy.emplace_back(s, k);
  }
  for (const auto& [m, k] : monodromy)
    for (int x = 0; x < n; ++x) parent[static_cast<std::size_t>(find(x))] = find(x ^ static_cast<int>(m));

  CurveCover out;
  for (int x = 0; x < n; ++x) out.components += find(x) == x;
  const int root = find(0);
  std::int64_t sheets = 0;
  for (int x = 0; x < n; ++x) sheets += find(x) == root;
  std::int64_t ramification = 0;
  for (const auto& [m, k] : monodromy) {
    std::int64_t cycles = 0;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int x = 0; x < n; ++x) {
      if (find(x) != root || seen[static_cast<std::size_t>(x)]) continue;
      ++cycles;
      for (int y = x; !seen[static_cast<std::size_t>(y)]; y ^= static_cast<int>(m)) seen[static_cast<std::size_t>(y)] = true;
    }
    ramification += k * (sheets - cycles);
  }
  out.genus = (-2 * sheets + ramification + 2) / 2;
  return out;
}

struct CoverNumbers {
  std::int64_t K2 = 0, pg = 0, chi = 0, q = 0;
  int contributing = 0;
  std::optional<std::int64_t> degree;
};

// Invariants of the Z_2^rank-cover of P1 x P1 with D_sigma = key[sigma - 1],
// straight from the formulas: L_chi by halving, h0 and Riemann-Roch in
// closed form. Empty when no cover exists.
inline std::optional<CoverNumbers> cover_numbers(int rank, const Key& key) {
  const Mask n = Mask{1} << rank;
  std::int64_t bx = 0, by = 0;
  for (const auto& d : key) {
    bx += d[0];
    by += d[1];
  }
  CoverNumbers o;
  std::int64_t pg = 0, chi = n;
  std::int64_t la = 0, lb = 0;
  for (Mask c = 1; c < n; ++c) {
    std::int64_t sx = 0, sy = 0;
    for (Mask s = 1; s < n; ++s) {
      if (std::popcount(c & s) % 2) {
        sx += key[s - 1][0];
        sy += key[s - 1][1];
      }
    }
    if (sx % 2 || sy % 2 || (sx == 0 && sy == 0)) return std::nullopt;
    const std::int64_t a = sx / 2, b = sy / 2;
    const std::int64_t h = a >= 2 && b >= 2 ? (a - 1) * (b - 1) : 0;
    if (h > 0) {
      ++o.contributing;
      la = a;
      lb = b;
    }
    pg += h;
    chi += a * b - a - b;
  }
  o.K2 = static_cast<std::int64_t>(n) * 2 * (bx - 4) * (by - 4) / 4;
  o.pg = pg;
  o.chi = chi;
  o.q = pg + 1 - chi;
  if (o.contributing == 1 && pg > 2 && la >= 3 && lb >= 3) o.degree = n;
  return o;
}

struct Filter {
  std::optional<std::pair<std::int64_t, std::int64_t>> K2, pg, q, chi;
  bool single = false;
  std::optional<std::int64_t> degree;
  bool accepts(const CoverNumbers& o) const {
    auto in = [](const auto& r, std::int64_t v) { return !r || (r->first <= v && v <= r->second); };
    return in(K2, o.K2) && in(pg, o.pg) && in(q, o.q) && in(chi, o.chi) && (!single || o.contributing == 1) &&
           (!degree || o.degree == degree);
  }
};

// Every assignment of `classes` to the nonzero elements, unpruned.
inline std::set<Key> brute_force_search(int rank, const std::vector<DivisorClass>& classes, const Filter& filter) {
  const std::size_t slots = (std::size_t{1} << rank) - 1;
  std::set<Key> out;
  std::vector<std::size_t> idx(slots, 0);
  while (true) {
    Key key;
    for (std::size_t i : idx) key.push_back(classes[i]);
    if (auto o = cover_numbers(rank, key); o && filter.accepts(*o)) out.insert(key);
    std::size_t i = 0;
    while (i < slots && ++idx[i] == classes.size()) idx[i++] = 0;
    if (i == slots) break;
  }
  return out;
}

}  // namespace oracle
