#pragma once

// Exact F2 linear algebra for G = Z_2^n and its character group.
//
// Elements and characters are bit vectors of length n stored in a machine
// word. Coordinate 0 is the leftmost symbol of the printed bit string and
// lives in the most significant used bit, so "1100" has mask 0b1100.

#include <abelcov/errors.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace abelcov {

inline constexpr int kMaxRank = 16;

using Mask = std::uint32_t;

template <class Tag>
class F2Vector {
 public:
  F2Vector() = default;
  F2Vector(int rank, Mask bits) : rank_(rank), bits_(bits) {
    if (rank < 1 || rank > kMaxRank) {
      throw InputError("group rank must be in [1, " + std::to_string(kMaxRank) + "], got " +
                       std::to_string(rank));
    }
    if (bits >> rank) throw InputError("bit mask exceeds rank");
  }

  static F2Vector zero(int rank) { return F2Vector(rank, 0); }

  /// Parses "1100"; the string length is the rank.
  static F2Vector parse(std::string_view text) {
    if (text.empty() || text.size() > static_cast<std::size_t>(kMaxRank)) {
      throw InputError("bit string must have 1.." + std::to_string(kMaxRank) + " symbols: '" +
                       std::string(text) + "'");
    }
    Mask bits = 0;
    for (char c : text) {
      if (c != '0' && c != '1') throw InputError("bad bit string '" + std::string(text) + "'");
      bits = (bits << 1) | static_cast<Mask>(c - '0');
    }
    return F2Vector(static_cast<int>(text.size()), bits);
  }

  int rank() const { return rank_; }
  Mask bits() const { return bits_; }
  bool is_zero() const { return bits_ == 0; }

  /// Coordinate i counted from the left of the printed string.
  bool coordinate(int i) const { return (bits_ >> (rank_ - 1 - i)) & 1u; }

  std::string to_string() const {
    std::string s(static_cast<std::size_t>(rank_), '0');
    for (int i = 0; i < rank_; ++i) {
      if (coordinate(i)) s[static_cast<std::size_t>(i)] = '1';
    }
    return s;
  }

  F2Vector operator+(const F2Vector& other) const {
    require_same_rank(other);
    F2Vector out = *this;
    out.bits_ ^= other.bits_;
    return out;
  }

  void require_same_rank(const F2Vector& other) const {
    if (rank_ != other.rank_) {
      throw RankMismatch("rank mismatch: " + std::to_string(rank_) + " vs " +
                         std::to_string(other.rank_));
    }
  }

  friend bool operator==(const F2Vector&, const F2Vector&) = default;
  friend auto operator<=>(const F2Vector& a, const F2Vector& b) {
    if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  int rank_ = 1;
  Mask bits_ = 0;
};

struct ElementTag {};
struct CharacterTag {};

using GroupElement = F2Vector<ElementTag>;
using Character = F2Vector<CharacterTag>;

/// <chi, sigma> in F2.
int pairing(const Character& chi, const GroupElement& sigma);

/// chi(sigma) = (-1)^<chi, sigma>.
int char_eval(const Character& chi, const GroupElement& sigma);

/// Subspace of F2^n with a canonical reduced row-echelon basis.
///
/// Basis rows are sorted by pivot, pivot = highest set bit; every pivot bit is
/// cleared in all other rows. Two spans are equal iff their bases are equal.
template <class V>
class Span {
 public:
  Span() = default;
  explicit Span(int rank) : rank_(rank) { V::zero(rank); }

  int ambient_rank() const { return rank_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  std::uint64_t order() const { return std::uint64_t{1} << basis_.size(); }
  const std::vector<V>& basis() const { return basis_; }
  const std::vector<V>& generators() const { return generators_; }

  /// Reduces v modulo the span; the result is the canonical coset representative.
  V reduce(const V& v) const {
    require_rank(v);
    Mask m = v.bits();
    for (const V& row : basis_) {
      const Mask pivot = top_bit(row.bits());
      if (m & pivot) m ^= row.bits();
    }
    return V(rank_, m);
  }

  bool contains(const V& v) const { return reduce(v).is_zero(); }

  /// Pivot masks of the basis rows, OR-ed.
  Mask pivot_mask() const {
    Mask out = 0;
    for (const V& row : basis_) out |= top_bit(row.bits());
    return out;
  }

  std::vector<V> elements() const {
    std::vector<V> out;
    out.reserve(order());
    for (std::uint64_t k = 0; k < order(); ++k) {
      Mask m = 0;
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        if ((k >> i) & 1u) m ^= basis_[i].bits();
      }
      out.emplace_back(rank_, m);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Adds one generator, keeping the basis canonical.
  void insert(const V& v) {
    require_rank(v);
    generators_.push_back(v);
    V r = reduce(v);
    if (r.is_zero()) return;
    const Mask pivot = top_bit(r.bits());
    for (V& row : basis_) {
      if (row.bits() & pivot) row = V(rank_, row.bits() ^ r.bits());
    }
    basis_.push_back(r);
    std::sort(basis_.begin(), basis_.end(), [](const V& a, const V& b) { return a.bits() > b.bits(); });
  }

  friend bool operator==(const Span& a, const Span& b) {
    return a.rank_ == b.rank_ && a.basis_ == b.basis_;
  }

  static Mask top_bit(Mask m) {
    Mask t = m;
    t |= t >> 1;
    t |= t >> 2;
    t |= t >> 4;
    t |= t >> 8;
    t |= t >> 16;
    return t ^ (t >> 1);
  }

 private:
  void require_rank(const V& v) const {
    if (v.rank() != rank_) {
      throw RankMismatch("rank mismatch: span of rank " + std::to_string(rank_) +
                         ", vector of rank " + std::to_string(v.rank()));
    }
  }

  int rank_ = 1;
  std::vector<V> basis_;
  std::vector<V> generators_;
};

using Subgroup = Span<GroupElement>;
using CharacterSubgroup = Span<Character>;

Subgroup span(int rank, std::span<const GroupElement> generators);
CharacterSubgroup span(int rank, std::span<const Character> generators);

Subgroup parse_subgroup(int rank, std::string_view comma_separated);

/// {chi : chi(h) = +1 for all h in H}.
CharacterSubgroup annihilator(const Subgroup& subgroup);
/// {sigma : chi(sigma) = +1 for all chi in S}; inverse of the above.
Subgroup annihilator(const CharacterSubgroup& characters);

/// Canonical representative of sigma + H.
GroupElement coset_image(const GroupElement& sigma, const Subgroup& subgroup);

/// Coordinates of G/H: the non-pivot positions of H's basis, left to right.
/// Restricting a reduced representative (or a character in H^perp) to these
/// positions gives coordinates on G/H (resp. its dual).
std::vector<int> quotient_positions(const Subgroup& subgroup);
GroupElement project_to_quotient(const GroupElement& sigma, const Subgroup& subgroup);
Character project_to_quotient(const Character& chi, const Subgroup& subgroup);

/// Every subgroup of Z_2^rank, in canonical order (by dimension, then basis).
std::vector<Subgroup> all_subgroups(int rank);

/// Invertible linear map of Z_2^n, stored by the images of the unit vectors.
/// Characters transform contragrediently so pairings are preserved.
class Automorphism {
 public:
  explicit Automorphism(std::vector<Mask> columns);

  static Automorphism identity(int rank);

  int rank() const { return static_cast<int>(columns_.size()); }
  GroupElement apply(const GroupElement& sigma) const;
  Character apply(const Character& chi) const;
  Mask apply_mask(Mask sigma) const;
  Automorphism inverse() const;
  const std::vector<Mask>& columns() const { return columns_; }

 private:
  std::vector<Mask> columns_;  // column j = image of the vector with coordinate j set
  std::vector<Mask> dual_columns_;
};

/// All of GL(rank, F2). Only rank <= 4 is supported (20160 maps at rank 4).
std::vector<Automorphism> general_linear_group(int rank);

Automorphism random_automorphism(int rank, std::mt19937_64& rng);

}  // namespace abelcov
