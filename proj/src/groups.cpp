#include <abelcov/groups.hpp>

#include <bit>
#include <set>

namespace abelcov {

namespace {

template <class V>
Span<V> span_impl(int rank, std::span<const V> generators) {
  Span<V> out(rank);
  for (const V& g : generators) out.insert(g);
  return out;
}

// Bit of coordinate j in a rank-n mask.
Mask unit(int rank, int j) { return Mask{1} << (rank - 1 - j); }

template <class From, class To>
Span<To> orthogonal(const Span<From>& s) {
  const int n = s.ambient_rank();
  const Mask pivots = s.pivot_mask();
  Span<To> out(n);
  // One null vector per free coordinate: set that coordinate, then fix each
  // pivot coordinate so the corresponding basis row pairs to zero.
  for (int j = 0; j < n; ++j) {
    const Mask free_bit = unit(n, j);
    if (pivots & free_bit) continue;
    Mask v = free_bit;
    for (const From& row : s.basis()) {
      if (row.bits() & free_bit) v |= Span<From>::top_bit(row.bits());
    }
    out.insert(To(n, v));
  }
  return out;
}

}  // namespace

int pairing(const Character& chi, const GroupElement& sigma) {
  if (chi.rank() != sigma.rank()) {
    throw RankMismatch("character of rank " + std::to_string(chi.rank()) +
                       " evaluated on element of rank " + std::to_string(sigma.rank()));
  }
  return std::popcount(chi.bits() & sigma.bits()) & 1;
}

int char_eval(const Character& chi, const GroupElement& sigma) {
  return pairing(chi, sigma) ? -1 : 1;
}

Subgroup span(int rank, std::span<const GroupElement> generators) {
  return span_impl(rank, generators);
}

CharacterSubgroup span(int rank, std::span<const Character> generators) {
  return span_impl(rank, generators);
}

Subgroup parse_subgroup(int rank, std::string_view text) {
  std::vector<GroupElement> gens;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view token = text.substr(start, end - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty()) {
      GroupElement g = GroupElement::parse(token);
      if (g.rank() != rank) {
        throw InputError("subgroup generator '" + std::string(token) + "' does not have rank " +
                         std::to_string(rank));
      }
      gens.push_back(g);
    }
    start = end + 1;
  }
  return span(rank, gens);
}

CharacterSubgroup annihilator(const Subgroup& subgroup) {
  return orthogonal<GroupElement, Character>(subgroup);
}

Subgroup annihilator(const CharacterSubgroup& characters) {
  return orthogonal<Character, GroupElement>(characters);
}

GroupElement coset_image(const GroupElement& sigma, const Subgroup& subgroup) {
  return subgroup.reduce(sigma);
}

std::vector<int> quotient_positions(const Subgroup& subgroup) {
  const int n = subgroup.ambient_rank();
  const Mask pivots = subgroup.pivot_mask();
  std::vector<int> out;
  for (int j = 0; j < n; ++j) {
    if (!(pivots & unit(n, j))) out.push_back(j);
  }
  return out;
}

namespace {

template <class V>
V restrict_to(const V& v, const std::vector<int>& positions) {
  if (positions.empty()) throw InputError("quotient by the whole group has rank 0");
  Mask m = 0;
  for (int j : positions) m = (m << 1) | (v.coordinate(j) ? 1u : 0u);
  return V(static_cast<int>(positions.size()), m);
}

}  // namespace

GroupElement project_to_quotient(const GroupElement& sigma, const Subgroup& subgroup) {
  return restrict_to(subgroup.reduce(sigma), quotient_positions(subgroup));
}

Character project_to_quotient(const Character& chi, const Subgroup& subgroup) {
  chi.require_same_rank(Character::zero(subgroup.ambient_rank()));
  for (const GroupElement& h : subgroup.basis()) {
    if (pairing(chi, h) != 0) {
      throw InputError("character " + chi.to_string() + " is not trivial on the subgroup");
    }
  }
  return restrict_to(chi, quotient_positions(subgroup));
}

std::vector<Subgroup> all_subgroups(int rank) {
  auto key = [](const Subgroup& s) {
    std::vector<Mask> k;
    k.push_back(static_cast<Mask>(s.dimension()));
    for (const auto& b : s.basis()) k.push_back(b.bits());
    return k;
  };
  std::set<std::vector<Mask>> seen;
  std::vector<Subgroup> out;
  std::vector<Subgroup> frontier{Subgroup(rank)};
  seen.insert(key(frontier.front()));
  out.push_back(frontier.front());
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const Subgroup& s : frontier) {
      for (Mask m = 1; m < (Mask{1} << rank); ++m) {
        GroupElement g(rank, m);
        if (s.contains(g)) continue;
        Subgroup t(rank);
        for (const auto& b : s.basis()) t.insert(b);
        t.insert(g);
        if (seen.insert(key(t)).second) {
          out.push_back(t);
          next.push_back(t);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [&](const Subgroup& a, const Subgroup& b) { return key(a) < key(b); });
  return out;
}

namespace {

// Inverse of the matrix whose columns are given; empty if singular.
std::vector<Mask> invert_columns(const std::vector<Mask>& columns) {
  const int n = static_cast<int>(columns.size());
  // rows[i] holds row i of [M | I] as two masks over column index (col j -> bit j).
  std::vector<Mask> left(static_cast<std::size_t>(n), 0), right(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (columns[static_cast<std::size_t>(j)] & unit(n, i)) left[static_cast<std::size_t>(i)] |= Mask{1} << j;
    }
    right[static_cast<std::size_t>(i)] = Mask{1} << i;
  }
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r) {
      if (left[static_cast<std::size_t>(r)] & (Mask{1} << c)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return {};
    std::swap(left[static_cast<std::size_t>(c)], left[static_cast<std::size_t>(pivot)]);
    std::swap(right[static_cast<std::size_t>(c)], right[static_cast<std::size_t>(pivot)]);
    for (int r = 0; r < n; ++r) {
      if (r != c && (left[static_cast<std::size_t>(r)] & (Mask{1} << c))) {
        left[static_cast<std::size_t>(r)] ^= left[static_cast<std::size_t>(c)];
        right[static_cast<std::size_t>(r)] ^= right[static_cast<std::size_t>(c)];
      }
    }
  }
  // right[i] bit j = inverse entry (i, j); column j of the inverse.
  std::vector<Mask> inv(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (right[static_cast<std::size_t>(i)] & (Mask{1} << j)) inv[static_cast<std::size_t>(j)] |= unit(n, i);
    }
  }
  return inv;
}

}  // namespace

Automorphism::Automorphism(std::vector<Mask> columns) : columns_(std::move(columns)) {
  const int n = rank();
  if (n < 1 || n > kMaxRank) throw InputError("automorphism rank out of range");
  std::vector<Mask> inv = invert_columns(columns_);
  if (inv.empty()) throw InputError("matrix is not invertible over F2");
  // Dual map is the inverse transpose: its column j is row j of the inverse.
  dual_columns_.assign(static_cast<std::size_t>(n), 0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (inv[static_cast<std::size_t>(i)] & unit(n, j)) dual_columns_[static_cast<std::size_t>(j)] |= unit(n, i);
    }
  }
}

Automorphism Automorphism::identity(int rank) {
  std::vector<Mask> cols;
  for (int j = 0; j < rank; ++j) cols.push_back(unit(rank, j));
  return Automorphism(std::move(cols));
}

Mask Automorphism::apply_mask(Mask sigma) const {
  const int n = rank();
  Mask out = 0;
  for (int j = 0; j < n; ++j) {
    if (sigma & unit(n, j)) out ^= columns_[static_cast<std::size_t>(j)];
  }
  return out;
}

GroupElement Automorphism::apply(const GroupElement& sigma) const {
  sigma.require_same_rank(GroupElement::zero(rank()));
  return GroupElement(rank(), apply_mask(sigma.bits()));
}

Character Automorphism::apply(const Character& chi) const {
  chi.require_same_rank(Character::zero(rank()));
  const int n = rank();
  Mask out = 0;
  for (int j = 0; j < n; ++j) {
    if (chi.bits() & unit(n, j)) out ^= dual_columns_[static_cast<std::size_t>(j)];
  }
  return Character(n, out);
}

Automorphism Automorphism::inverse() const { return Automorphism(invert_columns(columns_)); }

std::vector<Automorphism> general_linear_group(int rank) {
  if (rank < 1 || rank > 4) throw InputError("general_linear_group supports rank 1..4");
  const Mask size = Mask{1} << rank;
  std::vector<Automorphism> out;
  std::vector<Mask> cols(static_cast<std::size_t>(rank), 1);
  // Odometer over all column tuples of nonzero vectors; keep the invertible ones.
  while (true) {
    if (!invert_columns(cols).empty()) out.emplace_back(cols);
    int k = rank - 1;
    while (k >= 0) {
      if (++cols[static_cast<std::size_t>(k)] < size) break;
      cols[static_cast<std::size_t>(k)] = 1;
      --k;
    }
    if (k < 0) break;
  }
  return out;
}

Automorphism random_automorphism(int rank, std::mt19937_64& rng) {
  std::uniform_int_distribution<Mask> pick(1, (Mask{1} << rank) - 1);
  while (true) {
    std::vector<Mask> cols;
    for (int j = 0; j < rank; ++j) cols.push_back(pick(rng));
    if (!invert_columns(cols).empty()) return Automorphism(std::move(cols));
  }
}

}  // namespace abelcov
