#include <abelcov/search.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <charconv>
#include <map>
#include <mutex>
#include <thread>

namespace abelcov {

SearchTargets parse_targets(std::string_view text) {
  SearchTargets out;
  std::size_t start = 0;
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw InputError("bad integer '" + std::string(s) + "' in target '" + std::string(text) + "'");
    }
    return v;
  };
  while (start < text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string token;
    for (char c : text.substr(start, end - start)) {
      if (c != ' ') token += c;
    }
    start = end + 1;
    if (token.empty()) continue;
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw InputError("target entry '" + token + "' lacks '='");
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    IntRange range;
    if (const auto dots = value.find(".."); dots != std::string::npos) {
      range = {parse_int(std::string_view(value).substr(0, dots)), parse_int(std::string_view(value).substr(dots + 2))};
      if (range.lo > range.hi) throw InputError("empty range in target '" + token + "'");
    } else {
      const std::int64_t v = parse_int(value);
      range = {v, v};
    }
    if (key == "K2") {
      out.K2 = range;
    } else if (key == "pg") {
      out.pg = range;
    } else if (key == "q") {
      out.q = range;
    } else if (key == "chi") {
      out.chi = range;
    } else {
      throw InputError("unknown target '" + key + "' (expected K2, pg, q, chi)");
    }
  }
  if (out.pg && out.q && out.chi && out.pg->lo == out.pg->hi && out.q->lo == out.q->hi &&
      out.chi->lo == out.chi->hi && out.chi->lo != 1 - out.q->lo + out.pg->lo) {
    throw InputError("inconsistent target: chi must equal 1 - q + pg");
  }
  return out;
}

SearchSpec SearchSpec::uniform(int rank, const std::vector<DivisorClass>& classes) {
  SearchSpec spec;
  spec.rank = rank;
  spec.slot_classes.assign(std::size_t{1} << rank, classes);
  spec.slot_classes[0].clear();
  return spec;
}

std::vector<Mask> slot_schedule(int rank) {
  std::vector<Mask> out;
  for (Mask m = 1; m < (Mask{1} << rank); ++m) {
    if (std::popcount(m) > 1) out.push_back(m);
  }
  for (Mask m = 1; m < (Mask{1} << rank); ++m) {
    if (std::popcount(m) == 1) out.push_back(m);
  }
  return out;
}

std::vector<DivisorClass> branch_key(const BuildingData& data) {
  std::vector<DivisorClass> key;
  for (const GroupElement& sigma : data.nonzero_elements()) key.push_back(data.branch(sigma));
  return key;
}

namespace {

struct Cls {
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend auto operator<=>(const Cls&, const Cls&) = default;
};

// Xor basis indexed by top bit.
struct XorBasis {
  std::array<Mask, kMaxSearchRank> rows{};
  bool insert(Mask v) {
    for (int bit = kMaxSearchRank - 1; bit >= 0; --bit) {
      if (!((v >> bit) & 1u)) continue;
      if (!rows[static_cast<std::size_t>(bit)]) {
        rows[static_cast<std::size_t>(bit)] = v;
        return true;
      }
      v ^= rows[static_cast<std::size_t>(bit)];
    }
    return false;
  }
  int rank() const {
    int r = 0;
    for (Mask m : rows) r += m != 0;
    return r;
  }
};

// Membership bitset of a span of masks (rank <= 5, so 32 elements).
std::uint64_t span_members(const std::vector<Mask>& gens) {
  std::uint64_t members = 1;  // {0}
  for (Mask g : gens) {
    std::uint64_t shifted = 0;
    for (Mask v = 0; v < 64; ++v) {
      if ((members >> v) & 1u) shifted |= std::uint64_t{1} << (v ^ g);
    }
    members |= shifted;
  }
  return members;
}

struct State {
  std::int64_t x = 0;
  std::int64_t y = 0;
  Mask odd_f = 0;
  Mask odd_g = 0;
  XorBasis support;
};

struct Symmetry {
  std::vector<Mask> inverse;  // tau -> pi^-1(tau)
  bool swap = false;
};

class Problem {
 public:
  explicit Problem(const SearchSpec& spec) : spec_(spec), rank_(spec.rank) {
    if (rank_ < 1 || rank_ > kMaxSearchRank) {
      throw InputError("search rank must be in [1, " + std::to_string(kMaxSearchRank) + "]");
    }
    const std::size_t order = std::size_t{1} << rank_;
    if (spec.slot_classes.size() != order) throw InputError("slot class table must have 2^n entries");
    slots_ = static_cast<int>(order) - 1;
    schedule_ = slot_schedule(rank_);

    std::vector<Cls> all;
    for (Mask m = 1; m < order; ++m) {
      const auto& list = spec.slot_classes[m];
      if (list.empty()) throw InputError("slot " + GroupElement(rank_, m).to_string() + " has no allowed class");
      for (const DivisorClass& d : list) {
        if (d.rank() != 2) throw InputError("search classes must live on P1xP1");
        if (d[0] < 0 || d[1] < 0) throw InputError("search classes must be effective");
        all.push_back({d[0], d[1]});
      }
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    classes_ = all;
    if (classes_.size() > 255) throw InputError("too many distinct classes");

    slot_options_.assign(order, {});
    for (Mask m = 1; m < order; ++m) {
      auto& opts = slot_options_[m];
      for (const DivisorClass& d : spec.slot_classes[m]) opts.push_back(index_of({d[0], d[1]}));
      std::sort(opts.begin(), opts.end());
      opts.erase(std::unique(opts.begin(), opts.end()), opts.end());
    }

    // Suffix tables over schedule depth.
    const auto depths = static_cast<std::size_t>(slots_) + 1;
    min_x_.assign(depths, 0);
    max_x_.assign(depths, 0);
    min_y_.assign(depths, 0);
    max_y_.assign(depths, 0);
    odd_f_span_.assign(depths, 1);
    odd_g_span_.assign(depths, 1);
    rest_basis_.assign(depths, {});
    rest_rank_.assign(depths, 0);
    std::vector<Mask> odd_f, odd_g;
    XorBasis rest;
    for (int d = slots_ - 1; d >= 0; --d) {
      const Mask sigma = schedule_[static_cast<std::size_t>(d)];
      std::int64_t lox = INT64_MAX, hix = 0, loy = INT64_MAX, hiy = 0;
      bool has_f = false, has_g = false, has_nonzero = false;
      for (auto idx : slot_options_[sigma]) {
        const Cls& c = classes_[idx];
        lox = std::min(lox, c.a);
        hix = std::max(hix, c.a);
        loy = std::min(loy, c.b);
        hiy = std::max(hiy, c.b);
        has_f |= (c.a & 1) != 0;
        has_g |= (c.b & 1) != 0;
        has_nonzero |= c.a != 0 || c.b != 0;
      }
      const auto du = static_cast<std::size_t>(d);
      min_x_[du] = min_x_[du + 1] + lox;
      max_x_[du] = max_x_[du + 1] + hix;
      min_y_[du] = min_y_[du + 1] + loy;
      max_y_[du] = max_y_[du + 1] + hiy;
      if (has_f) odd_f.push_back(sigma);
      if (has_g) odd_g.push_back(sigma);
      odd_f_span_[du] = span_members(odd_f);
      odd_g_span_[du] = span_members(odd_g);
      if (has_nonzero) rest.insert(sigma);
      rest_basis_[du] = rest;
      rest_rank_[du] = rest.rank();
    }

    swapped_.assign(classes_.size(), -1);
    for (std::size_t i = 0; i < classes_.size(); ++i) {
      const Cls t{classes_[i].b, classes_[i].a};
      auto it = std::lower_bound(classes_.begin(), classes_.end(), t);
      if (it != classes_.end() && *it == t) swapped_[i] = static_cast<int>(it - classes_.begin());
    }

    if (spec.targets.K2) build_totals_table();
  }

  int rank() const { return rank_; }
  int slots() const { return slots_; }
  const std::vector<Mask>& schedule() const { return schedule_; }
  const std::vector<Cls>& classes() const { return classes_; }
  const std::vector<std::uint8_t>& options_at_depth(int d) const {
    return slot_options_[schedule_[static_cast<std::size_t>(d)]];
  }
  const SearchSpec& spec() const { return spec_; }

  std::uint8_t index_of(const Cls& c) const {
    auto it = std::lower_bound(classes_.begin(), classes_.end(), c);
    return static_cast<std::uint8_t>(it - classes_.begin());
  }

  bool totals_feasible(int d, std::int64_t x, std::int64_t y) const {
    if (!use_totals_) return true;
    const auto du = static_cast<std::size_t>(d);
    return any_allowed(x + min_x_[du], x + max_x_[du], y + min_y_[du], y + max_y_[du]);
  }

  bool parity_feasible(int d, Mask odd_f, Mask odd_g) const {
    const auto du = static_cast<std::size_t>(d);
    return ((odd_f_span_[du] >> odd_f) & 1u) && ((odd_g_span_[du] >> odd_g) & 1u);
  }

  bool spanning_feasible(int d, const XorBasis& support) const {
    const auto du = static_cast<std::size_t>(d);
    if (rest_rank_[du] == rank_) return true;
    XorBasis combined = support;
    for (Mask m : rest_basis_[du].rows) {
      if (m) combined.insert(m);
    }
    return combined.rank() == rank_;
  }

  bool feasible(int d, const State& s) const {
    return totals_feasible(d, s.x, s.y) && parity_feasible(d, s.odd_f, s.odd_g) && spanning_feasible(d, s.support);
  }

  State advance(const State& s, int d, std::uint8_t idx) const {
    const Cls& c = classes_[idx];
    const Mask sigma = schedule_[static_cast<std::size_t>(d)];
    State t = s;
    t.x += c.a;
    t.y += c.b;
    if (c.a & 1) t.odd_f ^= sigma;
    if (c.b & 1) t.odd_g ^= sigma;
    if (c.a != 0 || c.b != 0) t.support.insert(sigma);
    return t;
  }

  std::int64_t k_squared(std::int64_t x, std::int64_t y) const {
    // 2^n (2K + B)^2 / 4 with 2K + B = (x - 4) F + (y - 4) G.
    const std::int64_t square = 2 * (x - 4) * (y - 4);
    return (square << rank_) / 4;
  }

  // Estimate via DP over (depth, totals, parities).
  std::uint64_t estimate() const {
    const std::int64_t bx = use_totals_ ? max_x_[0] + 1 : 1;
    const std::int64_t by = use_totals_ ? max_y_[0] + 1 : 1;
    const std::uint64_t parity_states = std::uint64_t{1} << (2 * rank_);
    const std::uint64_t states = static_cast<std::uint64_t>(bx * by) * parity_states;
    auto sat_add = [](std::uint64_t a, std::uint64_t b) {
      std::uint64_t out = 0;
      return __builtin_add_overflow(a, b, &out) ? UINT64_MAX : out;
    };
    auto sat_mul = [](std::uint64_t a, std::uint64_t b) {
      std::uint64_t out = 0;
      return __builtin_mul_overflow(a, b, &out) ? UINT64_MAX : out;
    };
    if (states > 4'000'000) {
      std::uint64_t total = 1, level = 1;
      for (int d = 0; d < slots_; ++d) {
        level = sat_mul(level, options_at_depth(d).size());
        total = sat_add(total, level);
      }
      return total;
    }
    // Dense DP; state = ((x * by + y) << 2n) | (odd_f << n) | odd_g.
    auto decode_x = [&](std::uint64_t k) { return static_cast<std::int64_t>((k >> (2 * rank_)) / static_cast<std::uint64_t>(by)); };
    auto decode_y = [&](std::uint64_t k) { return static_cast<std::int64_t>((k >> (2 * rank_)) % static_cast<std::uint64_t>(by)); };
    auto encode = [&](std::int64_t x, std::int64_t y, Mask f, Mask g) {
      const std::int64_t xx = use_totals_ ? x : 0;
      const std::int64_t yy = use_totals_ ? y : 0;
      return (static_cast<std::uint64_t>(xx * by + yy) << (2 * rank_)) | (static_cast<std::uint64_t>(f) << rank_) | g;
    };
    const Mask low = (Mask{1} << rank_) - 1;
    std::vector<std::uint64_t> current(states, 0), next(states, 0);
    std::uint64_t total = 0;
    if (!(totals_feasible(0, 0, 0) && parity_feasible(0, 0, 0))) return 0;
    current[encode(0, 0, 0, 0)] = 1;
    for (int d = 0;; ++d) {
      for (auto count : current) total = sat_add(total, count);
      if (d == slots_) break;
      std::fill(next.begin(), next.end(), 0);
      const Mask sigma = schedule_[static_cast<std::size_t>(d)];
      for (std::uint64_t key = 0; key < states; ++key) {
        const std::uint64_t count = current[key];
        if (count == 0) continue;
        const Mask f = static_cast<Mask>(key >> rank_) & low;
        const Mask g = static_cast<Mask>(key) & low;
        const std::int64_t x = decode_x(key), y = decode_y(key);
        for (auto idx : options_at_depth(d)) {
          const Cls& c = classes_[idx];
          const std::int64_t nx = x + c.a, ny = y + c.b;
          const Mask nf = (c.a & 1) ? f ^ sigma : f;
          const Mask ng = (c.b & 1) ? g ^ sigma : g;
          if (!totals_feasible(d + 1, nx, ny) || !parity_feasible(d + 1, nf, ng)) continue;
          auto& slot = next[encode(nx, ny, nf, ng)];
          slot = sat_add(slot, count);
        }
      }
      current.swap(next);
    }
    return total;
  }

  std::vector<Symmetry> symmetries() const {
    std::vector<Symmetry> out;
    const Mask order = Mask{1} << rank_;
    auto identity = [&] {
      Symmetry s;
      s.inverse.resize(order);
      for (Mask m = 0; m < order; ++m) s.inverse[m] = m;
      return s;
    };
    if (!spec_.symmetry) {
      out.push_back(identity());
      return out;
    }
    if (rank_ > 4) throw InputError("symmetry reduction supports rank <= 4; pass --no-symmetry");
    const std::vector<int>& swapped = swapped_;
    for (const Automorphism& a : general_linear_group(rank_)) {
      for (int sw = 0; sw < 2; ++sw) {
        bool preserves = true;
        for (Mask m = 1; m < order && preserves; ++m) {
          std::vector<std::uint8_t> image;
          for (auto idx : slot_options_[m]) {
            if (sw && swapped[idx] < 0) {
              preserves = false;
              break;
            }
            image.push_back(static_cast<std::uint8_t>(sw ? swapped[idx] : idx));
          }
          std::sort(image.begin(), image.end());
          preserves = preserves && image == slot_options_[a.apply_mask(m)];
        }
        if (!preserves) continue;
        Symmetry s;
        s.swap = sw != 0;
        s.inverse.resize(order);
        for (Mask m = 0; m < order; ++m) s.inverse[a.apply_mask(m)] = m;
        out.push_back(std::move(s));
      }
    }
    return out;
  }

  std::uint8_t swap_index(std::uint8_t idx) const { return static_cast<std::uint8_t>(swapped_[idx]); }

 private:
  void build_totals_table() {
    use_totals_ = true;
    box_x_ = max_x_[0] + 1;
    box_y_ = max_y_[0] + 1;
    prefix_.assign(static_cast<std::size_t>((box_x_ + 1) * (box_y_ + 1)), 0);
    for (std::int64_t x = 0; x < box_x_; ++x) {
      for (std::int64_t y = 0; y < box_y_; ++y) {
        const bool ok = spec_.targets.K2->contains(k_squared(x, y));
        prefix_[cell(x + 1, y + 1)] =
            (ok ? 1 : 0) + prefix_[cell(x, y + 1)] + prefix_[cell(x + 1, y)] - prefix_[cell(x, y)];
      }
    }
  }

  std::size_t cell(std::int64_t x, std::int64_t y) const { return static_cast<std::size_t>(x * (box_y_ + 1) + y); }

  bool any_allowed(std::int64_t x0, std::int64_t x1, std::int64_t y0, std::int64_t y1) const {
    x0 = std::max<std::int64_t>(x0, 0);
    y0 = std::max<std::int64_t>(y0, 0);
    x1 = std::min(x1, box_x_ - 1);
    y1 = std::min(y1, box_y_ - 1);
    if (x0 > x1 || y0 > y1) return false;
    const std::int64_t n = prefix_[cell(x1 + 1, y1 + 1)] - prefix_[cell(x0, y1 + 1)] - prefix_[cell(x1 + 1, y0)] +
                           prefix_[cell(x0, y0)];
    return n > 0;
  }

  const SearchSpec& spec_;
  int rank_;
  int slots_ = 0;
  std::vector<Mask> schedule_;
  std::vector<Cls> classes_;
  std::vector<std::vector<std::uint8_t>> slot_options_;  // by mask
  std::vector<std::int64_t> min_x_, max_x_, min_y_, max_y_;
  std::vector<std::uint64_t> odd_f_span_, odd_g_span_;
  std::vector<XorBasis> rest_basis_;
  std::vector<int> rest_rank_;
  bool use_totals_ = false;
  std::int64_t box_x_ = 0, box_y_ = 0;
  std::vector<std::int64_t> prefix_;
  std::vector<int> swapped_;
};

// Fast evaluation of a complete assignment, mirroring the library formulas on
// the quadric (K_Y = -2F - 2G, pg(Y) = q(Y) = 0, chi(Y) = 1).
struct Evaluation {
  bool valid = false;
  std::int64_t K2 = 0, pg = 0, chi = 0, q = 0;
  int contributing = 0;
  std::optional<std::int64_t> degree;
};

struct Hit {
  std::vector<std::uint8_t> code;  // class index by mask
  std::uint64_t stabilizer = 0;
};

struct BlockResult {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  std::uint64_t matches = 0;
  std::vector<Hit> hits;
};

class Walker {
 public:
  Walker(const Problem& problem, const std::vector<Symmetry>& symmetries, BlockResult& out)
      : p_(problem), syms_(symmetries), out_(out), code_(std::size_t{1} << problem.rank(), 0) {}

  void set_prefix(const std::vector<std::uint8_t>& prefix) {
    for (std::size_t d = 0; d < prefix.size(); ++d) code_[p_.schedule()[d]] = prefix[d];
  }

  void dfs(int d, const State& s) {
    ++out_.nodes;
    if (d == p_.slots()) {
      leaf();
      return;
    }
    const Mask sigma = p_.schedule()[static_cast<std::size_t>(d)];
    for (auto idx : p_.options_at_depth(d)) {
      State t = p_.advance(s, d, idx);
      if (!p_.feasible(d + 1, t)) continue;
      code_[sigma] = idx;
      dfs(d + 1, t);
    }
  }

 private:
  Evaluation evaluate() const {
    Evaluation e;
    const int n = p_.rank();
    const Mask order = Mask{1} << n;
    const auto& cls = p_.classes();
    std::int64_t bx = 0, by = 0;
    for (Mask m = 1; m < order; ++m) {
      bx += cls[code_[m]].a;
      by += cls[code_[m]].b;
    }
    e.K2 = p_.k_squared(bx, by);
    e.pg = 0;
    e.chi = std::int64_t{1} << n;
    std::int64_t single_a = 0, single_b = 0;
    for (Mask chi = 1; chi < order; ++chi) {
      std::int64_t sx = 0, sy = 0;
      for (Mask m = 1; m < order; ++m) {
        if (std::popcount(chi & m) & 1) {
          sx += cls[code_[m]].a;
          sy += cls[code_[m]].b;
        }
      }
      if ((sx | sy) & 1) return e;
      const std::int64_t la = sx / 2, lb = sy / 2;
      if (la == 0 && lb == 0) return e;
      if (la >= 2 && lb >= 2) {
        e.pg += (la - 1) * (lb - 1);
        ++e.contributing;
        single_a = la - 2;
        single_b = lb - 2;
      }
      e.chi += la * lb - la - lb;
    }
    e.q = e.pg + 1 - e.chi;
    if (e.q < 0) return e;
    e.valid = true;
    if (e.pg > 2 && e.contributing == 1 && single_a >= 1 && single_b >= 1) e.degree = std::int64_t{1} << n;
    return e;
  }

  void leaf() {
    const Evaluation e = evaluate();
    if (!e.valid) return;
    ++out_.leaves;
    const SearchTargets& t = p_.spec().targets;
    if (t.K2 && !t.K2->contains(e.K2)) return;
    if (t.pg && !t.pg->contains(e.pg)) return;
    if (t.q && !t.q->contains(e.q)) return;
    if (t.chi && !t.chi->contains(e.chi)) return;
    if (t.single_contributing && e.contributing != 1) return;
    if (t.canonical_degree && e.degree != t.canonical_degree) return;
    ++out_.matches;
    std::uint64_t stabilizer = 0;
    if (!is_canonical(stabilizer)) return;
    out_.hits.push_back({code_, stabilizer});
  }

  bool is_canonical(std::uint64_t& stabilizer) const {
    const Mask order = static_cast<Mask>(code_.size());
    for (const Symmetry& g : syms_) {
      int cmp = 0;
      for (Mask tau = 1; tau < order; ++tau) {
        std::uint8_t v = code_[g.inverse[tau]];
        if (g.swap) v = p_.swap_index(v);
        if (v != code_[tau]) {
          cmp = v < code_[tau] ? -1 : 1;
          break;
        }
      }
      if (cmp < 0) return false;
      if (cmp == 0) ++stabilizer;
    }
    return true;
  }

  const Problem& p_;
  const std::vector<Symmetry>& syms_;
  BlockResult& out_;
  std::vector<std::uint8_t> code_;
};

// Enumerates the surviving prefixes of length `depth`, counting shallower nodes.
void collect_prefixes(const Problem& p, int d, int depth, const State& s, std::vector<std::uint8_t>& prefix,
                      std::vector<std::pair<std::vector<std::uint8_t>, State>>& out, std::uint64_t& nodes) {
  if (d == depth) {
    out.emplace_back(prefix, s);
    return;
  }
  ++nodes;
  for (auto idx : p.options_at_depth(d)) {
    State t = p.advance(s, d, idx);
    if (!p.feasible(d + 1, t)) continue;
    prefix.push_back(idx);
    collect_prefixes(p, d + 1, depth, t, prefix, out, nodes);
    prefix.pop_back();
  }
}

std::optional<std::int64_t> library_degree(const BuildingData& data) {
  try {
    return canonical_degree_report(data).canonical_degree;
  } catch (const DegenerateCanonical&) {
    return std::nullopt;
  }
}

}  // namespace

std::uint64_t estimate_nodes(const SearchSpec& spec) { return Problem(spec).estimate(); }

bool prune_bound(const SearchSpec& spec, std::span<const DivisorClass> prefix) {
  const Problem p(spec);
  if (prefix.size() > static_cast<std::size_t>(p.slots())) throw InputError("prefix longer than the schedule");
  State s;
  for (std::size_t d = 0; d < prefix.size(); ++d) {
    const DivisorClass& c = prefix[d];
    if (c.rank() != 2) throw InputError("search classes must live on P1xP1");
    const Mask sigma = p.schedule()[d];
    s.x += c[0];
    s.y += c[1];
    if (c[0] & 1) s.odd_f ^= sigma;
    if (c[1] & 1) s.odd_g ^= sigma;
    if (!c.is_zero()) s.support.insert(sigma);
  }
  return p.feasible(static_cast<int>(prefix.size()), s);
}

SearchOutcome enumerate(const SearchSpec& spec) {
  const Problem problem(spec);
  SearchOutcome outcome;
  outcome.stats.estimated_nodes = problem.estimate();
  if (outcome.stats.estimated_nodes > spec.budget) {
    throw BudgetExceeded("estimated " + std::to_string(outcome.stats.estimated_nodes) +
                         " search nodes exceeds the budget of " + std::to_string(spec.budget));
  }
  const std::vector<Symmetry> syms = problem.symmetries();
  outcome.stats.symmetry_order = syms.size();

  const unsigned jobs = std::max(1u, spec.jobs);
  const int split_depth = jobs > 1 ? std::min(3, problem.slots()) : 0;
  std::vector<std::pair<std::vector<std::uint8_t>, State>> prefixes;
  std::vector<std::uint8_t> scratch;
  State root;
  if (problem.feasible(0, root)) {
    collect_prefixes(problem, 0, split_depth, root, scratch, prefixes, outcome.stats.nodes);
  }

  std::vector<BlockResult> blocks(prefixes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < prefixes.size(); i = next++) {
      Walker walker(problem, syms, blocks[i]);
      walker.set_prefix(prefixes[i].first);
      walker.dfs(split_depth, prefixes[i].second);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  std::vector<Hit> hits;
  for (auto& b : blocks) {
    outcome.stats.nodes += b.nodes;
    outcome.stats.leaves += b.leaves;
    outcome.stats.matches += b.matches;
    for (auto& h : b.hits) hits.push_back(std::move(h));
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.code < b.code; });

  const SurfacePtr quadric = preset_p1xp1();
  const auto& cls = problem.classes();
  for (const Hit& h : hits) {
    BuildingData data(quadric, spec.rank);
    data.assumptions = {true, true, true};
    for (Mask m = 1; m < h.code.size(); ++m) {
      data.set_branch(GroupElement(spec.rank, m), DivisorClass{cls[h.code[m]].a, cls[h.code[m]].b});
    }
    data = with_solved_bundles(data);
    if (!validate(data).passed()) throw Error("search emitted building data that fails validation");
    SearchResult r{data, syms.size() / h.stabilizer, compute_invariants(data), contributing_characters(data),
                   std::nullopt};
    r.canonical_degree = r.invariants.pg > 2 ? library_degree(data) : std::nullopt;
    const SearchTargets& t = spec.targets;
    const bool ok = (!t.K2 || t.K2->contains(r.invariants.K2)) && (!t.pg || t.pg->contains(r.invariants.pg)) &&
                    (!t.q || t.q->contains(r.invariants.q)) && (!t.chi || t.chi->contains(r.invariants.chi)) &&
                    (!t.single_contributing || r.contributing.size() == 1) &&
                    (!t.canonical_degree || r.canonical_degree == t.canonical_degree);
    if (!ok) throw Error("search emitted a result that fails its filters on re-check");
    outcome.results.push_back(std::move(r));
  }
  outcome.stats.emitted = outcome.results.size();
  return outcome;
}

BuildingData canonicalize(const BuildingData& data) {
  if (data.surface().kind != SurfaceKind::Quadric) throw InputError("canonicalize needs the quadric preset");
  if (data.rank() > 4) throw InputError("canonicalize supports rank <= 4");
  std::optional<BuildingData> best;
  std::vector<DivisorClass> best_key;
  const BuildingData swapped = swap_rulings(data);
  for (const Automorphism& a : general_linear_group(data.rank())) {
    for (const BuildingData* base : {&data, &swapped}) {
      BuildingData candidate = relabel(*base, a);
      std::vector<DivisorClass> key = branch_key(candidate);
      if (!best || key < best_key) {
        best_key = std::move(key);
        best = std::move(candidate);
      }
    }
  }
  return *best;
}

}  // namespace abelcov
