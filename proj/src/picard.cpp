#include <abelcov/picard.hpp>

#include <cctype>
#include <limits>

namespace abelcov {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("integer overflow in addition");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("integer overflow in multiplication");
  return out;
}

namespace {

std::int64_t bounded(std::int64_t v) {
  if (v > kCoordinateLimit || v < -kCoordinateLimit) {
    throw OverflowError("divisor class coordinate " + std::to_string(v) + " exceeds the limit " +
                        std::to_string(kCoordinateLimit));
  }
  return v;
}

}  // namespace

DivisorClass::DivisorClass(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {
  for (auto c : coords_) bounded(c);
}

DivisorClass::DivisorClass(std::initializer_list<std::int64_t> coords)
    : DivisorClass(std::vector<std::int64_t>(coords)) {}

bool DivisorClass::is_zero() const {
  for (auto c : coords_) {
    if (c != 0) return false;
  }
  return true;
}

void DivisorClass::require_same_rank(const DivisorClass& other) const {
  if (rank() != other.rank()) {
    throw RankMismatch("divisor classes of Picard rank " + std::to_string(rank()) + " and " +
                       std::to_string(other.rank()));
  }
}

DivisorClass DivisorClass::operator+(const DivisorClass& other) const {
  require_same_rank(other);
  DivisorClass out = *this;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    out.coords_[i] = bounded(checked_add(coords_[i], other.coords_[i]));
  }
  return out;
}

DivisorClass DivisorClass::operator-() const {
  DivisorClass out = *this;
  for (auto& c : out.coords_) c = -c;
  return out;
}

DivisorClass DivisorClass::operator-(const DivisorClass& other) const { return *this + (-other); }

DivisorClass operator*(std::int64_t k, const DivisorClass& d) {
  DivisorClass out = d;
  for (auto& c : out.coords_) c = bounded(checked_mul(k, c));
  return out;
}

namespace {

std::int64_t binomial2(std::int64_t d) {
  // binomial(d + 2, 2)
  return checked_mul(d + 2, d + 1) / 2;
}

}  // namespace

SurfacePtr preset_p1xp1() {
  static const SurfacePtr surface = [] {
    auto s = std::make_shared<BaseSurface>();
    s->name = "p1xp1";
    s->kind = SurfaceKind::Quadric;
    s->basis_names = {"F", "G"};
    s->form = {{0, 1}, {1, 0}};
    s->canonical = DivisorClass{-2, -2};
    s->pg = 0;
    s->q = 0;
    s->chi = 1;
    s->effective = [](const DivisorClass& d) { return d[0] >= 0 && d[1] >= 0; };
    s->h0 = [](const DivisorClass& d) -> std::int64_t {
      if (d[0] < 0 || d[1] < 0) return 0;
      return checked_mul(d[0] + 1, d[1] + 1);
    };
    return SurfacePtr(std::move(s));
  }();
  return surface;
}

SurfacePtr preset_p2() {
  static const SurfacePtr surface = [] {
    auto s = std::make_shared<BaseSurface>();
    s->name = "p2";
    s->kind = SurfaceKind::Plane;
    s->basis_names = {"H"};
    s->form = {{1}};
    s->canonical = DivisorClass{-3};
    s->pg = 0;
    s->q = 0;
    s->chi = 1;
    s->effective = [](const DivisorClass& d) { return d[0] >= 0; };
    s->h0 = [](const DivisorClass& d) -> std::int64_t { return d[0] < 0 ? 0 : binomial2(d[0]); };
    return SurfacePtr(std::move(s));
  }();
  return surface;
}

SurfacePtr preset(std::string_view name) {
  if (name == "p1xp1") return preset_p1xp1();
  if (name == "p2") return preset_p2();
  throw InputError("unknown surface preset '" + std::string(name) + "' (expected p1xp1 or p2)");
}

namespace {

void require_rank(const BaseSurface& s, const DivisorClass& d) {
  if (d.rank() != s.rank()) {
    throw RankMismatch("class of rank " + std::to_string(d.rank()) + " on surface " + s.name +
                       " of Picard rank " + std::to_string(s.rank()));
  }
}

}  // namespace

std::int64_t intersect(const BaseSurface& surface, const DivisorClass& a, const DivisorClass& b) {
  require_rank(surface, a);
  require_rank(surface, b);
  std::int64_t total = 0;
  for (int i = 0; i < surface.rank(); ++i) {
    for (int j = 0; j < surface.rank(); ++j) {
      const std::int64_t m = surface.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (m == 0) continue;
      total = checked_add(total, checked_mul(checked_mul(a[i], m), b[j]));
    }
  }
  return total;
}

std::int64_t h0(const BaseSurface& surface, const DivisorClass& d) {
  require_rank(surface, d);
  return surface.h0(d);
}

bool is_effective(const BaseSurface& surface, const DivisorClass& d) {
  require_rank(surface, d);
  return surface.effective(d);
}

std::optional<DivisorClass> halve(const DivisorClass& d) {
  std::vector<std::int64_t> out;
  out.reserve(d.coords().size());
  for (auto c : d.coords()) {
    if (c % 2 != 0) return std::nullopt;
    out.push_back(c / 2);
  }
  return DivisorClass(std::move(out));
}

std::string format_class(const BaseSurface& surface, const DivisorClass& d) {
  require_rank(surface, d);
  std::string out;
  for (int i = 0; i < d.rank(); ++i) {
    const std::int64_t c = d[i];
    if (c == 0) continue;
    if (c < 0) {
      out += '-';
    } else if (!out.empty()) {
      out += '+';
    }
    const std::int64_t mag = c < 0 ? -c : c;
    if (mag != 1) out += std::to_string(mag);
    out += surface.basis_names[static_cast<std::size_t>(i)];
  }
  return out.empty() ? "0" : out;
}

DivisorClass parse_class(const BaseSurface& surface, std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  auto fail = [&](const std::string& why) -> InputError {
    return InputError("cannot parse class '" + std::string(text) + "' on " + surface.name + ": " + why);
  };
  if (compact.empty()) throw fail("empty");
  std::vector<std::int64_t> coords(static_cast<std::size_t>(surface.rank()), 0);
  if (compact == "0") return DivisorClass(coords);

  std::size_t pos = 0;
  bool first = true;
  while (pos < compact.size()) {
    std::int64_t sign = 1;
    if (compact[pos] == '+' || compact[pos] == '-') {
      sign = compact[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    std::int64_t mag = 0;
    bool has_digits = false;
    while (pos < compact.size() && std::isdigit(static_cast<unsigned char>(compact[pos]))) {
      mag = checked_add(checked_mul(mag, 10), compact[pos] - '0');
      if (mag > kCoordinateLimit) throw fail("coefficient too large");
      has_digits = true;
      ++pos;
    }
    std::size_t name_end = pos;
    while (name_end < compact.size() && std::isalpha(static_cast<unsigned char>(compact[name_end]))) ++name_end;
    const std::string name = compact.substr(pos, name_end - pos);
    if (name.empty()) {
      if (has_digits && mag == 0 && name_end == compact.size() && first) return DivisorClass(coords);
      throw fail("missing generator name");
    }
    int index = -1;
    for (int i = 0; i < surface.rank(); ++i) {
      if (surface.basis_names[static_cast<std::size_t>(i)] == name) index = i;
    }
    if (index < 0) throw fail("unknown generator '" + name + "'");
    if (!has_digits) mag = 1;
    auto& slot = coords[static_cast<std::size_t>(index)];
    slot = checked_add(slot, sign * mag);
    pos = name_end;
    first = false;
  }
  return DivisorClass(std::move(coords));
}

void check_surface(const BaseSurface& s) {
  const auto r = static_cast<std::size_t>(s.rank());
  if (r == 0) throw InputError("surface must have positive Picard rank");
  if (s.form.size() != r) throw InputError("intersection matrix has wrong size");
  for (std::size_t i = 0; i < r; ++i) {
    if (s.form[i].size() != r) throw InputError("intersection matrix has wrong size");
    for (std::size_t j = 0; j < r; ++j) {
      if (s.form[i][j] != s.form[j][i]) throw InputError("intersection matrix is not symmetric");
    }
  }
  // Nondegeneracy via fraction-free elimination on a copy.
  __extension__ typedef __int128 Wide;
  std::vector<std::vector<Wide>> m(r, std::vector<Wide>(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) m[i][j] = s.form[i][j];
  }
  Wide prev = 1;
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t p = k;
    while (p < r && m[p][k] == 0) ++p;
    if (p == r) throw InputError("intersection matrix is degenerate");
    std::swap(m[p], m[k]);
    for (std::size_t i = k + 1; i < r; ++i) {
      for (std::size_t j = k + 1; j < r; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  if (s.canonical.rank() != s.rank()) throw InputError("canonical class has wrong rank");
  if (s.chi != 1 - s.q + s.pg) throw InputError("surface violates chi = 1 - q + pg");
  if (!s.effective || !s.h0) throw InputError("surface lacks effectivity or h0 oracle");
}

}  // namespace abelcov
