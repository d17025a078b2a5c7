#pragma once

// Divisor classes on base surfaces whose Picard group is a free lattice of
// small rank. Linear equivalence is equality of lattice coordinates.

#include <abelcov/errors.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace abelcov {

/// Largest absolute coordinate any DivisorClass may hold.
inline constexpr std::int64_t kCoordinateLimit = 1'000'000;

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

class DivisorClass {
 public:
  DivisorClass() = default;
  explicit DivisorClass(std::vector<std::int64_t> coords);
  DivisorClass(std::initializer_list<std::int64_t> coords);

  static DivisorClass zero(int rank) { return DivisorClass(std::vector<std::int64_t>(static_cast<std::size_t>(rank), 0)); }

  int rank() const { return static_cast<int>(coords_.size()); }
  std::int64_t operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  const std::vector<std::int64_t>& coords() const { return coords_; }
  bool is_zero() const;

  DivisorClass operator+(const DivisorClass& other) const;
  DivisorClass operator-(const DivisorClass& other) const;
  DivisorClass operator-() const;
  DivisorClass& operator+=(const DivisorClass& other) { return *this = *this + other; }
  friend DivisorClass operator*(std::int64_t k, const DivisorClass& d);

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
  friend auto operator<=>(const DivisorClass&, const DivisorClass&) = default;

 private:
  void require_same_rank(const DivisorClass& other) const;
  std::vector<std::int64_t> coords_;
};

enum class SurfaceKind { Quadric, Plane, Custom };

/// Base surface with free Picard lattice and closed-form cohomology oracles.
struct BaseSurface {
  std::string name;
  SurfaceKind kind = SurfaceKind::Custom;
  std::vector<std::string> basis_names;               // e.g. {"F", "G"}
  std::vector<std::vector<std::int64_t>> form;        // symmetric intersection matrix
  DivisorClass canonical;
  std::int64_t pg = 0;
  std::int64_t q = 0;
  std::int64_t chi = 1;
  std::function<bool(const DivisorClass&)> effective;
  std::function<std::int64_t(const DivisorClass&)> h0;

  int rank() const { return static_cast<int>(basis_names.size()); }
};

using SurfacePtr = std::shared_ptr<const BaseSurface>;

/// P1 x P1 with basis F = {0} x P1, G = P1 x {0}.
SurfacePtr preset_p1xp1();
/// P2 with hyperplane class H.
SurfacePtr preset_p2();
/// "p1xp1" or "p2".
SurfacePtr preset(std::string_view name);

/// a^T M b.
std::int64_t intersect(const BaseSurface& surface, const DivisorClass& a, const DivisorClass& b);

std::int64_t h0(const BaseSurface& surface, const DivisorClass& d);

bool is_effective(const BaseSurface& surface, const DivisorClass& d);

/// E with 2E = d, or nothing when some coordinate is odd.
std::optional<DivisorClass> halve(const DivisorClass& d);

/// "2F+2G", "-4F-4G", "3H", "0".
std::string format_class(const BaseSurface& surface, const DivisorClass& d);

/// Inverse of format_class; accepts spaces and bare generators ("F+G").
DivisorClass parse_class(const BaseSurface& surface, std::string_view text);

/// Checks the structural invariants (symmetry, nondegeneracy, chi = 1 - q + pg).
void check_surface(const BaseSurface& surface);

}  // namespace abelcov
