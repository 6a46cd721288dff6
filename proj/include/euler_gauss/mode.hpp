#ifndef EULER_GAUSS_MODE_HPP
#define EULER_GAUSS_MODE_HPP

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>

namespace euler_gauss {

/// A lattice point n = (n1, n2) of Z^2. All derived quantities are exact integers.
struct Mode {
  int n1 = 0;
  int n2 = 0;

  constexpr auto operator<=>(const Mode&) const = default;

  constexpr Mode operator-() const { return {-n1, -n2}; }
  constexpr Mode operator+(Mode o) const { return {n1 + o.n1, n2 + o.n2}; }
  constexpr Mode operator-(Mode o) const { return {n1 - o.n1, n2 - o.n2}; }

  constexpr bool is_zero() const { return n1 == 0 && n2 == 0; }

  /// |n|^2
  constexpr std::int64_t norm_sq() const {
    return std::int64_t(n1) * n1 + std::int64_t(n2) * n2;
  }
  /// <n>^2 = 1 + |n|^2
  constexpr std::int64_t bracket_sq() const { return 1 + norm_sq(); }
  /// n^perp = (-n2, n1)
  constexpr Mode perp() const { return {-n2, n1}; }
  /// Largest coordinate magnitude; the mode fits a square truncation N iff this is <= N.
  constexpr int max_abs() const {
    const int a = n1 < 0 ? -n1 : n1;
    const int b = n2 < 0 ? -n2 : n2;
    return a > b ? a : b;
  }

  /// Membership in Z^2_+ = {n1 > 0, or n1 = 0 and n2 >= 0}.
  constexpr bool in_upper_half() const { return n1 > 0 || (n1 == 0 && n2 >= 0); }
};

constexpr std::int64_t dot(Mode a, Mode b) {
  return std::int64_t(a.n1) * b.n1 + std::int64_t(a.n2) * b.n2;
}

/// m . k^perp = k1*m2 - k2*m1. Vanishes iff k and m are collinear with the origin.
constexpr std::int64_t cross(Mode m, Mode k) { return dot(m, k.perp()); }

/// Representative of the pair {n, -n} lying in Z^2_+.
constexpr Mode upper_representative(Mode n) { return n.in_upper_half() ? n : -n; }

/// Primitive lattice direction of a nonzero mode, normalized into Z^2_+.
inline Mode primitive_direction(Mode n) {
  const int g = std::gcd(std::abs(n.n1), std::abs(n.n2));
  return upper_representative(Mode{n.n1 / g, n.n2 / g});
}

struct ModeHash {
  std::size_t operator()(Mode m) const noexcept {
    const auto key = (std::uint64_t(std::uint32_t(m.n1)) << 32) | std::uint32_t(m.n2);
    return std::hash<std::uint64_t>{}(key);
  }
};

}  // namespace euler_gauss

#endif  // EULER_GAUSS_MODE_HPP
