#ifndef EULER_GAUSS_GAMMA_HPP
#define EULER_GAUSS_GAMMA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "euler_gauss/coefficients.hpp"
#include "euler_gauss/interval.hpp"
#include "euler_gauss/mode.hpp"

namespace euler_gauss {

/// Bare sums carry no Fourier prefactor; Fourier divides by (2 pi)^4.
enum class PrefactorMode { Bare, Fourier };

enum class SupportKind { Empty, Line, Circle, NonDegenerate };

struct SupportClass {
  SupportKind kind = SupportKind::Empty;
  Mode direction{};           // Line only: primitive, in Z^2_+
  std::int64_t radius_sq = 0;  // Circle only

  bool degenerate() const { return kind == SupportKind::Line || kind == SupportKind::Circle; }
  friend bool operator==(const SupportClass&, const SupportClass&) = default;
};

const char* to_string(SupportKind k);
void to_json(nlohmann::json& j, const SupportClass& c);

struct GammaReport {
  double s = 0;
  std::string sequence_id;
  double gamma_bare = 0;
  double gamma_fourier = 0;
  /// Summation radius, or nullopt when the whole finite support was summed.
  std::optional<int> partial_radius;
  std::int64_t term_count = 0;
  SupportClass support;

  double value(PrefactorMode m) const { return m == PrefactorMode::Bare ? gamma_bare : gamma_fourier; }
};

void to_json(nlohmann::json& j, const GammaReport& r);

/// (2 pi)^4
inline constexpr double kTwoPiFourth = 1558.5454565440389;

/// (n, q) is degenerate iff (n . q^perp)(1/|n|^2 - 1/|q|^2) = 0; exact integers.
bool degenerate_pair(Mode n, Mode q);

/// beta_{n,q} = <n>^{2s}(1/|q|^2 - 1/|q+n|^2) + <q>^{2s}(1/|q+n|^2 - 1/|n|^2)
///            + <q+n>^{2s}(1/|n|^2 - 1/|q|^2).
double beta(Mode n, Mode q, double s);

/// Single bare summand |a_n|^2 |a_q|^2 (q.n^perp)^2/2 (1/|n|^2 - 1/|q|^2) beta_{n,q}.
double gamma_term(const CoefficientSequence& a, Mode n, Mode q, double s);

/// gamma over all support pairs with |n|, |q| <= summation_radius (default: the whole support).
GammaReport gamma(const CoefficientSequence& a, double s,
                  std::optional<int> summation_radius = std::nullopt, int threads = 0);

/// Closed form of E||B1||^2_{H^s} up to the sampler constant.
double expected_B1_normsq_closed(const CoefficientSequence& a, double s, int threads = 0);
/// Closed form of E<Omega, B2>_{H^s} up to the sampler constant.
double expected_omega_B2_closed(const CoefficientSequence& a, double s, int threads = 0);

struct ConsistencyPair {
  double lhs = 0;  // gamma_bare
  double rhs = 0;  // closed B1 + 2 closed <Omega, B2>
  bool agrees(double rel = 1e-10) const;
};
ConsistencyPair gamma_consistency(const CoefficientSequence& a, double s, int threads = 0);

SupportClass classify_support(const CoefficientSequence& a);

struct ScanEntry {
  double s = 0;
  double gamma = 0;
  bool flagged = false;
};
struct ScanResult {
  std::vector<ScanEntry> entries;
  std::optional<std::size_t> first_flagged;
};
ScanResult scan_s(const CoefficientSequence& a, const std::vector<double>& s_grid,
                  double threshold = 1e-12, int threads = 0);

namespace detail {

template <class S>
struct is_interval : std::false_type {};
template <class T>
struct is_interval<BasicInterval<T>> : std::true_type {};

/// num / den in the scalar type; exact integers in, enclosure out for intervals.
template <class S>
S ratio(std::int64_t num, std::int64_t den) {
  if constexpr (is_interval<S>::value)
    return S::ratio(num, den);
  else
    return S(num) / S(den);
}

/// alpha_{n,q} with the caller's squared coefficients A = a^2 and Sobolev weights W.
/// beta is regrouped as (W_n - W_nq) d1 + (W_q - W_nq) d2 with exact integer ratios
/// d1 = 1/|q|^2 - 1/|n+q|^2 and d2 = 1/|n+q|^2 - 1/|n|^2, so equal weights give exactly 0.
template <class S>
S pair_alpha(Mode n, Mode q, const S& an2, const S& aq2, const S& wn, const S& wq, const S& wnq) {
  const std::int64_t cr = cross(q, n);
  const std::int64_t nn = n.norm_sq();
  const std::int64_t qq = q.norm_sq();
  if (cr == 0 || nn == qq) return S(0);
  const std::int64_t nq = (n + q).norm_sq();
  const S d1 = ratio<S>(nq - qq, qq * nq);
  const S d2 = ratio<S>(nn - nq, nn * nq);
  const S b = (wn - wnq) * d1 + (wq - wnq) * d2;
  return an2 * aq2 * ratio<S>(cr * cr, 2) * ratio<S>(qq - nn, nn * qq) * b;
}

}  // namespace detail

}  // namespace euler_gauss

#endif  // EULER_GAUSS_GAMMA_HPP
