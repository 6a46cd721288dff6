#include "euler_gauss/wick.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>

#include <boost/multiprecision/gmp.hpp>

#include "euler_gauss/parallel.hpp"
#include "euler_gauss/spectral_field.hpp"

namespace euler_gauss {

namespace {

using Rational = boost::multiprecision::mpq_rational;
using Monomial = std::vector<Mode>;  // sorted labels k, each standing for g_k
using Poly = std::map<Monomial, Rational>;
using Field = std::map<Mode, Poly>;

Monomial merge(const Monomial& a, const Monomial& b) {
  Monomial out(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), out.begin());
  return out;
}

void accumulate(Poly& p, Monomial m, const Rational& c) {
  auto [it, inserted] = p.try_emplace(std::move(m), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

Field symbolic_omega(const CoefficientSequence& a) {
  Field f;
  for (const auto& [n, v] : a.entries()) f[n][Monomial{n}] = Rational(1);
  return f;
}

/// Symbolic B(F, G), every generated mode kept.
Field symbolic_bilinear(const Field& f, const Field& g) {
  Field out;
  for (const auto& [k, fk] : f) {
    const std::int64_t kk = k.norm_sq();
    for (const auto& [m, gm] : g) {
      const Mode n = k + m;
      if (n.is_zero()) continue;
      const std::int64_t mm = m.norm_sq();
      const std::int64_t cr = cross(m, k);
      if (cr == 0 || kk == mm) continue;
      const Rational c(Rational(cr * (mm - kk)) / Rational(2 * kk * mm));
      Poly& target = out[n];
      for (const auto& [m1, c1] : fk)
        for (const auto& [m2, c2] : gm) accumulate(target, merge(m1, m2), c * c1 * c2);
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.empty() ? out.erase(it) : std::next(it);
  return out;
}

Field combine(const Field& x, const Field& y, const Rational& cy) {
  Field out = x;
  for (const auto& [n, p] : y)
    for (const auto& [m, c] : p) accumulate(out[n], m, c * cy);
  for (auto it = out.begin(); it != out.end();) it = it->second.empty() ? out.erase(it) : std::next(it);
  return out;
}

std::int64_t double_factorial_odd(int k) {  // (k-1)!! for even k, E r^k
  if (k % 2) return 0;
  std::int64_t r = 1;
  for (int j = k - 1; j > 1; j -= 2) r *= j;
  return r;
}

std::int64_t binomial(int n, int k) {
  std::int64_t r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

/// E[(r + i s)^alpha (r - i s)^beta] by direct expansion; the imaginary part cancels.
std::int64_t moment_exact(int alpha, int beta) {
  thread_local std::map<std::pair<int, int>, std::int64_t> cache;
  const auto key = std::make_pair(alpha, beta);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  // i^p as (re, im)
  auto ipow = [](int p) -> std::array<std::int64_t, 2> {
    switch (((p % 4) + 4) % 4) {
      case 0: return {1, 0};
      case 1: return {0, 1};
      case 2: return {-1, 0};
      default: return {0, -1};
    }
  };
  std::int64_t re = 0, im = 0;
  for (int j = 0; j <= alpha; ++j)
    for (int l = 0; l <= beta; ++l) {
      const int p = alpha - j, q = beta - l;
      const std::int64_t real_part = double_factorial_odd(j + l) * double_factorial_odd(p + q);
      if (real_part == 0) continue;
      // (i s)^p (-i s)^q = (-1)^q i^{p+q} s^{p+q}
      const auto u = ipow(p + q);
      const std::int64_t w = binomial(alpha, j) * binomial(beta, l) * real_part * (q % 2 ? -1 : 1);
      re += w * u[0];
      im += w * u[1];
    }
  if (im != 0) throw std::logic_error("complex Gaussian moment with nonzero imaginary part");
  cache.emplace(key, re);
  return re;
}

/// Per-mode values sum_{m1, m2} c1 c2 E[m1 conj(m2)] prod a, exact per a-signature.
std::map<Mode, double> pair_expectation(const Field& f, const Field& g,
                                        const CoefficientSequence& a) {
  std::map<Mode, double> out;
  for (const auto& [n, fn] : f) {
    auto gi = g.find(n);
    if (gi == g.end()) continue;
    std::map<std::vector<Mode>, Rational> by_signature;
    for (const auto& [m1, c1] : fn)
      for (const auto& [m2, c2] : gi->second) {
        // labels of m1 and of conj(m2) = labels -k
        std::vector<std::pair<Mode, std::array<int, 2>>> groups;
        auto add = [&](Mode label) {
          const Mode rep = upper_representative(label);
          const int slot = label == rep ? 0 : 1;
          for (auto& [r, ab] : groups)
            if (r == rep) {
              ++ab[slot];
              return;
            }
          std::array<int, 2> ab{0, 0};
          ab[slot] = 1;
          groups.emplace_back(rep, ab);
        };
        for (Mode k : m1) add(k);
        for (Mode k : m2) add(-k);
        std::int64_t e = 1;
        for (const auto& [r, ab] : groups) {
          e *= moment_exact(ab[0], ab[1]);
          if (e == 0) break;
        }
        if (e == 0) continue;
        std::vector<Mode> signature;
        for (Mode k : m1) signature.push_back(upper_representative(k));
        for (Mode k : m2) signature.push_back(upper_representative(k));
        std::sort(signature.begin(), signature.end());
        Rational term = c1 * c2;
        term *= e;
        auto [it, inserted] = by_signature.try_emplace(std::move(signature), term);
        if (!inserted) it->second += term;
      }
    double v = 0.0;
    for (const auto& [sig, c] : by_signature) {
      if (c == 0) continue;
      double prod = 1.0;
      for (Mode k : sig) prod *= a[k];
      v += c.convert_to<double>() * prod;
    }
    if (v != 0.0) out[n] = v;
  }
  return out;
}

}  // namespace

const char* to_string(FunctionalKind k) {
  switch (k) {
    case FunctionalKind::HsNormSq: return "HsNormSq";
    case FunctionalKind::B1NormSq: return "B1NormSq";
    case FunctionalKind::OmegaDotB2: return "OmegaDotB2";
    case FunctionalKind::OmegaDotB1: return "OmegaDotB1";
    case FunctionalKind::B1DotB2: return "B1DotB2";
    case FunctionalKind::B2NormSq: return "B2NormSq";
    case FunctionalKind::B3NormSq: return "B3NormSq";
  }
  return "HsNormSq";
}

FunctionalKind functional_from_string(const std::string& name) {
  for (auto k : {FunctionalKind::HsNormSq, FunctionalKind::B1NormSq, FunctionalKind::OmegaDotB2,
                 FunctionalKind::OmegaDotB1, FunctionalKind::B1DotB2, FunctionalKind::B2NormSq,
                 FunctionalKind::B3NormSq})
    if (name == to_string(k)) return k;
  throw std::invalid_argument("unknown functional '" + name + "'");
}

double complex_gaussian_moment(int alpha, int beta) {
  if (alpha < 0 || beta < 0) throw std::invalid_argument("negative moment order");
  return static_cast<double>(moment_exact(alpha, beta));
}

struct WickOracle::Impl {
  CoefficientSequence a;
  Field omega;
  std::optional<Field> b1, b2, b3;
  std::map<FunctionalKind, std::map<Mode, double>> per_mode;

  const Field& get_b1() {
    if (!b1) b1 = symbolic_bilinear(omega, omega);
    return *b1;
  }
  const Field& get_b2() {
    if (!b2) b2 = symbolic_bilinear(omega, get_b1());
    return *b2;
  }
  const Field& get_b3() {
    if (!b3) b3 = combine(symbolic_bilinear(get_b1(), get_b1()), symbolic_bilinear(omega, get_b2()),
                          Rational(2));
    return *b3;
  }

  const std::map<Mode, double>& values(FunctionalKind k) {
    if (auto it = per_mode.find(k); it != per_mode.end()) return it->second;
    std::map<Mode, double> v;
    switch (k) {
      case FunctionalKind::HsNormSq: v = pair_expectation(omega, omega, a); break;
      case FunctionalKind::B1NormSq: v = pair_expectation(get_b1(), get_b1(), a); break;
      case FunctionalKind::OmegaDotB2: v = pair_expectation(omega, get_b2(), a); break;
      case FunctionalKind::OmegaDotB1: v = pair_expectation(omega, get_b1(), a); break;
      case FunctionalKind::B1DotB2: v = pair_expectation(get_b1(), get_b2(), a); break;
      case FunctionalKind::B2NormSq: v = pair_expectation(get_b2(), get_b2(), a); break;
      case FunctionalKind::B3NormSq: v = pair_expectation(get_b3(), get_b3(), a); break;
    }
    return per_mode.emplace(k, std::move(v)).first->second;
  }
};

WickOracle::WickOracle(const CoefficientSequence& a, std::size_t max_support)
    : impl_(std::make_unique<Impl>()) {
  if (a.size() > max_support)
    throw SupportTooLarge("support of " + std::to_string(a.size()) +
                          " modes exceeds the exhaustive-pairing limit of " +
                          std::to_string(max_support));
  impl_->a = a;
  impl_->omega = symbolic_omega(a);
}

WickOracle::~WickOracle() = default;
WickOracle::WickOracle(WickOracle&&) noexcept = default;
WickOracle& WickOracle::operator=(WickOracle&&) noexcept = default;

double WickOracle::expectation(const Functional& f) {
  const auto& v = impl_->values(f.kind);
  std::vector<double> terms;
  terms.reserve(v.size());
  for (const auto& [n, x] : v) terms.push_back(sobolev_weight(n, f.s) * x);
  return pairwise_sum(terms);
}

double wick_expectation(const CoefficientSequence& a, const Functional& f, std::size_t max_support) {
  return WickOracle(a, max_support).expectation(f);
}

}  // namespace euler_gauss
