#include "euler_gauss/certificate.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "euler_gauss/gamma.hpp"
#include "euler_gauss/mode.hpp"
#include "euler_gauss/mpfr_interval.hpp"
#include "euler_gauss/parallel.hpp"

namespace euler_gauss {

namespace {

int doubled_exponent(double s, WeightConvention w) {
  const double e = w == WeightConvention::ReferenceCode ? 2.0 * s : s;
  const double twice = 2.0 * e;
  if (!(twice >= 0) || twice != std::floor(twice) || twice > 64)
    throw UnsupportedProfile("certified weights need the exponent to be a multiple of 1/2");
  return static_cast<int>(twice);
}

/// b^{k/2} for integer b >= 1.
template <class I>
I half_power(std::int64_t b, int k) {
  const auto base = I::from_integer(b);
  if (k % 2 == 0) return integer_pow(base, k / 2);
  return integer_pow(sqrt(base), k);
}

template <class I>
I partial_sum(double s, int N, WeightConvention w, int threads) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  const int k = doubled_exponent(s, w);

  std::vector<Mode> modes;
  const std::int64_t n2 = std::int64_t(N) * N;
  for (int i = -N; i <= N; ++i)
    for (int j = -N; j <= N; ++j) {
      const Mode m{i, j};
      if (!m.is_zero() && m.norm_sq() < n2) modes.push_back(m);
    }
  if (modes.empty()) return I(0);

  // tables indexed by |n|^2
  const std::size_t max_b = static_cast<std::size_t>(4 * n2 + 1);
  std::vector<I> weight(max_b);
  for (std::size_t r = 0; r < max_b; ++r) weight[r] = half_power<I>(std::int64_t(r) + 1, k);
  std::vector<I> a2(static_cast<std::size_t>(n2));
  for (std::int64_t r = 1; r < n2; ++r) {
    const std::int64_t b = r + 1;
    const auto l = log(I::from_integer(3 + b));
    a2[static_cast<std::size_t>(r)] = I(1) / (integer_pow(I::from_integer(b), 5) * l * l);
  }

  std::vector<I> rows(modes.size());
  parallel_for(modes.size(), resolve_threads(threads > 0 ? std::optional<int>(threads) : std::nullopt),
               [&](std::size_t i) {
                 const Mode n = modes[i];
                 std::vector<I> terms;
                 terms.reserve(modes.size());
                 for (const Mode q : modes) {
                   if ((n + q).is_zero()) continue;
                   const auto nn = static_cast<std::size_t>(n.norm_sq());
                   const auto qq = static_cast<std::size_t>(q.norm_sq());
                   const auto nq = static_cast<std::size_t>((n + q).norm_sq());
                   terms.push_back(detail::pair_alpha<I>(n, q, a2[nn], a2[qq], weight[nn],
                                                         weight[qq], weight[nq]));
                 }
                 rows[i] = pairwise_sum(terms);
               });
  return pairwise_sum(rows);
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::PositiveCertified: return "PositiveCertified";
    case Verdict::NegativeCertified: return "NegativeCertified";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

const char* to_string(WeightConvention w) {
  return w == WeightConvention::Standard ? "standard" : "reference_code";
}

nlohmann::json certificate_json(const Certificate& c, bool reproducible) {
  nlohmann::json j;
  j["profile"] = c.profile_id;
  j["s"] = c.s;
  j["N"] = c.N;
  j["half_gamma_N"] = {c.half_gamma_N.lo(), c.half_gamma_N.hi()};
  j["epsilon"] = {c.tail_bound.lo(), c.tail_bound.hi()};
  j["verdict"] = to_string(c.verdict);
  j["weight_convention"] = to_string(c.weights);
  j["cpu_info"] = reproducible ? std::string("omitted") : c.cpu_info;
  j["runtime_ms"] = reproducible ? 0.0 : c.runtime_ms;
  return j;
}

template <class T>
BasicInterval<T> half_gamma_partial(double s, int N, WeightConvention w, int threads) {
  return partial_sum<BasicInterval<T>>(s, N, w, threads);
}

template BasicInterval<double> half_gamma_partial<double>(double, int, WeightConvention, int);
template BasicInterval<long double> half_gamma_partial<long double>(double, int, WeightConvention,
                                                                    int);

Interval gamma_partial_interval(double s, int N, WeightConvention w, int threads) {
  return half_gamma_partial<double>(s, N, w, threads);
}

LongInterval gamma_partial_interval_long(double s, int N, WeightConvention w, int threads) {
  return half_gamma_partial<long double>(s, N, w, threads);
}

LongInterval gamma_partial_interval_precise(double s, int N, WeightConvention w, int threads) {
  return partial_sum<MpfrInterval>(s, N, w, threads).to_long();
}

Interval tail_bound(int N) {
  if (N < 2) throw std::invalid_argument("tail bound needs N >= 2");
  const auto n = Interval::from_integer(N);
  return Interval(1536.0) / integer_pow(n, 5) *
         (Interval::ratio(10, 6) + Interval(3.0) / integer_pow(n, 8));
}

Interval tail_bound(const std::string& profile, double s, int N) {
  if (profile == "zero") {
    if (N < 2) throw std::invalid_argument("tail bound needs N >= 2");
    return Interval(0.0);
  }
  if (profile != "powerlog") throw UnsupportedProfile("no certified tail for profile '" + profile + "'");
  if (s != 0.5) throw UnsupportedProfile("the certified tail holds at s = 1/2 only");
  return tail_bound(N);
}

Verdict decide(const Interval& half_gamma, const Interval& tail) {
  if (rounding::sub_down(half_gamma.lo(), tail.hi()) > 0) return Verdict::PositiveCertified;
  if (rounding::add_up(half_gamma.hi(), tail.hi()) < 0) return Verdict::NegativeCertified;
  return Verdict::Inconclusive;
}

Certificate certify(const std::string& profile, double s, int N, WeightConvention w,
                    int threads) {
  const auto start = std::chrono::steady_clock::now();
  Certificate c;
  c.profile_id = profile;
  c.s = s;
  c.N = N;
  c.weights = w;
  c.tail_bound = tail_bound(profile, s, N);
  c.half_gamma_N =
      profile == "zero" ? Interval(0.0) : gamma_partial_interval(s, N, w, threads);
  c.verdict = decide(c.half_gamma_N, c.tail_bound);
  c.cpu_info = cpu_description();
  c.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return c;
}

std::string cpu_description() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        auto v = line.substr(colon + 1);
        v.erase(0, v.find_first_not_of(' '));
        return v;
      }
    }
  }
  return "unknown";
}

}  // namespace euler_gauss
