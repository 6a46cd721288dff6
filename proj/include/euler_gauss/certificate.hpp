#ifndef EULER_GAUSS_CERTIFICATE_HPP
#define EULER_GAUSS_CERTIFICATE_HPP

#include <stdexcept>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "euler_gauss/interval.hpp"

namespace euler_gauss {

/// Raised for profiles or parameters that have no certified tail bound.
class UnsupportedProfile : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// How the Sobolev weight enters the certified partial sum.
///   Standard:      <n>^{2s} = (1 + |n|^2)^s
///   ReferenceCode: (1 + |n|^2)^{2s}, the weight used by the published enclosure.
enum class WeightConvention { Standard, ReferenceCode };

enum class Verdict { PositiveCertified, NegativeCertified, Inconclusive };

const char* to_string(Verdict v);
const char* to_string(WeightConvention w);

struct Certificate {
  std::string profile_id;
  double s = 0;
  int N = 0;
  Interval half_gamma_N;
  Interval tail_bound;
  Verdict verdict = Verdict::Inconclusive;
  WeightConvention weights = WeightConvention::ReferenceCode;
  std::string cpu_info;
  double runtime_ms = 0;
};

/// Pass `reproducible` to drop the machine-dependent fields (cpu_info, runtime_ms).
nlohmann::json certificate_json(const Certificate& c, bool reproducible = false);

/// Enclosure of 1/2 gamma_N for a_n = 1/(<n>^5 log(3 + <n>^2)), summed over |n|^2, |q|^2 < N^2,
/// where gamma_N sums (q.n^perp)^2 (1/|n|^2 - 1/|q|^2) beta |a_n|^2 |a_q|^2 without the 1/2 of
/// the gamma functional. Numerically it equals the bare gamma partial sum.
/// The weight exponent (s, or 2s for ReferenceCode) must be a nonnegative multiple of 1/2.
template <class T>
BasicInterval<T> half_gamma_partial(double s, int N, WeightConvention w, int threads = 0);

Interval gamma_partial_interval(double s, int N,
                                WeightConvention w = WeightConvention::ReferenceCode,
                                int threads = 0);
LongInterval gamma_partial_interval_long(double s, int N,
                                         WeightConvention w = WeightConvention::ReferenceCode,
                                         int threads = 0);
/// 192-bit MPFR evaluation, rounded outward to long double endpoints.
LongInterval gamma_partial_interval_precise(double s, int N,
                                            WeightConvention w = WeightConvention::ReferenceCode,
                                            int threads = 0);

/// (1536 / N^5)(10/6 + 3/N^8), the bound on 1/2 |gamma - gamma_N| for the power-log
/// profile at s = 1/2. Requires N >= 2.
Interval tail_bound(int N);

/// Checked variant: only the power-log profile at s = 1/2 (and the zero profile) has a tail.
Interval tail_bound(const std::string& profile, double s, int N);

/// PositiveCertified iff half.lo - tail.hi > 0 (rounded down); NegativeCertified iff
/// half.hi + tail.hi < 0 (rounded up).
Verdict decide(const Interval& half_gamma, const Interval& tail);

/// Profiles: "powerlog" (s = 1/2) and "zero". Anything else throws UnsupportedProfile.
Certificate certify(const std::string& profile, double s, int N,
                    WeightConvention w = WeightConvention::ReferenceCode, int threads = 0);

std::string cpu_description();

}  // namespace euler_gauss

#endif  // EULER_GAUSS_CERTIFICATE_HPP
