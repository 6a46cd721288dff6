#ifndef EULER_GAUSS_WICK_HPP
#define EULER_GAUSS_WICK_HPP

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "euler_gauss/coefficients.hpp"
#include "euler_gauss/mode.hpp"

namespace euler_gauss {

/// Gaussian functionals of Omega_0 with an H^s weight.
enum class FunctionalKind {
  HsNormSq,    // ||Omega||^2
  B1NormSq,    // ||B1||^2
  OmegaDotB2,  // <Omega, B2>
  OmegaDotB1,  // <Omega, B1>
  B1DotB2,     // <B1, B2>
  B2NormSq,    // ||B2||^2
  B3NormSq,    // ||B3||^2
};

struct Functional {
  FunctionalKind kind = FunctionalKind::HsNormSq;
  double s = 0;
};

const char* to_string(FunctionalKind k);
FunctionalKind functional_from_string(const std::string& name);

class SupportTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact expectation of polynomial functionals of Omega_0 = sum a_n g_n e^{in.x}.
///
/// Every field is kept symbolically: its coefficient at mode n is a polynomial in the
/// labels g_k with exact rational coefficients (the a_k are factored out and applied at
/// the end). Moments E[g^alpha conj(g)^beta] come from expanding g = r + i s and using
/// E r^{2j} = (2j-1)!!, so nothing about complex Gaussians is assumed beyond the law of r, s.
/// All s-independent work is cached; evaluating another s only reweights.
class WickOracle {
 public:
  /// Throws SupportTooLarge when the support has more than `max_support` modes.
  explicit WickOracle(const CoefficientSequence& a, std::size_t max_support = 64);
  ~WickOracle();
  WickOracle(WickOracle&&) noexcept;
  WickOracle& operator=(WickOracle&&) noexcept;

  double expectation(const Functional& f);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One-shot convenience wrapper around WickOracle.
double wick_expectation(const CoefficientSequence& a, const Functional& f,
                        std::size_t max_support = 64);

/// E[g^alpha conj(g)^beta] for g = r + i s with r, s independent standard normals.
double complex_gaussian_moment(int alpha, int beta);

/// Measured ratio wick / closed form; the sampler law gives exactly 4.
inline constexpr double kWickNormalization = 4.0;

}  // namespace euler_gauss

#endif  // EULER_GAUSS_WICK_HPP
