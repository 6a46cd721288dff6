#ifndef EULER_GAUSS_SAMPLING_HPP
#define EULER_GAUSS_SAMPLING_HPP

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "euler_gauss/bilinear.hpp"
#include "euler_gauss/coefficients.hpp"
#include "euler_gauss/spectral_field.hpp"
#include "euler_gauss/wick.hpp"

namespace euler_gauss {

struct SamplerConfig {
  CoefficientSequence sequence;
  int truncation = 16;
  std::uint64_t seed = 0;
  std::size_t sample_count = 1000;

  /// Throws std::invalid_argument when the truncation cannot hold the support.
  void validate() const;
};

/// Counter-based generator: every variate is a pure function of
/// (seed, sample index, mode, component), so ensembles do not depend on scheduling.
namespace rng {
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t index, Mode mode, unsigned component);
/// Uniform on (0, 1) from the top 52 bits.
double uniform_open(std::uint64_t bits);
/// Standard normal by inverse CDF.
double standard_normal(std::uint64_t bits);
}  // namespace rng

/// Field with c_n = a_n g_n, g_n = r_n + i s_n for n in Z^2_+ and c_{-n} = conj(c_n).
SpectralField sample(const SamplerConfig& cfg, std::size_t index);

/// The functional on one field. Forms are evaluated without truncation (every mode kept).
double evaluate_functional(const SpectralField& w, const Functional& f);

struct MCEstimate {
  double mean = 0;
  double std_error = 0;  // sample standard deviation / sqrt(M)
  std::size_t sample_count = 0;

  double z_score(double reference) const;
};

MCEstimate summarize(const std::vector<double>& values);

MCEstimate mc_estimate(const SamplerConfig& cfg, const Functional& f, std::size_t M,
                       int threads = 0);

/// Several functionals over the same samples.
std::vector<MCEstimate> mc_estimate_many(const SamplerConfig& cfg,
                                         const std::vector<Functional>& fs, std::size_t M,
                                         int threads = 0);

struct ExpansionFit {
  /// e0..e4 of E||Omega - t B1 + t^2 B2||^2_{H^s}
  std::array<MCEstimate, 5> e;
  /// Direct MC mean of the norm at each grid time, for cross-checking the polynomial.
  std::vector<std::pair<double, double>> curve;
};

/// Exact per-sample polynomial coefficients from six inner products, averaged.
ExpansionFit expansion_fit(const SamplerConfig& cfg, double s, const std::vector<double>& t_grid,
                           int threads = 0);

struct GrowthResult {
  double c2 = 0;
  double c3 = 0;
  double reference = 0;  // kappa * gamma_bare
  double ratio = 0;
  /// (t, mean of ||Omega(t)||^2 - ||Omega_0||^2, stderr)
  std::vector<std::array<double, 3>> curve;
};

/// Evolves cfg.sample_count fields in antithetic pairs (w, -w) and fits c2 t^2 + c3 t^3 to
/// the mean growth of ||Omega(t)||^2_{H^s}. Propagates NumericalAbort.
GrowthResult growth_experiment(const SamplerConfig& cfg, double s, double t_max, double dt,
                               int threads = 0, Evaluation eval = Evaluation::Auto);

/// SHA-1 of the canonical sequence JSON, framed like a git blob.
std::string content_hash(const CoefficientSequence& a);

nlohmann::json mc_manifest(const SamplerConfig& cfg, const nlohmann::json& extra);

struct ResultRow {
  std::string functional;
  MCEstimate estimate;
};
void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows);

}  // namespace euler_gauss

#endif  // EULER_GAUSS_SAMPLING_HPP
