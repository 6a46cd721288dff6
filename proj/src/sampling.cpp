#include "euler_gauss/sampling.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/special_functions/erf.hpp>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "euler_gauss/flow.hpp"
#include "euler_gauss/gamma.hpp"
#include "euler_gauss/parallel.hpp"

namespace euler_gauss {

namespace rng {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t index, Mode mode, unsigned component) {
  const std::uint64_t packed =
      (std::uint64_t(std::uint32_t(mode.n1)) << 32) | std::uint32_t(mode.n2);
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ index);
  h = splitmix64(h ^ packed);
  return splitmix64(h ^ component);
}

double uniform_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1p-52;
}

double standard_normal(std::uint64_t bits) {
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * uniform_open(bits));
}

}  // namespace rng

namespace {

int threads_or_default(int threads) {
  return resolve_threads(threads > 0 ? std::optional<int>(threads) : std::nullopt);
}

/// B1 and B2 without truncation; b2 is left empty when not requested.
struct Forms {
  SpectralField b1;
  SpectralField b2;
};

Forms grow_forms(const SpectralField& w, bool need_b2) {
  Forms f;
  f.b1 = bilinear_grow(w, w);
  if (need_b2) f.b2 = bilinear_grow(w, f.b1);
  return f;
}

}  // namespace

void SamplerConfig::validate() const {
  if (truncation < sequence.max_abs())
    throw std::invalid_argument("truncation " + std::to_string(truncation) +
                                " cannot hold the sequence support");
  if (sample_count == 0) throw std::invalid_argument("sample_count must be positive");
}

SpectralField sample(const SamplerConfig& cfg, std::size_t index) {
  cfg.validate();
  if (index >= cfg.sample_count) throw std::out_of_range("sample index beyond sample_count");
  SpectralField f(cfg.truncation);
  for (const auto& [n, a] : cfg.sequence.entries()) {
    if (!n.in_upper_half()) continue;
    const double r = rng::standard_normal(rng::counter_hash(cfg.seed, index, n, 0));
    const double s = rng::standard_normal(rng::counter_hash(cfg.seed, index, n, 1));
    f.set_pair(n, {a * r, a * s});
  }
  return f;
}

double evaluate_functional(const SpectralField& w, const Functional& f) {
  const double s = f.s;
  switch (f.kind) {
    case FunctionalKind::HsNormSq: return sobolev_norm_sq(w, s);
    case FunctionalKind::B1NormSq: return sobolev_norm_sq(bilinear_grow(w, w), s);
    case FunctionalKind::OmegaDotB1: return inner_product(w, bilinear_grow(w, w), s);
    case FunctionalKind::OmegaDotB2: {
      const auto fm = grow_forms(w, true);
      return inner_product(w, fm.b2, s);
    }
    case FunctionalKind::B1DotB2: {
      const auto fm = grow_forms(w, true);
      return inner_product(fm.b1, fm.b2, s);
    }
    case FunctionalKind::B2NormSq: return sobolev_norm_sq(grow_forms(w, true).b2, s);
    case FunctionalKind::B3NormSq: {
      const auto fm = grow_forms(w, true);
      auto b3 = bilinear_grow(fm.b1, fm.b1);
      const auto b02 = bilinear_grow(w, fm.b2);
      b3 = b3.resized(std::max(b3.truncation(), b02.truncation()));
      b3.axpy(2.0, b02);
      return sobolev_norm_sq(b3, s);
    }
  }
  return 0.0;
}

double MCEstimate::z_score(double reference) const {
  const double d = mean - reference;
  if (std_error == 0.0) return d == 0.0 ? 0.0 : std::copysign(INFINITY, d);
  return d / std_error;
}

MCEstimate summarize(const std::vector<double>& values) {
  MCEstimate e;
  e.sample_count = values.size();
  if (values.empty()) return e;
  e.mean = pairwise_sum(values) / static_cast<double>(values.size());
  if (values.size() < 2) return e;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) sq[i] = (values[i] - e.mean) * (values[i] - e.mean);
  const double var = pairwise_sum(sq) / static_cast<double>(values.size() - 1);
  e.std_error = std::sqrt(var / static_cast<double>(values.size()));
  return e;
}

std::vector<MCEstimate> mc_estimate_many(const SamplerConfig& cfg,
                                         const std::vector<Functional>& fs, std::size_t M,
                                         int threads) {
  if (M < 2) throw std::invalid_argument("M must be at least 2");
  SamplerConfig c = cfg;
  c.sample_count = std::max(c.sample_count, M);
  c.validate();
  std::vector<std::vector<double>> values(fs.size(), std::vector<double>(M));
  parallel_for(M, threads_or_default(threads), [&](std::size_t i) {
    const auto w = sample(c, i);
    for (std::size_t k = 0; k < fs.size(); ++k) values[k][i] = evaluate_functional(w, fs[k]);
  });
  std::vector<MCEstimate> out;
  for (const auto& v : values) out.push_back(summarize(v));
  return out;
}

MCEstimate mc_estimate(const SamplerConfig& cfg, const Functional& f, std::size_t M, int threads) {
  return mc_estimate_many(cfg, {f}, M, threads).front();
}

ExpansionFit expansion_fit(const SamplerConfig& cfg, double s, const std::vector<double>& t_grid,
                           int threads) {
  if (t_grid.size() < 5) throw std::invalid_argument("t_grid needs at least 5 points");
  cfg.validate();
  const std::size_t M = cfg.sample_count;
  std::array<std::vector<double>, 5> coeff;
  for (auto& c : coeff) c.resize(M);
  std::vector<std::vector<double>> direct(t_grid.size(), std::vector<double>(M));

  parallel_for(M, threads_or_default(threads), [&](std::size_t i) {
    const auto w = sample(cfg, i);
    const auto fm = grow_forms(w, true);
    const double oo = sobolev_norm_sq(w, s);
    const double o1 = inner_product(w, fm.b1, s);
    const double o2 = inner_product(w, fm.b2, s);
    const double n1 = sobolev_norm_sq(fm.b1, s);
    const double p12 = inner_product(fm.b1, fm.b2, s);
    const double n2 = sobolev_norm_sq(fm.b2, s);
    coeff[0][i] = oo;
    coeff[1][i] = -2.0 * o1;
    coeff[2][i] = n1 + 2.0 * o2;
    coeff[3][i] = -2.0 * p12;
    coeff[4][i] = n2;
    const int big = fm.b2.truncation();
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
      const double t = t_grid[k];
      SpectralField v = w.resized(big);
      v.axpy(-t, fm.b1);
      v.axpy(t * t, fm.b2);
      direct[k][i] = sobolev_norm_sq(v, s);
    }
  });

  ExpansionFit fit;
  for (std::size_t k = 0; k < 5; ++k) fit.e[k] = summarize(coeff[k]);
  for (std::size_t k = 0; k < t_grid.size(); ++k)
    fit.curve.emplace_back(t_grid[k], summarize(direct[k]).mean);
  return fit;
}

GrowthResult growth_experiment(const SamplerConfig& cfg, double s, double t_max, double dt,
                               int threads, Evaluation eval) {
  cfg.validate();
  const std::size_t M = cfg.sample_count;
  if (M < 2 || M % 2) throw std::invalid_argument("growth_experiment needs an even sample count");
  const auto grid = uniform_grid(t_max, dt);
  if (grid.size() < 3) throw std::invalid_argument("need at least two time steps");

  // field 2j is the j-th draw, field 2j+1 its negative
  std::vector<std::vector<double>> delta(grid.size(), std::vector<double>(M));
  parallel_for(M, threads_or_default(threads), [&](std::size_t i) {
    auto w0 = sample(cfg, i / 2);
    if (i % 2) w0 *= -1.0;
    const auto traj = evolve(w0, grid, dt, eval);
    const double base = sobolev_norm_sq(w0, s);
    for (std::size_t k = 0; k < grid.size(); ++k)
      delta[k][i] = sobolev_norm_sq(traj.states[k], s) - base;
  });

  GrowthResult r;
  Eigen::MatrixXd a(static_cast<Eigen::Index>(grid.size() - 1), 2);
  Eigen::VectorXd b(static_cast<Eigen::Index>(grid.size() - 1));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto est = summarize(delta[k]);
    r.curve.push_back({grid[k], est.mean, est.std_error});
    if (k == 0) continue;
    const auto row = static_cast<Eigen::Index>(k - 1);
    a(row, 0) = grid[k] * grid[k];
    a(row, 1) = grid[k] * grid[k] * grid[k];
    b(row) = est.mean;
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  r.c2 = c(0);
  r.c3 = c(1);
  r.reference = kWickNormalization * gamma(cfg.sequence, s).gamma_bare;
  r.ratio = r.reference != 0.0 ? r.c2 / r.reference : std::nan("");
  return r;
}

std::string content_hash(const CoefficientSequence& a) {
  const std::string body = nlohmann::json(a).dump();
  const std::string framed = "blob " + std::to_string(body.size()) + '\0' + body;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(framed.data(), framed.size(), md, &len, EVP_sha1(), nullptr) != 1)
    throw std::runtime_error("SHA-1 digest failed");
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

nlohmann::json mc_manifest(const SamplerConfig& cfg, const nlohmann::json& extra) {
  nlohmann::json j;
  j["sequence"] = cfg.sequence;
  j["sequence_hash"] = content_hash(cfg.sequence);
  j["truncation"] = cfg.truncation;
  j["seed"] = cfg.seed;
  j["sample_count"] = cfg.sample_count;
  j["config"] = extra;
  return j;
}

void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << "functional,mean,stderr,M\n";
  os << std::setprecision(17);
  for (const auto& r : rows)
    os << r.functional << ',' << r.estimate.mean << ',' << r.estimate.std_error << ','
       << r.estimate.sample_count << '\n';
}

}  // namespace euler_gauss
