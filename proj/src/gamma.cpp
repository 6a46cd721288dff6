#include "euler_gauss/gamma.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "euler_gauss/parallel.hpp"
#include "euler_gauss/spectral_field.hpp"

namespace euler_gauss {

namespace {

struct Support {
  std::vector<Mode> modes;
  std::vector<double> a2;
  std::vector<double> weight;  // indexed by |n|^2, covers every n + q
};

Support gather(const CoefficientSequence& a, double s, std::optional<int> radius) {
  Support sup;
  std::int64_t max_r2 = 0;
  for (const auto& [n, v] : a.entries()) {
    if (radius && n.norm_sq() > std::int64_t(*radius) * *radius) continue;
    sup.modes.push_back(n);
    sup.a2.push_back(v * v);
    max_r2 = std::max(max_r2, n.norm_sq());
  }
  sup.weight.resize(static_cast<std::size_t>(4 * max_r2 + 1));
  for (std::size_t k = 0; k < sup.weight.size(); ++k)
    sup.weight[k] = s == 0.0 ? 1.0 : std::pow(1.0 + static_cast<double>(k), s);
  return sup;
}

/// sum over ordered pairs (i, j) of f(i, j), one row per n, rows reduced pairwise.
template <class F>
double pair_sum(const Support& sup, int threads, F f) {
  const std::size_t rows = sup.modes.size();
  std::vector<double> row_sums(rows, 0.0);
  parallel_for(rows, resolve_threads(threads > 0 ? std::optional<int>(threads) : std::nullopt),
               [&](std::size_t i) {
                 double acc = 0.0;
                 for (std::size_t j = 0; j < rows; ++j) acc += f(i, j);
                 row_sums[i] = acc;
               });
  return pairwise_sum(row_sums);
}

}  // namespace

const char* to_string(SupportKind k) {
  switch (k) {
    case SupportKind::Empty: return "Empty";
    case SupportKind::Line: return "Line";
    case SupportKind::Circle: return "Circle";
    case SupportKind::NonDegenerate: return "NonDegenerate";
  }
  return "NonDegenerate";
}

void to_json(nlohmann::json& j, const SupportClass& c) {
  j = {{"kind", to_string(c.kind)}};
  if (c.kind == SupportKind::Line) j["direction"] = {c.direction.n1, c.direction.n2};
  if (c.kind == SupportKind::Circle) j["radius_sq"] = c.radius_sq;
}

void to_json(nlohmann::json& j, const GammaReport& r) {
  j = nlohmann::json::object();
  j["s"] = r.s;
  j["sequence_id"] = r.sequence_id;
  j["gamma_bare"] = r.gamma_bare;
  j["gamma_paper"] = r.gamma_fourier;
  if (r.partial_radius)
    j["radius"] = *r.partial_radius;
  else
    j["radius"] = "exact-finite-support";
  j["terms"] = r.term_count;
  j["support_class"] = r.support;
}

bool degenerate_pair(Mode n, Mode q) {
  if (n.is_zero() || q.is_zero()) throw std::invalid_argument("degenerate_pair needs nonzero modes");
  return cross(n, q) == 0 || n.norm_sq() == q.norm_sq();
}

double beta(Mode n, Mode q, double s) {
  if (n.is_zero() || q.is_zero() || (n + q).is_zero())
    throw std::invalid_argument("beta needs n, q, n + q nonzero");
  const std::int64_t nn = n.norm_sq(), qq = q.norm_sq(), nq = (n + q).norm_sq();
  const double wn = sobolev_weight(n, s), wq = sobolev_weight(q, s), wnq = sobolev_weight(n + q, s);
  const double d1 = detail::ratio<double>(nq - qq, qq * nq);
  const double d2 = detail::ratio<double>(nn - nq, nn * nq);
  return (wn - wnq) * d1 + (wq - wnq) * d2;
}

double gamma_term(const CoefficientSequence& a, Mode n, Mode q, double s) {
  if (n.is_zero() || q.is_zero() || (n + q).is_zero()) return 0.0;
  const double an = a[n], aq = a[q];
  return detail::pair_alpha<double>(n, q, an * an, aq * aq, sobolev_weight(n, s),
                                    sobolev_weight(q, s), sobolev_weight(n + q, s));
}

GammaReport gamma(const CoefficientSequence& a, double s, std::optional<int> summation_radius,
                  int threads) {
  const auto sup = gather(a, s, summation_radius);
  GammaReport r;
  r.s = s;
  r.sequence_id = a.id();
  r.support = classify_support(a);
  r.gamma_bare = pair_sum(sup, threads, [&](std::size_t i, std::size_t j) {
    const Mode n = sup.modes[i], q = sup.modes[j];
    if ((n + q).is_zero()) return 0.0;
    return detail::pair_alpha<double>(n, q, sup.a2[i], sup.a2[j], sup.weight[n.norm_sq()],
                                      sup.weight[q.norm_sq()], sup.weight[(n + q).norm_sq()]);
  });
  r.gamma_fourier = r.gamma_bare / kTwoPiFourth;
  r.term_count = static_cast<std::int64_t>(sup.modes.size() * sup.modes.size());
  const bool whole = !summation_radius || *summation_radius >= a.radius();
  if (a.kind() == ProfileKind::PowerLog)
    r.partial_radius = summation_radius ? std::min(*summation_radius, a.radius()) : a.radius();
  else if (!whole)
    r.partial_radius = *summation_radius;
  return r;
}

double expected_B1_normsq_closed(const CoefficientSequence& a, double s, int threads) {
  const auto sup = gather(a, s, std::nullopt);
  return pair_sum(sup, threads, [&](std::size_t i, std::size_t j) {
    const Mode n = sup.modes[i], q = sup.modes[j];
    const std::int64_t cr = cross(q, n), nn = n.norm_sq(), qq = q.norm_sq();
    if (cr == 0 || nn == qq) return 0.0;
    const double diff = detail::ratio<double>(nn - qq, nn * qq);
    return sup.weight[(n + q).norm_sq()] * double(cr * cr) / 2.0 * diff * diff * sup.a2[i] *
           sup.a2[j];
  });
}

double expected_omega_B2_closed(const CoefficientSequence& a, double s, int threads) {
  const auto sup = gather(a, s, std::nullopt);
  return pair_sum(sup, threads, [&](std::size_t i, std::size_t j) {
    const Mode n = sup.modes[i], q = sup.modes[j];
    const std::int64_t cr = cross(q, n), nn = n.norm_sq(), qq = q.norm_sq();
    if (cr == 0 || nn == qq) return 0.0;
    const std::int64_t nq = (n + q).norm_sq();
    return 0.5 * sup.weight[nn] * sup.a2[i] * sup.a2[j] * double(cr * cr) *
           detail::ratio<double>(qq - nn, nn * qq) * detail::ratio<double>(nq - qq, qq * nq);
  });
}

bool ConsistencyPair::agrees(double rel) const {
  return std::fabs(lhs - rhs) <= rel * (1.0 + std::fabs(lhs));
}

ConsistencyPair gamma_consistency(const CoefficientSequence& a, double s, int threads) {
  return {gamma(a, s, std::nullopt, threads).gamma_bare,
          expected_B1_normsq_closed(a, s, threads) + 2.0 * expected_omega_B2_closed(a, s, threads)};
}

SupportClass classify_support(const CoefficientSequence& a) {
  const auto entries = a.entries();
  if (entries.empty()) return {};
  const Mode d = primitive_direction(entries.front().first);
  bool line = true, circle = true;
  const std::int64_t r2 = entries.front().first.norm_sq();
  for (const auto& [n, v] : entries) {
    line = line && cross(n, d) == 0;
    circle = circle && n.norm_sq() == r2;
  }
  if (line) return {SupportKind::Line, d, 0};
  if (circle) return {SupportKind::Circle, {}, r2};
  return {SupportKind::NonDegenerate, {}, 0};
}

ScanResult scan_s(const CoefficientSequence& a, const std::vector<double>& s_grid,
                  double threshold, int threads) {
  if (s_grid.empty()) throw std::invalid_argument("scan_s needs a nonempty grid");
  ScanResult out;
  for (double s : s_grid) {
    const double g = gamma(a, s, std::nullopt, threads).gamma_bare;
    const bool flag = std::fabs(g) > threshold;
    if (flag && !out.first_flagged) out.first_flagged = out.entries.size();
    out.entries.push_back({s, g, flag});
  }
  return out;
}

}  // namespace euler_gauss
