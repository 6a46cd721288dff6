#include "euler_gauss/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

namespace euler_gauss {

namespace {

int ceil_sqrt(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r < v) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= v) --r;
  return static_cast<int>(r);
}

template <class F>
std::vector<CoefficientSequence::Entry> fill_disk(int radius, F value) {
  std::vector<CoefficientSequence::Entry> out;
  const std::int64_t r2 = std::int64_t(radius) * radius;
  for (int i = -radius; i <= radius; ++i)
    for (int j = -radius; j <= radius; ++j) {
      const Mode n{i, j};
      if (n.is_zero() || n.norm_sq() > r2) continue;
      out.emplace_back(n, value(n));
    }
  return out;
}

const char* kind_tag(ProfileKind k) {
  switch (k) {
    case ProfileKind::ExplicitList: return "explicit";
    case ProfileKind::PowerLog: return "power_log";
    case ProfileKind::Custom: return "custom";
  }
  return "custom";
}

}  // namespace

CoefficientSequence::CoefficientSequence(std::vector<Entry> entries, ProfileKind kind,
                                         std::string id, std::optional<int> radius)
    : kind_(kind), id_(std::move(id)) {
  std::map<Mode, double> table;
  for (const auto& [n, v] : entries) {
    if (!std::isfinite(v)) throw InvalidSequence("non-finite coefficient");
    if (n.is_zero()) {
      if (v != 0.0) throw InvalidSequence("a_0 must vanish");
      continue;
    }
    auto [it, inserted] = table.emplace(n, v);
    if (!inserted && it->second != v)
      throw InvalidSequence("mode listed twice with different values");
  }
  std::int64_t max_r2 = 0;
  for (const auto& [n, v] : table) {
    auto mirror = table.find(-n);
    if (mirror == table.end() || mirror->second != v)
      throw InvalidSequence("a_{-n} must equal a_n for mode (" + std::to_string(n.n1) + "," +
                            std::to_string(n.n2) + ")");
    if (v != 0.0) {
      entries_.emplace_back(n, v);
      max_r2 = std::max(max_r2, n.norm_sq());
    }
  }
  radius_ = ceil_sqrt(max_r2);
  if (radius) {
    if (*radius < radius_) throw InvalidSequence("declared radius smaller than support");
    radius_ = *radius;
  }
}

double CoefficientSequence::operator[](Mode n) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                             [](const Entry& e, Mode m) { return e.first < m; });
  return (it != entries_.end() && it->first == n) ? it->second : 0.0;
}

int CoefficientSequence::max_abs() const {
  int m = 0;
  for (const auto& e : entries_) m = std::max(m, e.first.max_abs());
  return m;
}

bool CoefficientSequence::is_radial() const {
  std::map<std::int64_t, double> circle_value;
  std::map<std::int64_t, std::size_t> circle_count;
  for (const auto& [n, v] : entries_) {
    auto [it, inserted] = circle_value.emplace(n.norm_sq(), v);
    if (!inserted && it->second != v) return false;
    ++circle_count[n.norm_sq()];
  }
  for (const auto& [r2, count] : circle_count) {
    const int r = ceil_sqrt(r2);
    std::size_t lattice = 0;
    for (int i = -r; i <= r; ++i)
      for (int j = -r; j <= r; ++j)
        if (Mode{i, j}.norm_sq() == r2) ++lattice;
    if (lattice != count) return false;
  }
  return true;
}

CoefficientSequence CoefficientSequence::scaled(double factor) const {
  auto copy = *this;
  for (auto& e : copy.entries_) e.second *= factor;
  if (factor == 0.0) copy.entries_.clear();
  return copy;
}

CoefficientSequence make_power_log(int radius) {
  if (radius < 1) throw InvalidSequence("radius must be >= 1");
  auto entries = fill_disk(radius, [](Mode n) {
    const double b2 = static_cast<double>(n.bracket_sq());
    return 1.0 / (std::pow(b2, 2.5) * std::log(3.0 + b2));
  });
  return {std::move(entries), ProfileKind::PowerLog, "powerlog", radius};
}

CoefficientSequence make_gibbs_like(int radius) {
  if (radius < 1) throw InvalidSequence("radius must be >= 1");
  auto entries =
      fill_disk(radius, [](Mode n) { return 1.0 / static_cast<double>(n.bracket_sq()); });
  return {std::move(entries), ProfileKind::Custom, "gibbs-like", radius};
}

CoefficientSequence make_explicit(std::span<const CoefficientSequence::Entry> entries,
                                  std::string id) {
  return {{entries.begin(), entries.end()}, ProfileKind::ExplicitList, std::move(id)};
}

CoefficientSequence make_profile(ProfileKind kind, const ProfileParams& params, int radius) {
  if (radius < 1) throw InvalidSequence("radius must be >= 1");
  switch (kind) {
    case ProfileKind::PowerLog: return make_power_log(radius);
    case ProfileKind::ExplicitList:
      return make_explicit(params.entries, params.id.empty() ? "explicit" : params.id);
    case ProfileKind::Custom:
      return {params.entries, ProfileKind::Custom, params.id.empty() ? "custom" : params.id};
  }
  throw InvalidSequence("unknown profile kind");
}

bool is_named_profile(const std::string& name) {
  return name == "lemma61" || name == "powerlog" || name == "line" || name == "circle25" ||
         name == "gibbs-like";
}

CoefficientSequence named_profile(const std::string& name, int radius) {
  using E = CoefficientSequence::Entry;
  if (name == "lemma61") {
    const E e[] = {{{1, 0}, 1.0}, {{-1, 0}, 1.0}, {{0, 2}, 1.0}, {{0, -2}, 1.0}};
    return make_explicit(e, "lemma61");
  }
  if (name == "line") {
    const E e[] = {{{1, 1}, 1.0}, {{-1, -1}, 1.0}, {{2, 2}, 0.5}, {{-2, -2}, 0.5}};
    return make_explicit(e, "line");
  }
  if (name == "circle25") {
    std::vector<E> e;
    for (int i = -5; i <= 5; ++i)
      for (int j = -5; j <= 5; ++j)
        if (Mode{i, j}.norm_sq() == 25) e.emplace_back(Mode{i, j}, 1.0);
    return make_explicit(e, "circle25");
  }
  if (name == "powerlog") return make_power_log(radius);
  if (name == "gibbs-like") return make_gibbs_like(radius);
  throw InvalidSequence("unknown profile '" + name + "'");
}

double h_sigma_norm_sq(const CoefficientSequence& a, double sigma) {
  double s = 0.0;
  for (const auto& [n, v] : a.entries())
    s += std::pow(static_cast<double>(n.bracket_sq()), sigma) * v * v;
  return s;
}

void to_json(nlohmann::json& j, const CoefficientSequence& a) {
  j = nlohmann::json::object();
  j["radius"] = a.radius();
  j["id"] = a.id();
  if (a.kind() == ProfileKind::PowerLog) {
    j["profile"] = "power_log";
    return;
  }
  if (a.id() == "gibbs-like") {
    j["profile"] = "gibbs_like";
    return;
  }
  j["profile"] = kind_tag(a.kind());
  auto entries = nlohmann::json::array();
  for (const auto& [n, v] : a.entries()) entries.push_back({n.n1, n.n2, v});
  j["entries"] = std::move(entries);
}

CoefficientSequence sequence_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("profile") || !j["profile"].is_string())
    throw InvalidSequence("sequence JSON needs a string 'profile'");
  const auto profile = j["profile"].get<std::string>();
  const int radius = j.value("radius", 0);
  if (profile == "power_log") return make_power_log(radius);
  if (profile == "gibbs_like") return make_gibbs_like(radius);
  if (profile != "explicit" && profile != "custom")
    throw InvalidSequence("unknown profile tag '" + profile + "'");
  if (!j.contains("entries") || !j["entries"].is_array())
    throw InvalidSequence("explicit profile needs an 'entries' array");

  std::map<Mode, double> table;
  for (const auto& row : j["entries"]) {
    if (!row.is_array() || row.size() != 3 || !row[0].is_number_integer() ||
        !row[1].is_number_integer() || !row[2].is_number())
      throw InvalidSequence("entries must be [n1, n2, value] rows");
    const Mode n{row[0].get<int>(), row[1].get<int>()};
    const double v = row[2].get<double>();
    auto [it, inserted] = table.emplace(n, v);
    if (!inserted && it->second != v) throw InvalidSequence("conflicting duplicate entry");
  }
  std::vector<CoefficientSequence::Entry> entries(table.begin(), table.end());
  for (const auto& [n, v] : table)
    if (!table.contains(-n)) entries.emplace_back(-n, v);

  const auto kind = profile == "explicit" ? ProfileKind::ExplicitList : ProfileKind::Custom;
  std::optional<int> declared;
  if (radius > 0) declared = radius;
  return {std::move(entries), kind, j.value("id", profile), declared};
}

}  // namespace euler_gauss
