#ifndef EULER_GAUSS_COEFFICIENTS_HPP
#define EULER_GAUSS_COEFFICIENTS_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "euler_gauss/mode.hpp"

namespace euler_gauss {

enum class ProfileKind { ExplicitList, PowerLog, Custom };

/// Raised when a coefficient sequence violates a_0 = 0, a_{-n} = a_n or realness.
class InvalidSequence : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The real, even sequence (a_n) that defines a Gaussian measure on vorticity fields.
///
/// Entries are stored sparsely and sorted by mode; zero entries are dropped, so
/// `entries()` is exactly the Fourier support S = {n : a_n != 0}. Both n and -n are
/// stored explicitly.
class CoefficientSequence {
 public:
  using Entry = std::pair<Mode, double>;

  CoefficientSequence() = default;

  /// Validating constructor. Every stored mode must come with its mirror at the same value.
  CoefficientSequence(std::vector<Entry> entries, ProfileKind kind, std::string id,
                      std::optional<int> radius = std::nullopt);

  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  double operator[](Mode n) const;

  /// Integer R with |n| <= R on the support.
  int radius() const { return radius_; }
  /// Smallest square truncation holding the support.
  int max_abs() const;

  ProfileKind kind() const { return kind_; }
  const std::string& id() const { return id_; }

  /// a_m = a_n whenever |m| = |n|, with every lattice point of each occupied circle present.
  bool is_radial() const;

  /// Same support and kind with every value multiplied by `factor`.
  CoefficientSequence scaled(double factor) const;

 private:
  std::vector<Entry> entries_;
  ProfileKind kind_ = ProfileKind::Custom;
  std::string id_;
  int radius_ = 0;
};

/// a_n = 1 / (<n>^5 log(3 + <n>^2)) on 0 < |n| <= radius.
CoefficientSequence make_power_log(int radius);

/// a_n = <n>^-2 on 0 < |n| <= radius. Exploratory, no certified tail.
CoefficientSequence make_gibbs_like(int radius);

/// Explicit list; the mirror of every mode must be listed.
CoefficientSequence make_explicit(std::span<const CoefficientSequence::Entry> entries,
                                  std::string id = "explicit");

struct ProfileParams {
  std::vector<CoefficientSequence::Entry> entries;  // ExplicitList only
  std::string id;
};

CoefficientSequence make_profile(ProfileKind kind, const ProfileParams& params, int radius);

/// Built-in profiles: "lemma61", "powerlog", "line", "circle25", "gibbs-like".
/// `radius` is used by the decaying profiles only.
CoefficientSequence named_profile(const std::string& name, int radius = 30);
bool is_named_profile(const std::string& name);

/// sum <n>^{2 sigma} |a_n|^2 over stored modes.
double h_sigma_norm_sq(const CoefficientSequence& a, double sigma);

void to_json(nlohmann::json& j, const CoefficientSequence& a);
/// Re-derives mirror modes that are absent and validates the result.
CoefficientSequence sequence_from_json(const nlohmann::json& j);

}  // namespace euler_gauss

#endif  // EULER_GAUSS_COEFFICIENTS_HPP
