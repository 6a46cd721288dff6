#ifndef EULER_GAUSS_FLOW_HPP
#define EULER_GAUSS_FLOW_HPP

#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "euler_gauss/bilinear.hpp"
#include "euler_gauss/spectral_field.hpp"

namespace euler_gauss {

/// Raised when an integration blows up (instability guard) or produces non-finite values.
class NumericalAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// States of the truncated flow sampled at `times`; times[0] = 0 and states[0] is the initial field.
struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> states;

  const SpectralField& initial() const { return states.front(); }
  std::size_t size() const { return times.size(); }
};

/// One classical RK4 step of dOmega/dt = -B1(Omega) with the sharp Galerkin cutoff of the
/// field's own truncation. dt may be negative (backward integration).
SpectralField rk4_step(const SpectralField& w, double dt, Evaluation eval = Evaluation::Auto);

/// Integrates from t = 0 and records the state at every grid time. Each grid spacing must
/// be an integer multiple of dt. Throws NumericalAbort when the enstrophy exceeds
/// `guard_factor` times its initial value.
Trajectory evolve(const SpectralField& w0, const std::vector<double>& t_grid, double dt,
                  Evaluation eval = Evaluation::Auto, double guard_factor = 10.0);

/// Uniform grid {0, h, 2h, ..., t_max} with h = spacing.
std::vector<double> uniform_grid(double t_max, double spacing);

/// ||w(t)||_{H^s} for w(t) = Omega(t) - Omega_0 + t B1(Omega_0) - t^2 B2(Omega_0).
/// Requires the truncation to hold every mode of B2(Omega_0).
std::vector<std::pair<double, double>> remainder_norms(const Trajectory& traj, double s);

/// Slope of log ||w|| against log t, by least squares over samples with t in [t_lo, t_hi].
double remainder_slope(const std::vector<std::pair<double, double>>& norms, double t_lo,
                       double t_hi);

/// max over interior samples of ||central difference of w - RHS(w, t)||_{H^0}, divided by
/// max ||RHS||. RHS is the evolution equation of w assembled from the bilinear forms.
/// Needs a uniformly sampled trajectory with at least 3 samples.
double remainder_rhs_check(const Trajectory& traj, Evaluation eval = Evaluation::Auto);

struct ConservationDrift {
  double enstrophy = 0;  // max relative deviation from the initial value
  double energy = 0;
};
ConservationDrift conservation_drift(const Trajectory& traj);

/// Rows t,n1,n2,re,im for every nonzero coefficient of every state.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
/// Rows t,enstrophy,energy,hs_norm,w_norm. w_norm is empty when B2 does not fit.
void write_summary_csv(std::ostream& os, const Trajectory& traj, double s);

}  // namespace euler_gauss

#endif  // EULER_GAUSS_FLOW_HPP
