#include "euler_gauss/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

namespace euler_gauss {

namespace {

SpectralField rhs(const SpectralField& w, Evaluation eval) {
  auto b = bilinear(w, w, w.truncation(), eval);
  b *= -1.0;
  return b;
}

bool b2_fits(const SpectralField& w0) {
  if (w0.is_zero()) return true;
  const int r = w0.occupied_radius();
  return 3 * r <= w0.truncation();
}

double h0_norm(const SpectralField& f) { return std::sqrt(sobolev_norm_sq(f, 0.0)); }

}  // namespace

SpectralField rk4_step(const SpectralField& w, double dt, Evaluation eval) {
  if (!std::isfinite(dt)) throw std::invalid_argument("dt must be finite");
  const auto k1 = rhs(w, eval);
  if (k1.is_zero()) return w;  // stationary: every stage vanishes
  const auto k2 = rhs(w + (0.5 * dt) * k1, eval);
  const auto k3 = rhs(w + (0.5 * dt) * k2, eval);
  const auto k4 = rhs(w + dt * k3, eval);
  SpectralField out = w;
  out.axpy(dt / 6.0, k1);
  out.axpy(dt / 3.0, k2);
  out.axpy(dt / 3.0, k3);
  out.axpy(dt / 6.0, k4);
  return out;
}

std::vector<double> uniform_grid(double t_max, double spacing) {
  if (!(spacing > 0) || !(t_max >= 0)) throw std::invalid_argument("bad grid parameters");
  const auto steps = static_cast<long>(std::llround(t_max / spacing));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(steps + 1));
  for (long k = 0; k <= steps; ++k) grid.push_back(static_cast<double>(k) * spacing);
  return grid;
}

Trajectory evolve(const SpectralField& w0, const std::vector<double>& t_grid, double dt,
                  Evaluation eval, double guard_factor) {
  if (t_grid.empty() || t_grid.front() != 0.0) throw std::invalid_argument("t_grid must start at 0");
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    const double gap = t_grid[i] - t_grid[i - 1];
    if (!(gap > 0)) throw std::invalid_argument("t_grid must be strictly increasing");
    const double steps = gap / dt;
    if (std::fabs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps))
      throw std::invalid_argument("dt must divide every grid spacing");
  }

  const double h0 = sobolev_norm_sq(w0, 0.0);
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(w0);
  SpectralField w = w0;
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    const double gap = t_grid[i] - t_grid[i - 1];
    const long steps = std::lround(gap / dt);
    const double h = gap / static_cast<double>(steps);
    for (long k = 0; k < steps; ++k) {
      w = rk4_step(w, h, eval);
      const double e = sobolev_norm_sq(w, 0.0);
      if (!std::isfinite(e) || e > guard_factor * h0)
        throw NumericalAbort("enstrophy grew by more than " + std::to_string(guard_factor) +
                             "x at t = " + std::to_string(t_grid[i - 1] + (k + 1) * h) +
                             "; reduce dt");
    }
    traj.times.push_back(t_grid[i]);
    traj.states.push_back(w);
  }
  return traj;
}

std::vector<std::pair<double, double>> remainder_norms(const Trajectory& traj, double s) {
  const auto& w0 = traj.initial();
  if (!b2_fits(w0))
    throw std::invalid_argument("truncation too small to hold B2 of the initial field");
  const auto f1 = b1(w0);
  const auto f2 = b2(w0);
  std::vector<std::pair<double, double>> out;
  out.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    SpectralField w = traj.states[i] - w0;
    w.axpy(t, f1);
    w.axpy(-t * t, f2);
    out.emplace_back(t, std::sqrt(sobolev_norm_sq(w, s)));
  }
  return out;
}

double remainder_slope(const std::vector<std::pair<double, double>>& norms, double t_lo,
                       double t_hi) {
  std::vector<double> x, y;
  for (const auto& [t, v] : norms)
    if (t >= t_lo && t <= t_hi && t > 0 && v > 0) {
      x.push_back(std::log(t));
      y.push_back(std::log(v));
    }
  if (x.size() < 2) throw std::invalid_argument("need two positive samples to fit a slope");
  Eigen::MatrixXd a(x.size(), 2);
  Eigen::VectorXd b(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    a(static_cast<Eigen::Index>(i), 0) = 1.0;
    a(static_cast<Eigen::Index>(i), 1) = x[i];
    b(static_cast<Eigen::Index>(i)) = y[i];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  return c(1);
}

double remainder_rhs_check(const Trajectory& traj, Evaluation eval) {
  if (traj.size() < 3) throw std::invalid_argument("need at least 3 samples");
  const double h = traj.times[1] - traj.times[0];
  for (std::size_t i = 1; i < traj.size(); ++i)
    if (std::fabs(traj.times[i] - traj.times[i - 1] - h) > 1e-9 * h)
      throw std::invalid_argument("remainder_rhs_check needs uniform sampling");

  const auto& w0 = traj.initial();
  const int n = w0.truncation();
  const auto forms = iterated_forms(w0, Truncation::Galerkin, eval);

  std::vector<SpectralField> w;
  w.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    SpectralField r = traj.states[i] - w0;
    r.axpy(t, forms.b1);
    r.axpy(-t * t, forms.b2);
    w.push_back(std::move(r));
  }

  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
    const double t = traj.times[i];
    const auto& wi = w[i];
    SpectralField r(n);
    r.axpy(-1.0, bilinear(wi, wi, n, eval));
    r.axpy(-2.0, bilinear(w0, wi, n, eval));
    r.axpy(2.0 * t, bilinear(forms.b1, wi, n, eval));
    r.axpy(-2.0 * t * t, bilinear(forms.b2, wi, n, eval));
    r.axpy(-t * t, forms.b3);
    r.axpy(2.0 * t * t * t, forms.b3_prime);
    r.axpy(-t * t * t * t, forms.b3_tilde);

    SpectralField fd = w[i + 1] - w[i - 1];
    fd *= 1.0 / (2.0 * h);
    worst = std::max(worst, h0_norm(fd - r));
    scale = std::max(scale, h0_norm(r));
  }
  if (worst == 0.0) return 0.0;
  if (scale == 0.0) return std::numeric_limits<double>::infinity();
  return worst / scale;
}

ConservationDrift conservation_drift(const Trajectory& traj) {
  ConservationDrift d;
  const double z0 = enstrophy(traj.initial());
  const double e0 = energy(traj.initial());
  for (const auto& st : traj.states) {
    if (z0 > 0) d.enstrophy = std::max(d.enstrophy, std::fabs(enstrophy(st) - z0) / z0);
    if (e0 > 0) d.energy = std::max(d.energy, std::fabs(energy(st) - e0) / e0);
  }
  return d;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,n1,n2,re,im\n";
  os.precision(17);
  for (std::size_t i = 0; i < traj.size(); ++i)
    traj.states[i].for_each_nonzero([&](Mode n, const std::complex<double>& c) {
      os << traj.times[i] << ',' << n.n1 << ',' << n.n2 << ',' << c.real() << ',' << c.imag()
         << '\n';
    });
}

void write_summary_csv(std::ostream& os, const Trajectory& traj, double s) {
  os << "t,enstrophy,energy,hs_norm,w_norm\n";
  os.precision(17);
  std::vector<std::pair<double, double>> w;
  if (b2_fits(traj.initial())) w = remainder_norms(traj, s);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& st = traj.states[i];
    os << traj.times[i] << ',' << enstrophy(st) << ',' << energy(st) << ','
       << std::sqrt(sobolev_norm_sq(st, s)) << ',';
    if (!w.empty()) os << w[i].second;
    os << '\n';
  }
}

}  // namespace euler_gauss
