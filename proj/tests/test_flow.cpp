#include <doctest.h>

#include <cmath>
#include <sstream>

#include "euler_gauss/coefficients.hpp"
#include "euler_gauss/flow.hpp"
#include "euler_gauss/sampling.hpp"

using namespace euler_gauss;

namespace {

SpectralField from_sequence(const CoefficientSequence& a, int truncation) {
  SpectralField f(truncation);
  for (const auto& [n, v] : a.entries()) f.at(n) = v;
  return f;
}

SpectralField circle5(int truncation) {
  SpectralField w(truncation);
  for (Mode n : {Mode{1, 2}, Mode{2, 1}, Mode{2, -1}, Mode{1, -2}}) w.set_pair(n, {0.7, -0.2});
  return w;
}

double rel_h0(const SpectralField& a, const SpectralField& b) {
  return std::sqrt(sobolev_norm_sq(a - b, 0.0) / sobolev_norm_sq(b, 0.0));
}

}  // namespace

TEST_SUITE("truncated_flow") {

TEST_CASE("stationary data are exact fixed points") {
  const auto line = from_sequence(named_profile("line"), 8);
  const auto step = rk4_step(line, 1e-2);
  CHECK((step.coeffs().array() == line.coeffs().array()).all());
  const auto circ = circle5(8);
  CHECK((rk4_step(circ, 0.3).coeffs().array() == circ.coeffs().array()).all());

  const auto traj = evolve(circ, uniform_grid(0.2, 0.05), 1e-2);
  for (const auto& st : traj.states) CHECK((st.coeffs().array() == circ.coeffs().array()).all());
  for (const auto& [t, v] : remainder_norms(traj, 0.5)) CHECK(v == 0.0);
  CHECK(remainder_rhs_check(traj) == 0.0);
}

TEST_CASE("single-time grid") {
  const auto w = from_sequence(named_profile("lemma61"), 16);
  const auto traj = evolve(w, {0.0}, 1e-3);
  CHECK(traj.size() == 1);
  CHECK(traj.initial().coeffs() == w.coeffs());
}

TEST_CASE("grid validation") {
  const auto w = from_sequence(named_profile("lemma61"), 8);
  CHECK_THROWS_AS(evolve(w, {}, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(evolve(w, {0.1, 0.2}, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(evolve(w, {0.0, 0.2, 0.1}, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(evolve(w, {0.0, 0.0105}, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(evolve(w, {0.0, 0.1}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rk4_step(w, NAN), std::invalid_argument);
}

TEST_CASE("conservation over the acceptance configuration") {
  const auto w = from_sequence(named_profile("lemma61"), 16);
  const auto traj = evolve(w, uniform_grid(0.05, 1e-3), 1e-3);
  const auto d = conservation_drift(traj);
  CHECK(d.enstrophy < 1e-8);
  CHECK(d.energy < 1e-8);
}

TEST_CASE("enstrophy drift per step shrinks with dt like dt^6") {
  SamplerConfig cfg{make_power_log(4), 8, 3, 1};
  auto w = sample(cfg, 0);
  w *= 10.0;  // strong enough that truncation error dominates round-off
  const double z0 = enstrophy(w);
  const double d1 = std::fabs(enstrophy(rk4_step(w, 0.02)) - z0);
  const double d2 = std::fabs(enstrophy(rk4_step(w, 0.01)) - z0);
  REQUIRE(d1 > 1e-13 * z0);
  const double order = std::log2(d1 / d2);
  CHECK(order > 5.5);
  CHECK(order < 6.5);
}

TEST_CASE("time reversal") {
  SamplerConfig cfg{named_profile("lemma61"), 16, 9, 4};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto w0 = sample(cfg, i);
    const double dt = 1e-3;
    const auto fwd = evolve(w0, {0.0, 0.05}, dt);
    SpectralField w = fwd.states.back();
    for (int k = 0; k < 50; ++k) w = rk4_step(w, -dt);
    CHECK(rel_h0(w, w0) < 1e-7);
  }
}

TEST_CASE("remainder vanishes at t = 0 and scales like t^3") {
  SamplerConfig cfg{named_profile("lemma61"), 16, 21, 3};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto traj = evolve(sample(cfg, i), uniform_grid(0.05, 1e-3), 1e-3);
    const auto norms = remainder_norms(traj, 0.5);
    CHECK(norms.front().second == 0.0);
    const double slope = remainder_slope(norms, 1e-3, 5e-2);
    CHECK(slope > 2.7);
    CHECK(slope < 3.3);
  }
  const auto small = evolve(from_sequence(named_profile("lemma61"), 5), {0.0, 0.01}, 1e-3);
  CHECK_THROWS_AS(remainder_norms(small, 0.5), std::invalid_argument);
}

TEST_CASE("remainder equation residual is second order in the sampling step") {
  SamplerConfig cfg{named_profile("lemma61"), 16, 5, 1};
  const auto w0 = sample(cfg, 0);
  const auto coarse = evolve(w0, uniform_grid(0.04, 4e-3), 1e-3);
  const auto fine = evolve(w0, uniform_grid(0.04, 2e-3), 1e-3);
  const double rc = remainder_rhs_check(coarse);
  const double rf = remainder_rhs_check(fine);
  CHECK(std::isfinite(rc));
  CHECK(rc / rf == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("single pair field at a coarse step") {
  SpectralField w(9);
  w.set_pair({1, 0}, {1.0, 0.0});
  w.set_pair({0, 2}, {0.5, 0.5});
  const auto traj = evolve(w, uniform_grid(0.2, 0.05), 0.05);
  const double r = remainder_rhs_check(traj);
  CHECK(std::isfinite(r));
  CHECK(r > 0.0);
  CHECK(r < 1.0);
}

TEST_CASE("instability guard") {
  auto w = from_sequence(named_profile("lemma61"), 8);
  w *= 200.0;
  CHECK_THROWS_AS(evolve(w, uniform_grid(1.0, 0.1), 0.1), NumericalAbort);
}

TEST_CASE("trajectory CSV exports") {
  const auto w = from_sequence(named_profile("lemma61"), 8);
  const auto traj = evolve(w, uniform_grid(0.002, 1e-3), 1e-3);
  std::ostringstream a, b;
  write_trajectory_csv(a, traj);
  write_summary_csv(b, traj, 0.5);
  CHECK(a.str().rfind("t,n1,n2,re,im\n", 0) == 0);
  CHECK(b.str().rfind("t,enstrophy,energy,hs_norm,w_norm\n", 0) == 0);
  std::istringstream lines(b.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 4);
}

}  // TEST_SUITE
