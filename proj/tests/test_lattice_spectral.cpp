#include <doctest.h>

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "euler_gauss/bilinear.hpp"
#include "euler_gauss/coefficients.hpp"
#include "euler_gauss/spectral_field.hpp"

using namespace euler_gauss;

namespace {

SpectralField unit_pair(Mode n, int truncation = 4) {
  SpectralField f(truncation);
  f.set_pair(n, {1.0, 0.0});
  return f;
}

}  // namespace

TEST_SUITE("lattice_spectral") {

TEST_CASE("mode arithmetic is exact") {
  constexpr Mode n{3, -4};
  static_assert(n.norm_sq() == 25);
  static_assert(n.bracket_sq() == 26);
  static_assert(n.perp() == Mode{4, 3});
  static_assert(cross(Mode{0, 2}, Mode{1, 0}) == 2);
  CHECK(Mode{0, 1}.in_upper_half());
  CHECK_FALSE(Mode{0, -1}.in_upper_half());
  CHECK(upper_representative(Mode{-2, 5}) == Mode{2, -5});
  CHECK(primitive_direction(Mode{-4, -6}) == Mode{2, 3});
}

TEST_CASE("sobolev norm of simple fields") {
  CHECK(sobolev_norm_sq(SpectralField(3), 1.7) == 0.0);
  const auto f = unit_pair({1, 0});
  CHECK(sobolev_norm_sq(f, 0.0) == 2.0);
  CHECK(sobolev_norm_sq(f, 1.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(f.is_valid());
  CHECK(enstrophy(f) == 2.0);
  CHECK(energy(f) == 2.0);
}

TEST_CASE("h^sigma norm examples") {
  CHECK(h_sigma_norm_sq(CoefficientSequence{}, 1.0) == 0.0);
  using E = CoefficientSequence::Entry;
  const E x[] = {{{1, 0}, 1.0}, {{-1, 0}, 1.0}};
  CHECK(h_sigma_norm_sq(make_explicit(x), 0.0) == 2.0);
  const E y[] = {{{0, 2}, 1.0}, {{0, -2}, 1.0}};
  CHECK(h_sigma_norm_sq(make_explicit(y), 1.0) == doctest::Approx(10.0).epsilon(1e-15));
}

TEST_CASE("power-log profile values") {
  const auto a = make_power_log(1);
  CHECK(a.size() == 4);
  const double v = 1.0 / (std::pow(2.0, 2.5) * std::log(5.0));
  for (Mode n : {Mode{1, 0}, Mode{-1, 0}, Mode{0, 1}, Mode{0, -1}})
    CHECK(a[n] == doctest::Approx(v).epsilon(1e-15));
  CHECK(a[{1, 1}] == 0.0);
  CHECK(a.is_radial());
  CHECK(a.kind() == ProfileKind::PowerLog);
}

TEST_CASE("power-log h^2 norm settles while the h^4 norm keeps creeping up") {
  const double h30 = h_sigma_norm_sq(make_power_log(30), 2.0);
  const double h60 = h_sigma_norm_sq(make_power_log(60), 2.0);
  CHECK(h60 >= h30);
  CHECK((h60 - h30) / h60 < 1e-6);
  double prev = 0.0;
  for (int r : {10, 20, 40}) {
    const double h = h_sigma_norm_sq(make_power_log(r), 4.0);
    CHECK(h > prev);
    prev = h;
  }
}

TEST_CASE("explicit lists are validated") {
  using E = CoefficientSequence::Entry;
  const auto lemma = named_profile("lemma61");
  CHECK(lemma.size() == 4);
  CHECK_FALSE(lemma.is_radial());
  CHECK(lemma.max_abs() == 2);

  const E missing[] = {{{1, 0}, 1.0}};
  CHECK_THROWS_AS(make_explicit(missing), InvalidSequence);
  const E uneven[] = {{{1, 0}, 1.0}, {{-1, 0}, 2.0}};
  CHECK_THROWS_AS(make_explicit(uneven), InvalidSequence);
  const E origin[] = {{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{-1, 0}, 1.0}};
  CHECK_THROWS_AS(make_explicit(origin), InvalidSequence);
  CHECK_THROWS_AS(named_profile("nope"), InvalidSequence);
}

TEST_CASE("sequence JSON round trip") {
  for (const char* name : {"lemma61", "line", "circle25"}) {
    const auto a = named_profile(name);
    const auto b = sequence_from_json(nlohmann::json(a));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.entries()[i] == b.entries()[i]);
  }
  const auto p = sequence_from_json(nlohmann::json::parse(R"({"profile":"power_log","radius":5})"));
  CHECK(p.size() == make_power_log(5).size());
  // upper-half listing: mirrors are re-derived
  const auto half = sequence_from_json(
      nlohmann::json::parse(R"({"profile":"explicit","entries":[[1,0,1.0],[0,2,1.0]]})"));
  CHECK(half.size() == 4);
  CHECK_THROWS_AS(sequence_from_json(nlohmann::json::parse(R"({"profile":"explicit"})")),
                  InvalidSequence);
}

TEST_CASE("biot-savart of 2 cos x1") {
  const auto u = biot_savart(unit_pair({1, 0}));
  CHECK(u.u1.is_zero());
  CHECK(u.u2[{1, 0}] == std::complex<double>(0, -1));
  CHECK(u.u2[{-1, 0}] == std::complex<double>(0, 1));
  CHECK(biot_savart(SpectralField(3)).u1.is_zero());
}

TEST_CASE("divergence and curl identities on the |n|^2 = 5 circle") {
  SpectralField w(3);
  for (Mode n : {Mode{1, 2}, Mode{2, 1}, Mode{2, -1}, Mode{1, -2}}) w.set_pair(n, {1.0, 0.0});
  const auto u = biot_savart(w);
  CHECK(divergence_defect(u) == 0.0);
  const auto back = curl(u);
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j) CHECK(std::abs(back[{i, j}] - w[{i, j}]) < 1e-15);
}

TEST_CASE("field CSV dump lists nonzero modes") {
  std::ostringstream os;
  write_csv(os, unit_pair({0, 1}, 2));
  const auto text = os.str();
  CHECK(text.rfind("n1,n2,re,im\n", 0) == 0);
  CHECK(text.find("0,1,1,0") != std::string::npos);
  CHECK(text.find("0,-1,1,") != std::string::npos);
}

}  // TEST_SUITE
