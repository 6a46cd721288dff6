#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <nlohmann/json.hpp>

#include "euler_gauss/certificate.hpp"
#include "euler_gauss/gamma.hpp"
#include "euler_gauss/interval.hpp"

using namespace euler_gauss;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

struct Node {
  Interval iv;
  Big exact;
};

/// Random expression over + - * / sqrt log on interval leaves; `exact` follows one member point.
/// Returns false when the tree leaves the domain of an operation.
bool random_tree(std::mt19937_64& gen, int depth, Node& out) {
  std::uniform_int_distribution<int> op(0, depth == 0 ? 0 : 6);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-20, 20);
  const int o = op(gen);
  if (o == 0) {
    // interval leaf with a random member point
    const double v = std::ldexp(mant(gen), expo(gen));
    const double w = v + std::ldexp(std::fabs(mant(gen)), expo(gen) - 8);
    std::uniform_real_distribution<double> member(v, w);
    out = {Interval(v, w), Big(std::clamp(member(gen), v, w))};
    return true;
  }
  Node a, b;
  if (!random_tree(gen, depth - 1, a)) return false;
  try {
    switch (o) {
      case 1:
      case 2:
      case 3:
      case 4:
        if (!random_tree(gen, depth - 1, b)) return false;
        if (o == 1) out = {a.iv + b.iv, a.exact + b.exact};
        if (o == 2) out = {a.iv - b.iv, a.exact - b.exact};
        if (o == 3) out = {a.iv * b.iv, a.exact * b.exact};
        if (o == 4) {
          if (b.exact == 0) return false;
          out = {a.iv / b.iv, a.exact / b.exact};
        }
        return true;
      case 5:
        if (a.exact < 0) return false;
        out = {sqrt(a.iv), boost::multiprecision::sqrt(a.exact)};
        return true;
      default:
        if (a.exact <= 0) return false;
        out = {log(a.iv), boost::multiprecision::log(a.exact)};
        return true;
    }
  } catch (const IntervalError&) {
    return false;
  }
}

bool encloses(const Interval& x, const Big& v) { return Big(x.lo()) <= v && v <= Big(x.hi()); }
bool encloses(const LongInterval& x, const Big& v) { return Big(x.lo()) <= v && v <= Big(x.hi()); }

/// Bare partial sum over |n|^2, |q|^2 < N^2 with weight (1 + |n|^2)^{2s} at s = 1/2, written
/// with the unregrouped bracket so it shares no algebra with the library kernel.
Big partial_sum_oracle(int N) {
  std::vector<Mode> modes;
  for (int i = -N; i <= N; ++i)
    for (int j = -N; j <= N; ++j)
      if (Mode{i, j}.norm_sq() > 0 && Mode{i, j}.norm_sq() < std::int64_t(N) * N) modes.push_back({i, j});
  auto a2 = [](Mode n) {
    const Big b = Big(n.bracket_sq());
    const Big l = boost::multiprecision::log(3 + b);
    return 1 / (boost::multiprecision::pow(b, 5) * l * l);
  };
  auto w = [](Mode n) { return Big(n.bracket_sq()); };
  Big sum = 0;
  for (Mode n : modes)
    for (Mode q : modes) {
      const Mode p = n + q;
      if (p.is_zero()) continue;
      const Big nn = Big(n.norm_sq()), qq = Big(q.norm_sq()), pp = Big(p.norm_sq());
      const Big beta = w(n) * (1 / qq - 1 / pp) + w(q) * (1 / pp - 1 / nn) + w(p) * (1 / nn - 1 / qq);
      const Big cr = Big(cross(q, n));
      sum += a2(n) * a2(q) * cr * cr / 2 * (1 / nn - 1 / qq) * beta;
    }
  return sum;
}

}  // namespace

TEST_SUITE("interval_certificate") {

TEST_CASE("basic operations") {
  const auto s = Interval(1.0) + Interval(2.0);
  CHECK(s.contains(3.0));
  CHECK(s.width() <= 2 * std::numeric_limits<double>::epsilon() * 3.0);
  CHECK(sqrt(Interval(4.0)).contains(2.0));
  CHECK_THROWS_AS(Interval(1.0, 2.0) / Interval(0.0, 1.0), IntervalError);
  CHECK_THROWS_AS(Interval(2.0, 1.0), IntervalError);
  CHECK_THROWS_AS(sqrt(Interval(-1.0, 1.0)), IntervalError);
  CHECK_THROWS_AS(log(Interval(0.0, 1.0)), IntervalError);
  const auto third = Interval::ratio(1, 3);
  CHECK(third.lo() < third.hi());
  CHECK(encloses(third, Big(1) / 3));
  CHECK(integer_pow(Interval(-2.0), 3).contains(-8.0));
  CHECK(integer_pow(Interval(2.0), -2).contains(0.25));
  CHECK(hull(Interval(1.0), Interval(3.0)).contains(2.0));
  const auto big = Interval::from_integer((std::int64_t(1) << 60) + 1);
  CHECK(encloses(big, Big((std::int64_t(1) << 60) + 1)));
}

TEST_CASE("log and sqrt enclose the 50-digit values") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> mant(0.5, 1.0);
  std::uniform_int_distribution<int> expo(-60, 60);
  for (int i = 0; i < 20000; ++i) {
    const double x = std::ldexp(mant(gen), expo(gen));
    CHECK(encloses(log(Interval(x)), boost::multiprecision::log(Big(x))));
    CHECK(encloses(sqrt(Interval(x)), boost::multiprecision::sqrt(Big(x))));
    const LongInterval lx(static_cast<long double>(x));
    CHECK(encloses(log(lx), boost::multiprecision::log(Big(x))));
  }
  CHECK(encloses(log(Interval(1.0)), Big(0)));
  CHECK(log(Interval(1.0)).width() < 1e-300);
  CHECK(encloses(detail::ln2<double>(), boost::multiprecision::log(Big(2))));
}

TEST_CASE("random expression trees are enclosed") {
  std::mt19937_64 gen(42);
  int checked = 0;
  for (int i = 0; checked < 100000 && i < 1000000; ++i) {
    Node n;
    if (!random_tree(gen, 4, n)) continue;
    if (!std::isfinite(n.iv.lo()) || !std::isfinite(n.iv.hi())) continue;
    ++checked;
    if (!encloses(n.iv, n.exact)) {
      FAIL("tree " << i << " [" << n.iv.lo() << ", " << n.iv.hi() << "] misses "
                   << n.exact.str(20));
    }
  }
  CHECK(checked == 100000);
}

TEST_CASE("empty partial sum") {
  const auto z = gamma_partial_interval(0.5, 1);
  CHECK(z.lo() == 0.0);
  CHECK(z.hi() == 0.0);
}

TEST_CASE("N = 2 partial sum: tight enclosure of the 50-digit value") {
  const Big exact = partial_sum_oracle(2);
  CHECK(exact > 0);
  const auto d = gamma_partial_interval(0.5, 2);
  CHECK(encloses(d, exact));
  const auto p = gamma_partial_interval_precise(0.5, 2);
  CHECK(encloses(p, exact));
  const Big rel = (Big(p.hi()) - Big(p.lo())) / exact;
  CHECK(rel < Big("1e-18"));
}

TEST_CASE("N = 6 partial sum matches the oracle") {
  const Big exact = partial_sum_oracle(6);
  CHECK(encloses(gamma_partial_interval(0.5, 6), exact));
  CHECK(encloses(gamma_partial_interval_long(0.5, 6), exact));
}

TEST_CASE("partial sum equals the bare gamma of the strictly truncated profile") {
  const auto iv = gamma_partial_interval(0.25, 5, WeightConvention::ReferenceCode);
  const auto iv_std = gamma_partial_interval(0.5, 5, WeightConvention::Standard);
  CHECK(iv.lo() == iv_std.lo());
  CHECK(iv.hi() == iv_std.hi());

  std::vector<CoefficientSequence::Entry> e;
  for (int i = -5; i <= 5; ++i)
    for (int j = -5; j <= 5; ++j) {
      const Mode n{i, j};
      if (n.is_zero() || n.norm_sq() >= 25) continue;
      const double b = static_cast<double>(n.bracket_sq());
      e.emplace_back(n, 1.0 / (std::pow(b, 2.5) * std::log(3.0 + b)));
    }
  const double g = gamma(make_explicit(e, "disk"), 0.5).gamma_bare;
  CHECK(g == doctest::Approx(iv_std.mid()).epsilon(1e-12));
}

TEST_CASE("tail bound formula") {
  const auto t30 = tail_bound(30);
  const Big direct = Big(1536) / boost::multiprecision::pow(Big(30), 5) *
                     (Big(10) / 6 + Big(3) / boost::multiprecision::pow(Big(30), 8));
  CHECK(encloses(t30, direct));
  CHECK(t30.hi() <= 0.00010534979423897216787 * (1 + 1e-12));
  const auto t60 = tail_bound(60);
  CHECK(t60.hi() / t30.hi() == doctest::Approx(1.0 / 32).epsilon(1e-9));
  CHECK(tail_bound(10).hi() == doctest::Approx(2.56e-2).epsilon(0.01));
  CHECK_THROWS_AS(tail_bound(1), std::invalid_argument);
  CHECK_THROWS_AS(tail_bound("lemma61", 0.5, 30), UnsupportedProfile);
  CHECK_THROWS_AS(tail_bound("powerlog", 1.0, 30), UnsupportedProfile);
  CHECK(tail_bound("zero", 0.5, 30).hi() == 0.0);
}

TEST_CASE("verdict logic") {
  CHECK(decide(Interval(2.0, 3.0), Interval(0.0, 1.0)) == Verdict::PositiveCertified);
  CHECK(decide(Interval(-3.0, -2.0), Interval(0.0, 1.0)) == Verdict::NegativeCertified);
  CHECK(decide(Interval(1.0, 3.0), Interval(0.0, 1.0)) == Verdict::Inconclusive);
  CHECK(decide(Interval(0.0), Interval(0.0)) == Verdict::Inconclusive);
}

TEST_CASE("certificates at small N") {
  const auto c10 = certify("powerlog", 0.5, 10);
  CHECK(c10.verdict == Verdict::Inconclusive);
  CHECK(c10.half_gamma_N.lo() > 0.0);
  const auto c3 = certify("powerlog", 0.5, 3);
  CHECK(c3.verdict == Verdict::Inconclusive);
  const auto zero = certify("zero", 0.5, 30);
  CHECK(zero.half_gamma_N.hi() == 0.0);
  CHECK(zero.verdict == Verdict::Inconclusive);
  CHECK_THROWS_AS(certify("gibbs-like", 0.5, 30), UnsupportedProfile);
  CHECK_THROWS_AS(certify("powerlog", 0.3, 30), UnsupportedProfile);
}

TEST_CASE("certificate JSON") {
  const auto c = certify("powerlog", 0.5, 4);
  const auto j = certificate_json(c);
  CHECK(j["profile"] == "powerlog");
  CHECK(j["N"] == 4);
  CHECK(j["half_gamma_N"].size() == 2);
  CHECK(j["epsilon"][1].get<double>() == c.tail_bound.hi());
  CHECK(j["verdict"] == "Inconclusive");
  CHECK(j["weight_convention"] == "reference_code");
  const auto r = certificate_json(c, true);
  CHECK(r["cpu_info"] == "omitted");
  CHECK(r["runtime_ms"] == 0.0);
}

TEST_CASE("parallel partial sums are bit-identical") {
  const auto one = gamma_partial_interval(0.5, 12, WeightConvention::ReferenceCode, 1);
  const auto three = gamma_partial_interval(0.5, 12, WeightConvention::ReferenceCode, 3);
  CHECK(one.lo() == three.lo());
  CHECK(one.hi() == three.hi());
}

}  // TEST_SUITE
