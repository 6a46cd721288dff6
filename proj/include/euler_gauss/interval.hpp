#ifndef EULER_GAUSS_INTERVAL_HPP
#define EULER_GAUSS_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace euler_gauss {

/// Domain violation in interval arithmetic. A certificate never clamps silently.
class IntervalError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace rounding {

// Directed rounding emulated on top of round-to-nearest: the exact error of each
// operation is recovered with an error-free transformation (TwoSum, FMA residual),
// and the result is moved one ulp outward only when that error points outward.
// Near the underflow range the residual may be inexact, so both sides are widened.

template <class T>
T pred(T x) { return std::nextafter(x, -std::numeric_limits<T>::infinity()); }
template <class T>
T succ(T x) { return std::nextafter(x, std::numeric_limits<T>::infinity()); }

template <class T>
bool tiny(T x) {
  static const T bound =
      std::ldexp(std::numeric_limits<T>::min(), std::numeric_limits<T>::digits + 2);
  return std::fabs(x) < bound;
}

/// (s, e) with s = fl(a + b) and a + b = s + e exactly.
template <class T>
void two_sum(T a, T b, T& s, T& e) {
  s = a + b;
  const T bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

template <class T>
T add_down(T a, T b) {
  T s, e;
  two_sum(a, b, s, e);
  if (!std::isfinite(s)) return s;
  return e < 0 ? pred(s) : s;
}
template <class T>
T add_up(T a, T b) {
  T s, e;
  two_sum(a, b, s, e);
  if (!std::isfinite(s)) return s;
  return e > 0 ? succ(s) : s;
}
template <class T>
T sub_down(T a, T b) { return add_down(a, -b); }
template <class T>
T sub_up(T a, T b) { return add_up(a, -b); }

template <class T>
T mul_down(T a, T b) {
  if (a == 0 || b == 0) return T(0);
  const T p = a * b;
  if (!std::isfinite(p)) return p;
  if (tiny(p)) return pred(p);
  return std::fma(a, b, -p) < 0 ? pred(p) : p;
}
template <class T>
T mul_up(T a, T b) {
  if (a == 0 || b == 0) return T(0);
  const T p = a * b;
  if (!std::isfinite(p)) return p;
  if (tiny(p)) return succ(p);
  return std::fma(a, b, -p) > 0 ? succ(p) : p;
}

/// Sign of (a/b - fl(a/b)): -1, 0 or 1; 2 when the residual cannot be trusted.
template <class T>
int div_error_sign(T a, T b, T q) {
  if (tiny(q) || tiny(a)) return 2;
  const T r = std::fma(-q, b, a);
  if (r == 0) return 0;
  return ((r > 0) == (b > 0)) ? 1 : -1;
}
template <class T>
T div_down(T a, T b) {
  if (a == 0) return T(0);
  const T q = a / b;
  if (!std::isfinite(q)) return q;
  const int s = div_error_sign(a, b, q);
  return (s < 0 || s == 2) ? pred(q) : q;
}
template <class T>
T div_up(T a, T b) {
  if (a == 0) return T(0);
  const T q = a / b;
  if (!std::isfinite(q)) return q;
  const int s = div_error_sign(a, b, q);
  return (s > 0) ? succ(q) : q;
}

template <class T>
T sqrt_down(T x) {
  if (x == 0) return T(0);
  const T r = std::sqrt(x);
  if (tiny(x)) return pred(r);
  return std::fma(-r, r, x) < 0 ? pred(r) : r;
}
template <class T>
T sqrt_up(T x) {
  if (x == 0) return T(0);
  const T r = std::sqrt(x);
  if (tiny(x)) return succ(r);
  return std::fma(-r, r, x) > 0 ? succ(r) : r;
}

}  // namespace rounding

/// Closed interval [lo, hi] with IEEE endpoints of type T and outward-rounded arithmetic:
/// every operation returns an interval containing the exact result for all members.
template <class T>
class BasicInterval {
 public:
  using value_type = T;

  constexpr BasicInterval() = default;
  constexpr BasicInterval(T v) : lo_(v), hi_(v) {  // NOLINT: points convert implicitly
    if (std::isnan(v)) throw IntervalError("NaN endpoint");
  }
  BasicInterval(T lo, T hi) : lo_(lo), hi_(hi) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi) throw IntervalError("invalid endpoints");
  }

  /// Exact when the integer is representable in T, otherwise one ulp each way.
  static BasicInterval from_integer(std::int64_t n) {
    const T t = static_cast<T>(n);
    constexpr int digits = std::numeric_limits<T>::digits;
    if constexpr (digits >= 63) {
      return BasicInterval(t);
    } else {
      if (n < (std::int64_t(1) << digits) && n > -(std::int64_t(1) << digits))
        return BasicInterval(t);
    }
    return {rounding::pred(t), rounding::succ(t)};
  }
  /// Enclosure of num / den.
  static BasicInterval ratio(std::int64_t num, std::int64_t den) {
    return from_integer(num) / from_integer(den);
  }

  T lo() const { return lo_; }
  T hi() const { return hi_; }
  T width() const { return rounding::sub_up(hi_, lo_); }
  T mid() const { return lo_ / 2 + hi_ / 2; }
  /// max |x| over the interval
  T mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }

  bool contains(T x) const { return lo_ <= x && x <= hi_; }
  bool contains(const BasicInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool intersects(const BasicInterval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
  bool certainly_positive() const { return lo_ > 0; }
  bool certainly_negative() const { return hi_ < 0; }

  friend BasicInterval operator+(const BasicInterval& a, const BasicInterval& b) {
    return {rounding::add_down(a.lo_, b.lo_), rounding::add_up(a.hi_, b.hi_)};
  }
  friend BasicInterval operator-(const BasicInterval& a, const BasicInterval& b) {
    return {rounding::sub_down(a.lo_, b.hi_), rounding::sub_up(a.hi_, b.lo_)};
  }
  friend BasicInterval operator-(const BasicInterval& a) { return {-a.hi_, -a.lo_}; }

  friend BasicInterval operator*(const BasicInterval& a, const BasicInterval& b) {
    using namespace rounding;
    if (a.lo_ >= 0 && b.lo_ >= 0)
      return {mul_down(a.lo_, b.lo_), mul_up(a.hi_, b.hi_)};
    const T ll = mul_down(a.lo_, b.lo_), lh = mul_down(a.lo_, b.hi_);
    const T hl = mul_down(a.hi_, b.lo_), hh = mul_down(a.hi_, b.hi_);
    const T ull = mul_up(a.lo_, b.lo_), ulh = mul_up(a.lo_, b.hi_);
    const T uhl = mul_up(a.hi_, b.lo_), uhh = mul_up(a.hi_, b.hi_);
    return {std::min({ll, lh, hl, hh}), std::max({ull, ulh, uhl, uhh})};
  }

  friend BasicInterval operator/(const BasicInterval& a, const BasicInterval& b) {
    using namespace rounding;
    if (b.lo_ <= 0 && b.hi_ >= 0) throw IntervalError("division by an interval containing 0");
    const T ll = div_down(a.lo_, b.lo_), lh = div_down(a.lo_, b.hi_);
    const T hl = div_down(a.hi_, b.lo_), hh = div_down(a.hi_, b.hi_);
    const T ull = div_up(a.lo_, b.lo_), ulh = div_up(a.lo_, b.hi_);
    const T uhl = div_up(a.hi_, b.lo_), uhh = div_up(a.hi_, b.hi_);
    return {std::min({ll, lh, hl, hh}), std::max({ull, ulh, uhl, uhh})};
  }

  BasicInterval& operator+=(const BasicInterval& o) { return *this = *this + o; }
  BasicInterval& operator-=(const BasicInterval& o) { return *this = *this - o; }
  BasicInterval& operator*=(const BasicInterval& o) { return *this = *this * o; }
  BasicInterval& operator/=(const BasicInterval& o) { return *this = *this / o; }

  /// Hull of two intervals.
  friend BasicInterval hull(const BasicInterval& a, const BasicInterval& b) {
    return {std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_)};
  }

  friend std::ostream& operator<<(std::ostream& os, const BasicInterval& x) {
    const auto flags = os.flags();
    const auto prec = os.precision();
    os << std::setprecision(std::numeric_limits<T>::max_digits10) << '[' << x.lo_ << ", "
       << x.hi_ << ']';
    os.flags(flags);
    os.precision(prec);
    return os;
  }

 private:
  T lo_ = 0;
  T hi_ = 0;
};

using Interval = BasicInterval<double>;
using LongInterval = BasicInterval<long double>;

template <class T>
BasicInterval<T> sqrt(const BasicInterval<T>& x) {
  if (x.lo() < 0) throw IntervalError("sqrt of an interval reaching below 0");
  return {rounding::sqrt_down(x.lo()), rounding::sqrt_up(x.hi())};
}

template <class T>
BasicInterval<T> pow_half(const BasicInterval<T>& x) {
  return sqrt(x);
}

namespace detail {

/// Enclosure of x^k for x >= 0 (x exact), k >= 0.
template <class T>
BasicInterval<T> nonnegative_power(const BasicInterval<T>& x, unsigned k) {
  BasicInterval<T> result(T(1));
  BasicInterval<T> base = x;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

}  // namespace detail

/// x^k for integer k; negative k requires 0 outside x.
template <class T>
BasicInterval<T> integer_pow(const BasicInterval<T>& x, int k) {
  if (k < 0) {
    if (x.lo() <= 0 && x.hi() >= 0) throw IntervalError("negative power of an interval containing 0");
    return BasicInterval<T>(T(1)) / integer_pow(x, -k);
  }
  if (k == 0) return BasicInterval<T>(T(1));
  const auto uk = static_cast<unsigned>(k);
  if (x.lo() >= 0) return detail::nonnegative_power(x, uk);
  if (x.hi() <= 0) {
    const auto p = detail::nonnegative_power(-x, uk);
    return (uk % 2u) ? -p : p;
  }
  // 0 inside x
  const auto neg = detail::nonnegative_power(BasicInterval<T>(T(0), -x.lo()), uk);
  const auto pos = detail::nonnegative_power(BasicInterval<T>(T(0), x.hi()), uk);
  if (uk % 2u) return {-neg.hi(), pos.hi()};
  return {T(0), std::max(neg.hi(), pos.hi())};
}

namespace detail {

/// atanh(z) for |z| <= 1/2 as a truncated odd series plus a rigorous remainder interval:
/// |sum_{k > K} z^{2k+1}/(2k+1)| <= |z|^{2K+3} / ((2K+3)(1 - z^2)).
template <class T>
BasicInterval<T> atanh_series(const BasicInterval<T>& z) {
  constexpr int terms = 24;
  if (z.mag() > T(0.5)) throw IntervalError("atanh series argument out of range");
  // Horner form of atanh(z)/z = sum z^{2k}/(2k+1): later terms are damped by z^2,
  // so the enclosure stays a few ulps wide.
  const auto z2 = z * z;
  auto poly = BasicInterval<T>::ratio(1, 2 * terms + 1);
  for (int k = terms - 1; k >= 0; --k) poly = BasicInterval<T>::ratio(1, 2 * k + 1) + z2 * poly;
  const auto sum = z * poly;
  const BasicInterval<T> zm(z.mag());
  const auto rest = integer_pow(zm, 2 * terms + 3) /
                    (BasicInterval<T>::from_integer(2 * terms + 3) *
                     (BasicInterval<T>(T(1)) - zm * zm));
  return sum + BasicInterval<T>(-rest.hi(), rest.hi());
}

template <class T>
const BasicInterval<T>& ln2() {
  // log 2 = 2 atanh(1/3)
  static const BasicInterval<T> value =
      BasicInterval<T>(T(2)) * atanh_series(BasicInterval<T>::ratio(1, 3));
  return value;
}

/// Enclosure of log(x) for a single positive finite x.
template <class T>
BasicInterval<T> log_point(T x) {
  if (!(x > 0) || !std::isfinite(x)) throw IntervalError("log of a non-positive value");
  int e = 0;
  T m = std::frexp(x, &e);  // x = m 2^e, m in [1/2, 1)
  if (m < T(0.70710678118654752440L)) {
    m *= 2;
    --e;
  }
  // m in [1/sqrt2, sqrt2): m - 1 is exact (Sterbenz) and log m = 2 atanh((m-1)/(m+1)).
  const BasicInterval<T> z = BasicInterval<T>(m - T(1)) /
                             BasicInterval<T>(rounding::add_down(m, T(1)), rounding::add_up(m, T(1)));
  const auto log_m = BasicInterval<T>(T(2)) * atanh_series(z);
  return BasicInterval<T>::from_integer(e) * ln2<T>() + log_m;
}

}  // namespace detail

template <class T>
BasicInterval<T> log(const BasicInterval<T>& x) {
  if (x.lo() <= 0) throw IntervalError("log of an interval reaching 0 or below");
  return {detail::log_point(x.lo()).lo(), detail::log_point(x.hi()).hi()};
}

}  // namespace euler_gauss

#endif  // EULER_GAUSS_INTERVAL_HPP
