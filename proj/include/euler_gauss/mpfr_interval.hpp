#ifndef EULER_GAUSS_MPFR_INTERVAL_HPP
#define EULER_GAUSS_MPFR_INTERVAL_HPP

#include <cstdint>
#include <ostream>
#include <type_traits>

#include <mpfr.h>

#include "euler_gauss/interval.hpp"

namespace euler_gauss {

/// Interval with multi-precision endpoints and true directed rounding (every MPFR
/// operation, log included, is correctly rounded in the requested direction).
/// Used as the high-precision reference path of the certificate.
class MpfrInterval {
 public:
  static constexpr mpfr_prec_t kPrecision = 192;

  MpfrInterval() : MpfrInterval(0.0L) {}
  explicit MpfrInterval(long double v) {
    init();
    mpfr_set_ld(lo_, v, MPFR_RNDD);
    mpfr_set_ld(hi_, v, MPFR_RNDU);
  }
  MpfrInterval(const MpfrInterval& o) {
    init();
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  MpfrInterval& operator=(const MpfrInterval& o) {
    if (this != &o) {
      mpfr_set(lo_, o.lo_, MPFR_RNDD);
      mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
  }
  ~MpfrInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  static MpfrInterval from_integer(std::int64_t n) {
    MpfrInterval r;
    mpfr_set_sj(r.lo_, n, MPFR_RNDD);
    mpfr_set_sj(r.hi_, n, MPFR_RNDU);
    return r;
  }
  static MpfrInterval ratio(std::int64_t num, std::int64_t den) {
    return from_integer(num) / from_integer(den);
  }

  /// Outward conversion to long double endpoints.
  LongInterval to_long() const {
    return {mpfr_get_ld(lo_, MPFR_RNDD), mpfr_get_ld(hi_, MPFR_RNDU)};
  }

  friend MpfrInterval operator+(const MpfrInterval& a, const MpfrInterval& b) {
    MpfrInterval r;
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }
  friend MpfrInterval operator-(const MpfrInterval& a, const MpfrInterval& b) {
    MpfrInterval r;
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
  }
  friend MpfrInterval operator*(const MpfrInterval& a, const MpfrInterval& b) {
    return corners(a, b, mpfr_mul);
  }
  friend MpfrInterval operator/(const MpfrInterval& a, const MpfrInterval& b) {
    if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0)
      throw IntervalError("division by an interval containing 0");
    return corners(a, b, mpfr_div);
  }

  friend MpfrInterval log(const MpfrInterval& x) {
    if (mpfr_sgn(x.lo_) <= 0) throw IntervalError("log of an interval reaching 0 or below");
    MpfrInterval r;
    mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
    return r;
  }
  friend MpfrInterval sqrt(const MpfrInterval& x) {
    if (mpfr_sgn(x.lo_) < 0) throw IntervalError("sqrt of an interval reaching below 0");
    MpfrInterval r;
    mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
    return r;
  }
  /// x^k for x >= 0.
  friend MpfrInterval integer_pow(const MpfrInterval& x, int k) {
    if (mpfr_sgn(x.lo_) < 0) throw IntervalError("integer_pow needs a nonnegative interval here");
    MpfrInterval r;
    mpfr_pow_si(r.lo_, x.lo_, k, k >= 0 ? MPFR_RNDD : MPFR_RNDU);
    mpfr_pow_si(r.hi_, x.hi_, k, k >= 0 ? MPFR_RNDU : MPFR_RNDD);
    if (k < 0) mpfr_swap(r.lo_, r.hi_);
    return r;
  }

  friend std::ostream& operator<<(std::ostream& os, const MpfrInterval& x) {
    return os << x.to_long();
  }

 private:
  void init() {
    mpfr_init2(lo_, kPrecision);
    mpfr_init2(hi_, kPrecision);
  }

  using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

  static MpfrInterval corners(const MpfrInterval& a, const MpfrInterval& b, BinaryOp op) {
    MpfrInterval r;
    mpfr_t t;
    mpfr_init2(t, kPrecision);
    bool first = true;
    for (mpfr_srcptr x : {a.lo_, a.hi_})
      for (mpfr_srcptr y : {b.lo_, b.hi_}) {
        op(t, x, y, MPFR_RNDD);
        if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
        op(t, x, y, MPFR_RNDU);
        if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
        first = false;
      }
    mpfr_clear(t);
    return r;
  }

  mpfr_t lo_;
  mpfr_t hi_;
};

namespace detail {
template <class S>
struct is_interval;
template <>
struct is_interval<MpfrInterval> : std::true_type {};
}  // namespace detail

}  // namespace euler_gauss

#endif  // EULER_GAUSS_MPFR_INTERVAL_HPP
