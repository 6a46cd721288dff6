#ifndef EULER_GAUSS_BILINEAR_HPP
#define EULER_GAUSS_BILINEAR_HPP

#include <algorithm>
#include <complex>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "euler_gauss/mode.hpp"
#include "euler_gauss/spectral_field.hpp"

namespace euler_gauss {

/// How a bilinear product is evaluated. Both routes produce the same sharp-cutoff result.
enum class Evaluation { Auto, Direct, Fft };

/// Output size of iterated forms: keep the input truncation, or every generated mode.
enum class Truncation { Galerkin, Grow };

template <class Scalar>
struct BasicVelocityField {
  BasicSpectralField<Scalar> u1;
  BasicSpectralField<Scalar> u2;
};
using VelocityField = BasicVelocityField<double>;

/// U[Omega]: u1_n = -n2 / (i |n|^2) c_n, u2_n = n1 / (i |n|^2) c_n, zero at n = 0.
template <class Scalar>
BasicVelocityField<Scalar> biot_savart(const BasicSpectralField<Scalar>& omega) {
  using C = std::complex<Scalar>;
  const int n = omega.truncation();
  BasicVelocityField<Scalar> u{BasicSpectralField<Scalar>(n), BasicSpectralField<Scalar>(n)};
  omega.for_each_nonzero([&](Mode m, const C& c) {
    if (m.is_zero()) return;
    const Scalar inv = Scalar(1) / Scalar(m.norm_sq());
    // 1/i = -i
    u.u1.at(m) = C(0, Scalar(m.n2) * inv) * c;
    u.u2.at(m) = C(0, -Scalar(m.n1) * inv) * c;
  });
  return u;
}

/// max_n |n1 u1_n + n2 u2_n|
template <class Scalar>
Scalar divergence_defect(const BasicVelocityField<Scalar>& u) {
  Scalar d(0);
  const int n = u.u1.truncation();
  for (int i = -n; i <= n; ++i)
    for (int j = -n; j <= n; ++j) {
      const Mode m{i, j};
      d = std::max(d, std::abs(Scalar(i) * u.u1[m] + Scalar(j) * u.u2[m]));
    }
  return d;
}

/// i (n1 u2_n - n2 u1_n)
template <class Scalar>
BasicSpectralField<Scalar> curl(const BasicVelocityField<Scalar>& u) {
  using C = std::complex<Scalar>;
  const int n = u.u1.truncation();
  BasicSpectralField<Scalar> w(n);
  for (int i = -n; i <= n; ++i)
    for (int j = -n; j <= n; ++j) {
      const Mode m{i, j};
      w.at(m) = C(0, 1) * (Scalar(i) * u.u2[m] - Scalar(j) * u.u1[m]);
    }
  return w;
}

namespace detail {

/// Smallest length >= n whose only prime factors are 2, 3 and 5.
inline int smooth_fft_size(int n) {
  for (int m = std::max(n, 1);; ++m) {
    int r = m;
    for (int p : {2, 3, 5})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

template <class Scalar>
Eigen::FFT<Scalar>& thread_fft() {
  thread_local Eigen::FFT<Scalar> fft;
  fft.SetFlag(Eigen::FFT<Scalar>::Unscaled);
  return fft;
}

/// In-place unscaled 2D transform of an L x L complex matrix.
template <class Scalar>
void fft2(Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>& m, bool inverse) {
  using C = std::complex<Scalar>;
  auto& fft = thread_fft<Scalar>();
  const Eigen::Index l = m.rows();
  std::vector<C> in(l), out(l);
  for (Eigen::Index j = 0; j < l; ++j) {
    std::copy(m.col(j).data(), m.col(j).data() + l, in.begin());
    inverse ? fft.inv(out.data(), in.data(), l) : fft.fwd(out.data(), in.data(), l);
    std::copy(out.begin(), out.end(), m.col(j).data());
  }
  for (Eigen::Index i = 0; i < l; ++i) {
    for (Eigen::Index j = 0; j < l; ++j) in[j] = m(i, j);
    inverse ? fft.inv(out.data(), in.data(), l) : fft.fwd(out.data(), in.data(), l);
    for (Eigen::Index j = 0; j < l; ++j) m(i, j) = out[j];
  }
}

inline Eigen::Index wrap(int k, int l) { return static_cast<Eigen::Index>(((k % l) + l) % l); }

/// Physical values of the packed real pair (f, g) -> f + i g on an L x L grid, where
/// f_n = mf(n) c_n and g_n = mg(n) c_n.
template <class Scalar, class MF, class MG>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> physical_pair(
    const BasicSpectralField<Scalar>& c, int l, MF mf, MG mg) {
  using C = std::complex<Scalar>;
  Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic> m =
      Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>::Zero(l, l);
  c.for_each_nonzero([&](Mode n, const C& v) {
    m(wrap(n.n1, l), wrap(n.n2, l)) = mf(n) * v + C(0, 1) * (mg(n) * v);
  });
  fft2<Scalar>(m, true);
  return m;
}

template <class Scalar>
bool lexicographically_less(const BasicSpectralField<Scalar>& a,
                            const BasicSpectralField<Scalar>& b) {
  if (a.truncation() != b.truncation()) return a.truncation() < b.truncation();
  const auto* pa = a.coeffs().data();
  const auto* pb = b.coeffs().data();
  for (Eigen::Index k = 0; k < a.coeffs().size(); ++k) {
    if (pa[k].real() != pb[k].real()) return pa[k].real() < pb[k].real();
    if (pa[k].imag() != pb[k].imag()) return pa[k].imag() < pb[k].imag();
  }
  return false;
}

/// Copies the upper half-plane onto the lower one: c_{-n} = conj(c_n), c_0 = 0.
template <class Scalar>
void enforce_hermitian(BasicSpectralField<Scalar>& f) {
  const int n = f.truncation();
  for (int i = -n; i <= n; ++i)
    for (int j = -n; j <= n; ++j) {
      const Mode m{i, j};
      if (m.is_zero()) f.at(m) = 0;
      else if (m.in_upper_half()) f.at(-m) = std::conj(f[m]);
    }
}

}  // namespace detail

/// Sharp-cutoff convolution B(a,b)^(n) = 1/2 sum_{k+m=n} m.k^perp (1/|k|^2 - 1/|m|^2) a_k b_m
/// for |n_i| <= out_truncation, summed pair by pair. The interaction coefficient is
/// formed from exact integers, so collinear and equal-norm pairs contribute exact zeros.
template <class Scalar>
BasicSpectralField<Scalar> bilinear_direct(const BasicSpectralField<Scalar>& a_in,
                                           const BasicSpectralField<Scalar>& b_in,
                                           int out_truncation) {
  using C = std::complex<Scalar>;
  const bool swap = detail::lexicographically_less(b_in, a_in);
  const auto& a = swap ? b_in : a_in;
  const auto& b = swap ? a_in : b_in;

  std::vector<std::pair<Mode, C>> na, nb;
  a.for_each_nonzero([&](Mode m, const C& v) { if (!m.is_zero()) na.emplace_back(m, v); });
  b.for_each_nonzero([&](Mode m, const C& v) { if (!m.is_zero()) nb.emplace_back(m, v); });

  BasicSpectralField<Scalar> out(out_truncation);
  for (const auto& [k, ak] : na) {
    const std::int64_t k2 = k.norm_sq();
    for (const auto& [m, bm] : nb) {
      const Mode n = k + m;
      if (n.max_abs() > out_truncation || n.is_zero() || !n.in_upper_half()) continue;
      const std::int64_t m2 = m.norm_sq();
      const std::int64_t cr = cross(m, k);
      if (cr == 0 || k2 == m2) continue;
      const Scalar coeff = Scalar(cr * (m2 - k2)) / Scalar(2 * k2 * m2);
      out.at(n) += coeff * (ak * bm);
    }
  }
  detail::enforce_hermitian(out);
  return out;
}

/// Same product through zero-padded FFTs. The padded length exceeds
/// Na + Nb + out_truncation, so no aliased frequency reaches a retained mode.
template <class Scalar>
BasicSpectralField<Scalar> bilinear_fft(const BasicSpectralField<Scalar>& a,
                                        const BasicSpectralField<Scalar>& b,
                                        int out_truncation) {
  using C = std::complex<Scalar>;
  using Mat = Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>;
  const int l =
      detail::smooth_fft_size(a.truncation() + b.truncation() + out_truncation + 1);

  auto inv_sq = [](Mode n) { return n.is_zero() ? Scalar(0) : Scalar(1) / Scalar(n.norm_sq()); };
  // (u1 + i u2) and (d1 + i d2) packed as single complex transforms.
  auto velocity = [&](const BasicSpectralField<Scalar>& f) {
    return detail::physical_pair<Scalar>(
        f, l, [&](Mode n) { return C(0, Scalar(n.n2) * inv_sq(n)); },
        [&](Mode n) { return C(0, -Scalar(n.n1) * inv_sq(n)); });
  };
  auto gradient = [&](const BasicSpectralField<Scalar>& f) {
    return detail::physical_pair<Scalar>(f, l, [](Mode n) { return C(0, Scalar(n.n1)); },
                                         [](Mode n) { return C(0, Scalar(n.n2)); });
  };
  auto advect = [](const Mat& u, const Mat& g) {
    return (u.real().array() * g.real().array() + u.imag().array() * g.imag().array()).eval();
  };

  Mat prod(l, l);
  if (&a == &b || (a.truncation() == b.truncation() && a.coeffs() == b.coeffs())) {
    prod = advect(velocity(a), gradient(a)).template cast<C>().matrix();
  } else {
    const auto p1 = advect(velocity(a), gradient(b));
    const auto p2 = advect(velocity(b), gradient(a));
    prod = (Scalar(0.5) * (p1 + p2)).template cast<C>().matrix();
  }
  detail::fft2<Scalar>(prod, false);

  const Scalar scale = Scalar(1) / Scalar(l * l);
  BasicSpectralField<Scalar> out(out_truncation);
  for (int i = -out_truncation; i <= out_truncation; ++i)
    for (int j = -out_truncation; j <= out_truncation; ++j)
      out.at({i, j}) = scale * prod(detail::wrap(i, l), detail::wrap(j, l));
  for (int i = -out_truncation; i <= out_truncation; ++i)
    for (int j = -out_truncation; j <= out_truncation; ++j) {
      const Mode m{i, j};
      if (m.is_zero() || !m.in_upper_half()) continue;
      const C v = Scalar(0.5) * (out[m] + std::conj(out[-m]));
      out.set_pair(m, v);
    }
  out.at({0, 0}) = 0;
  return out;
}

/// Symmetric form B(a,b) = 1/2 U[a].grad b + 1/2 U[b].grad a, projected to |n_i| <= out_truncation.
template <class Scalar>
BasicSpectralField<Scalar> bilinear(const BasicSpectralField<Scalar>& a,
                                    const BasicSpectralField<Scalar>& b, int out_truncation,
                                    Evaluation eval = Evaluation::Auto) {
  if (eval == Evaluation::Auto) {
    const double pairs = double(a.nonzero_count()) * double(b.nonzero_count());
    const int l = detail::smooth_fft_size(a.truncation() + b.truncation() + out_truncation + 1);
    eval = pairs <= 8.0 * l * l ? Evaluation::Direct : Evaluation::Fft;
  }
  return eval == Evaluation::Direct ? bilinear_direct(a, b, out_truncation)
                                    : bilinear_fft(a, b, out_truncation);
}

/// Grow-mode product: inputs trimmed to their occupied square, output keeps every generated mode.
template <class Scalar>
BasicSpectralField<Scalar> bilinear_grow(const BasicSpectralField<Scalar>& a,
                                         const BasicSpectralField<Scalar>& b,
                                         Evaluation eval = Evaluation::Auto) {
  const int ra = a.occupied_radius();
  const int rb = b.occupied_radius();
  return bilinear(a.resized(ra), b.resized(rb), ra + rb, eval);
}

template <class Scalar>
BasicSpectralField<Scalar> apply_form(const BasicSpectralField<Scalar>& a,
                                      const BasicSpectralField<Scalar>& b, Truncation t,
                                      int galerkin_truncation, Evaluation eval) {
  return t == Truncation::Grow ? bilinear_grow(a, b, eval)
                               : bilinear(a, b, galerkin_truncation, eval);
}

/// B1, B2, B3, B3', B3~ of one field, computed once and shared.
template <class Scalar>
struct BasicIteratedForms {
  BasicSpectralField<Scalar> b1;
  BasicSpectralField<Scalar> b2;
  BasicSpectralField<Scalar> b3;
  BasicSpectralField<Scalar> b3_prime;
  BasicSpectralField<Scalar> b3_tilde;
};
using IteratedForms = BasicIteratedForms<double>;

template <class Scalar>
BasicSpectralField<Scalar> b1(const BasicSpectralField<Scalar>& w,
                              Truncation t = Truncation::Galerkin,
                              Evaluation eval = Evaluation::Auto) {
  return apply_form(w, w, t, w.truncation(), eval);
}

template <class Scalar>
BasicSpectralField<Scalar> b2(const BasicSpectralField<Scalar>& w,
                              Truncation t = Truncation::Galerkin,
                              Evaluation eval = Evaluation::Auto) {
  return apply_form(w, b1(w, t, eval), t, w.truncation(), eval);
}

template <class Scalar>
BasicIteratedForms<Scalar> iterated_forms(const BasicSpectralField<Scalar>& w,
                                          Truncation t = Truncation::Galerkin,
                                          Evaluation eval = Evaluation::Auto) {
  const int n = w.truncation();
  BasicIteratedForms<Scalar> f;
  f.b1 = apply_form(w, w, t, n, eval);
  f.b2 = apply_form(w, f.b1, t, n, eval);
  const auto b11 = apply_form(f.b1, f.b1, t, n, eval);
  const auto b02 = apply_form(w, f.b2, t, n, eval);
  f.b3 = b11.resized(std::max(b11.truncation(), b02.truncation()));
  f.b3.axpy(Scalar(2), b02);
  f.b3_prime = apply_form(f.b1, f.b2, t, n, eval);
  f.b3_tilde = apply_form(f.b2, f.b2, t, n, eval);
  return f;
}

template <class Scalar>
BasicSpectralField<Scalar> b3(const BasicSpectralField<Scalar>& w,
                              Truncation t = Truncation::Galerkin,
                              Evaluation eval = Evaluation::Auto) {
  return iterated_forms(w, t, eval).b3;
}

template <class Scalar>
BasicSpectralField<Scalar> b3_prime(const BasicSpectralField<Scalar>& w,
                                    Truncation t = Truncation::Galerkin,
                                    Evaluation eval = Evaluation::Auto) {
  const int n = w.truncation();
  const auto f1 = b1(w, t, eval);
  return apply_form(f1, apply_form(w, f1, t, n, eval), t, n, eval);  // B(B1, B2)
}

template <class Scalar>
BasicSpectralField<Scalar> b3_tilde(const BasicSpectralField<Scalar>& w,
                                    Truncation t = Truncation::Galerkin,
                                    Evaluation eval = Evaluation::Auto) {
  const auto f2 = b2(w, t, eval);
  return apply_form(f2, f2, t, w.truncation(), eval);
}

}  // namespace euler_gauss

#endif  // EULER_GAUSS_BILINEAR_HPP
