#ifndef EULER_GAUSS_SPECTRAL_FIELD_HPP
#define EULER_GAUSS_SPECTRAL_FIELD_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <ostream>
#include <stdexcept>

#include <Eigen/Dense>

#include "euler_gauss/mode.hpp"

namespace euler_gauss {

/// Truncated Fourier coefficients c_n, |n1|,|n2| <= N, of a real field
/// Omega(x) = sum_n c_n e^{i n.x}. No 2 pi prefactor anywhere.
///
/// Storage is a dense (2N+1) x (2N+1) Eigen matrix indexed by (n1 + N, n2 + N); both
/// halves of the Hermitian pair are stored.
template <class Scalar>
class BasicSpectralField {
 public:
  using RealScalar = Scalar;
  using Complex = std::complex<Scalar>;
  using Storage = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

  explicit BasicSpectralField(int truncation = 0) : truncation_(truncation) {
    if (truncation < 0) throw std::invalid_argument("negative truncation");
    coeffs_ = Storage::Zero(2 * truncation + 1, 2 * truncation + 1);
  }

  int truncation() const { return truncation_; }
  int side() const { return 2 * truncation_ + 1; }
  bool contains(Mode n) const { return n.max_abs() <= truncation_; }

  Complex operator[](Mode n) const {
    return contains(n) ? coeffs_(n.n1 + truncation_, n.n2 + truncation_) : Complex(0);
  }
  Complex& at(Mode n) {
    if (!contains(n)) throw std::out_of_range("mode outside truncation");
    return coeffs_(n.n1 + truncation_, n.n2 + truncation_);
  }
  /// Sets c_n = v and c_{-n} = conj(v).
  void set_pair(Mode n, Complex v) {
    at(n) = v;
    at(-n) = std::conj(v);
  }

  Mode mode_at(Eigen::Index i, Eigen::Index j) const {
    return {static_cast<int>(i) - truncation_, static_cast<int>(j) - truncation_};
  }

  const Storage& coeffs() const { return coeffs_; }
  Storage& coeffs() { return coeffs_; }

  template <class F>
  void for_each_nonzero(F&& f) const {
    for (Eigen::Index j = 0; j < coeffs_.cols(); ++j)
      for (Eigen::Index i = 0; i < coeffs_.rows(); ++i)
        if (coeffs_(i, j) != Complex(0)) f(mode_at(i, j), coeffs_(i, j));
  }

  std::size_t nonzero_count() const {
    std::size_t c = 0;
    for (Eigen::Index j = 0; j < coeffs_.cols(); ++j)
      for (Eigen::Index i = 0; i < coeffs_.rows(); ++i) c += coeffs_(i, j) != Complex(0);
    return c;
  }
  bool is_zero() const { return nonzero_count() == 0; }

  /// Largest |n_i| carrying a nonzero coefficient.
  int occupied_radius() const {
    int r = 0;
    for_each_nonzero([&](Mode n, const Complex&) { r = std::max(r, n.max_abs()); });
    return r;
  }

  /// Copy embedded in (or sharply projected onto) truncation `n`.
  BasicSpectralField resized(int n) const {
    BasicSpectralField out(n);
    const int m = std::min(n, truncation_);
    out.coeffs_.block(n - m, n - m, 2 * m + 1, 2 * m + 1) =
        coeffs_.block(truncation_ - m, truncation_ - m, 2 * m + 1, 2 * m + 1);
    return out;
  }

  /// max |c_{-n} - conj(c_n)| over all modes, and |c_0|.
  Scalar hermitian_defect() const {
    using std::abs;
    Scalar d = abs(coeffs_(truncation_, truncation_));
    for (int i = -truncation_; i <= truncation_; ++i)
      for (int j = -truncation_; j <= truncation_; ++j) {
        const Mode n{i, j};
        d = std::max(d, Scalar(abs((*this)[-n] - std::conj((*this)[n]))));
      }
    return d;
  }
  bool is_valid(Scalar tol = Scalar(0)) const { return hermitian_defect() <= tol; }

  BasicSpectralField& operator+=(const BasicSpectralField& o) { return axpy(Scalar(1), o); }
  BasicSpectralField& operator-=(const BasicSpectralField& o) { return axpy(Scalar(-1), o); }
  BasicSpectralField& operator*=(Scalar f) {
    coeffs_ *= Complex(f);
    return *this;
  }

  /// this += f * o, where o may have a different truncation (modes outside are dropped).
  BasicSpectralField& axpy(Scalar f, const BasicSpectralField& o) {
    const int m = std::min(truncation_, o.truncation_);
    coeffs_.block(truncation_ - m, truncation_ - m, 2 * m + 1, 2 * m + 1) +=
        Complex(f) * o.coeffs_.block(o.truncation_ - m, o.truncation_ - m, 2 * m + 1, 2 * m + 1);
    return *this;
  }

  friend BasicSpectralField operator+(BasicSpectralField a, const BasicSpectralField& b) {
    return a += b;
  }
  friend BasicSpectralField operator-(BasicSpectralField a, const BasicSpectralField& b) {
    return a -= b;
  }
  friend BasicSpectralField operator*(Scalar f, BasicSpectralField a) { return a *= f; }

 private:
  int truncation_ = 0;
  Storage coeffs_;
};

using SpectralField = BasicSpectralField<double>;

/// <n>^{2s} = (1 + |n|^2)^s
inline double sobolev_weight(Mode n, double s) {
  return s == 0.0 ? 1.0 : std::pow(static_cast<double>(n.bracket_sq()), s);
}

/// Re sum_n <n>^{2s} f_n conj(g_n). For Hermitian fields the imaginary part vanishes.
template <class Scalar>
Scalar inner_product(const BasicSpectralField<Scalar>& f, const BasicSpectralField<Scalar>& g,
                     double s) {
  const int m = std::min(f.truncation(), g.truncation());
  Scalar acc(0);
  for (int j = -m; j <= m; ++j)
    for (int i = -m; i <= m; ++i) {
      const Mode n{i, j};
      const auto fn = f[n];
      const auto gn = g[n];
      if (fn == decltype(fn)(0) || gn == decltype(gn)(0)) continue;
      acc += Scalar(sobolev_weight(n, s)) * (fn.real() * gn.real() + fn.imag() * gn.imag());
    }
  return acc;
}

/// sum_{n != 0} <n>^{2s} |c_n|^2
template <class Scalar>
Scalar sobolev_norm_sq(const BasicSpectralField<Scalar>& f, double s) {
  return inner_product(f, f, s);
}

/// sum |c_n|^2 / |n|^2, the kinetic energy up to a constant.
template <class Scalar>
Scalar energy(const BasicSpectralField<Scalar>& f) {
  Scalar acc(0);
  f.for_each_nonzero([&](Mode n, const auto& c) {
    if (!n.is_zero()) acc += std::norm(c) / Scalar(n.norm_sq());
  });
  return acc;
}

template <class Scalar>
Scalar enstrophy(const BasicSpectralField<Scalar>& f) {
  return sobolev_norm_sq(f, 0.0);
}

/// Debug dump, one row `n1,n2,re,im` per nonzero coefficient.
template <class Scalar>
void write_csv(std::ostream& os, const BasicSpectralField<Scalar>& f) {
  os << "n1,n2,re,im\n";
  f.for_each_nonzero([&](Mode n, const auto& c) {
    os << n.n1 << ',' << n.n2 << ',' << c.real() << ',' << c.imag() << '\n';
  });
}

}  // namespace euler_gauss

#endif  // EULER_GAUSS_SPECTRAL_FIELD_HPP
