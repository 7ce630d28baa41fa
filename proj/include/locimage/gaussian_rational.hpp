#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace locimage {

using Rational = mpq_class;

/// Element of Q(i). Both parts are kept in lowest terms.
class GaussianRational {
public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im = 0);

  static GaussianRational i() { return GaussianRational(0, 1); }
  static GaussianRational from_fraction(long num, long den);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  /// Both parts have denominator 1.
  bool is_gaussian_integer() const;

  GaussianRational conj() const { return {re_, -im_}; }
  /// |z|^2, exact.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  /// Division by zero throws Error(ZeroInput).
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  /// Exact serialization: "a/b" when real, "(a/b)+(c/d)i" otherwise.
  std::string to_exact_string() const;

private:
  Rational re_{0};
  Rational im_{0};
};

/// Strict weak order on Q(i) (real part, then imaginary part); for
/// deterministic sorting only, not a field order.
bool lexicographic_less(const GaussianRational& a, const GaussianRational& b);

}  // namespace locimage
