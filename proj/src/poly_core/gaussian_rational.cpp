#include "locimage/gaussian_rational.hpp"

#include "locimage/error.hpp"

namespace locimage {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::NotDivisible: return "not_divisible";
    case ErrorCode::IndexOutOfRange: return "index_out_of_range";
    case ErrorCode::UndefinedGcd: return "undefined_gcd";
    case ErrorCode::ZeroInput: return "zero_input";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::ConstantMap: return "constant_map";
    case ErrorCode::NotThroughOrigin: return "not_through_origin";
    case ErrorCode::SyntaxError: return "syntax_error";
    case ErrorCode::UnknownVariable: return "unknown_variable";
    case ErrorCode::SamplingFailed: return "sampling_failed";
    case ErrorCode::ImageContainer: return "image_container";
    case ErrorCode::Io: return "io_error";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

GaussianRational::GaussianRational(Rational re, Rational im)
    : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::from_fraction(long num, long den) {
  if (den == 0) throw Error(ErrorCode::ZeroInput, "zero denominator");
  Rational q(num, den);
  return GaussianRational(q);
}

bool GaussianRational::is_gaussian_integer() const {
  return re_.get_den() == 1 && im_.get_den() == 1;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw Error(ErrorCode::ZeroInput, "division by zero in Q(i)");
  if (o.is_real()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  const Rational n = o.norm();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::string GaussianRational::to_exact_string() const {
  auto frac = [](const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
  };
  if (is_real()) return frac(re_);
  return "(" + frac(re_) + ")+(" + frac(im_) + ")i";
}

bool lexicographic_less(const GaussianRational& a, const GaussianRational& b) {
  if (a.re() != b.re()) return a.re() < b.re();
  return a.im() < b.im();
}

}  // namespace locimage
