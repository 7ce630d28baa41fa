#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "locimage/gaussian_rational.hpp"

namespace locimage {

using Complex = std::complex<double>;

/// Dense exponent vector; its length is the variable count of the ring.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  Monomial(std::initializer_list<std::uint32_t> exps) : exps_(exps) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  std::span<const std::uint32_t> exponents() const { return exps_; }

  std::uint64_t total_degree() const;
  bool is_one() const;

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Requires `other` to divide this monomial.
  Monomial operator/(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime_with(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

private:
  std::vector<std::uint32_t> exps_;
};

/// Graded reverse lexicographic comparison, x_0 > x_1 > ... ; returns
/// negative, zero or positive.
int degrevlex_compare(const Monomial& a, const Monomial& b);

/// Total degree with a distinguished value for the zero polynomial.
class Degree {
public:
  static Degree minus_infinity() { return Degree(); }
  static Degree of(std::uint64_t d) { return Degree(d); }

  bool is_minus_infinity() const { return minus_inf_; }
  /// Throws Error(ZeroInput) on the minus-infinity sentinel.
  std::uint64_t value() const;

  friend bool operator==(const Degree&, const Degree&) = default;
  friend bool operator<(const Degree& a, const Degree& b) {
    if (a.minus_inf_ || b.minus_inf_) return a.minus_inf_ && !b.minus_inf_;
    return a.d_ < b.d_;
  }

private:
  Degree() = default;
  explicit Degree(std::uint64_t d) : minus_inf_(false), d_(d) {}
  bool minus_inf_ = true;
  std::uint64_t d_ = 0;
};

struct Term {
  Monomial monomial;
  GaussianRational coeff;
};

/// Multivariate polynomial over Q(i). Terms are kept in descending
/// degrevlex order with no zero coefficients, so equal polynomials have
/// identical representations.
class Polynomial {
public:
  explicit Polynomial(std::size_t nvars = 1);
  /// Accepts terms in any order; merges like terms and drops zeros.
  Polynomial(std::size_t nvars, std::vector<Term> terms);

  static Polynomial constant(std::size_t nvars, const GaussianRational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial monomial(const Monomial& m, const GaussianRational& c = 1);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Degree degree() const;
  /// Highest power of variable `var` present; 0 for constants and zero.
  std::uint32_t degree_in(std::size_t var) const;
  bool involves(std::size_t var) const { return degree_in(var) > 0; }

  /// Coefficient of the constant monomial (the value at the origin).
  GaussianRational constant_term() const;
  bool vanishes_at_origin() const { return constant_term().is_zero(); }
  /// Leading term under the canonical order; requires nonzero.
  const Term& leading_term() const;
  const GaussianRational& leading_coeff() const { return leading_term().coeff; }
  /// Scaled to leading coefficient 1; zero stays zero.
  Polynomial monic() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& q);
  Polynomial& operator-=(const Polynomial& q);
  Polynomial& operator*=(const Polynomial& q);
  Polynomial& operator*=(const GaussianRational& c);

  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(Polynomial p, const GaussianRational& c) { return p *= c; }
  friend Polynomial operator*(const GaussianRational& c, Polynomial p) { return p *= c; }

  Polynomial pow(unsigned e) const;
  Polynomial mul_monomial(const Monomial& m, const GaussianRational& c) const;

  /// Coefficient of var^k, viewing this as a polynomial in `var` over the
  /// remaining variables (same ring, `var` absent from the result).
  Polynomial coefficient_in(std::size_t var, std::uint32_t k) const;

  /// Complex evaluation; terms summed in canonical order.
  Complex evaluate(std::span<const Complex> point) const;

  /// Re-embed into a ring with `new_nvars` variables: variable i goes to
  /// position `positions[i]`.
  Polynomial embed(std::size_t new_nvars, std::span<const std::size_t> positions) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

private:
  void check_same_ring(const Polynomial& q) const;

  std::size_t nvars_;
  std::vector<Term> terms_;
};

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial mul(const Polynomial& p, const Polynomial& q);
/// Returns r with q*r == p; throws Error(NotDivisible) otherwise.
Polynomial exact_divide(const Polynomial& p, const Polynomial& q);
/// Returns the quotient when q divides p exactly.
std::optional<Polynomial> try_exact_divide(const Polynomial& p, const Polynomial& q);
Polynomial partial_derivative(const Polynomial& p, std::size_t var);
Complex evaluate(const Polynomial& p, std::span<const Complex> point);

/// Replace variable j of p by images[j]; all images share one ring.
Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images);

/// Evaluation-only form with coefficients rounded to double once.
class CompiledPolynomial {
public:
  explicit CompiledPolynomial(const Polynomial& p);
  std::size_t nvars() const { return nvars_; }
  Complex operator()(std::span<const Complex> point) const;

private:
  std::size_t nvars_;
  std::vector<Complex> coeffs_;
  std::vector<std::uint32_t> exps_;  // row-major, one row per term
};

}  // namespace locimage
