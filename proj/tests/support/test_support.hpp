#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "locimage/polynomial.hpp"

namespace locimage::testing {

/// Variables x_0..x_{n-1} of the ring with n variables.
inline std::vector<Polynomial> ring(std::size_t n) {
  std::vector<Polynomial> vars;
  for (std::size_t i = 0; i < n; ++i) vars.push_back(Polynomial::variable(n, i));
  return vars;
}

inline Polynomial constant(std::size_t n, const GaussianRational& c) { return Polynomial::constant(n, c); }

/// Small random polynomials for property checks.
class PolyGen {
public:
  explicit PolyGen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  /// Coefficient from the grid {a + b i : a, b in [-2, 2]} / {1, 2}.
  GaussianRational coeff(bool allow_imaginary = true) {
    const long den = uniform(1, 2);
    GaussianRational re = GaussianRational::from_fraction(uniform(-2, 2), den);
    if (!allow_imaginary) return re;
    return re + GaussianRational::from_fraction(uniform(-2, 2), den) * GaussianRational::i();
  }

  Polynomial poly(std::size_t nvars, unsigned max_degree, unsigned max_terms, bool allow_imaginary = true) {
    std::vector<Term> terms;
    const int count = uniform(0, static_cast<int>(max_terms));
    for (int t = 0; t < count; ++t) {
      Monomial m(nvars);
      unsigned budget = static_cast<unsigned>(uniform(0, static_cast<int>(max_degree)));
      for (std::size_t i = 0; i < nvars && budget > 0; ++i) {
        const unsigned e = static_cast<unsigned>(uniform(0, static_cast<int>(budget)));
        m[i] = e;
        budget -= e;
      }
      terms.push_back(Term{m, coeff(allow_imaginary)});
    }
    return Polynomial(nvars, std::move(terms));
  }

  Polynomial nonzero_poly(std::size_t nvars, unsigned max_degree, unsigned max_terms) {
    for (;;) {
      Polynomial p = poly(nvars, max_degree, max_terms);
      if (!p.is_zero()) return p;
    }
  }

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

}  // namespace locimage::testing
