#include "locimage/algebra.hpp"

namespace locimage {

GcdDecomposition decompose(const MapGerm& germ) {
  GcdDecomposition dec{
      .h = gcd(germ.f(), germ.g()),
      .f_hat = Polynomial(germ.n()),
      .g_hat = Polynomial(germ.n()),
  };
  dec.f_hat = exact_divide(germ.f(), dec.h);
  dec.g_hat = exact_divide(germ.g(), dec.h);
  dec.f_hat_is_unit = !dec.f_hat.vanishes_at_origin();
  dec.g_hat_is_unit = !dec.g_hat.vanishes_at_origin();
  return dec;
}

// Two hypersurfaces through 0 meet in dimension >= n-2 everywhere, and the
// intersection germ jumps to n-1 exactly when they share a component
// through 0, i.e. when h(0) = 0.
IntersectionCase intersection_dimension_case(const MapGerm&, const GcdDecomposition& dec) {
  return dec.h.vanishes_at_origin() ? IntersectionCase::CodimOne : IntersectionCase::CodimTwo;
}

std::optional<JacobianMinor> first_nonzero_jacobian_minor(const MapGerm& germ) {
  const std::size_t n = germ.n();
  std::vector<Polynomial> df, dg;
  df.reserve(n);
  dg.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    df.push_back(partial_derivative(germ.f(), k));
    dg.push_back(partial_derivative(germ.g(), k));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Polynomial minor = df[i] * dg[j] - df[j] * dg[i];
      if (!minor.is_zero()) return JacobianMinor{i, j, std::move(minor)};
    }
  }
  return std::nullopt;
}

bool jacobian_rank_deficient(const MapGerm& germ) {
  return !first_nonzero_jacobian_minor(germ).has_value();
}

}  // namespace locimage
