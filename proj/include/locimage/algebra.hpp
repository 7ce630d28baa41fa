#pragma once

#include <cstddef>
#include <optional>

#include "locimage/map_germ.hpp"
#include "locimage/polynomial.hpp"

namespace locimage {

/// Greatest common divisor, normalized to leading coefficient 1.
/// gcd(p, 0) is p made monic; gcd(0, 0) throws Error(UndefinedGcd).
Polynomial gcd(const Polynomial& p, const Polynomial& q);

/// p divided by gcd(p, dp/dx_1, ..., dp/dx_n): same zero set, no repeated
/// factors. Throws Error(ZeroInput) for p = 0.
Polynomial squarefree_part(const Polynomial& p);

/// Content of p viewed as a polynomial in `var` (gcd of its coefficients).
Polynomial content_in(const Polynomial& p, std::size_t var);

/// Germ inclusion (Z(p),0) ⊆ (Z(q),0): every irreducible factor of p
/// through the origin divides q.
bool zero_set_germ_included(const Polynomial& p, const Polynomial& q);

struct GcdDecomposition {
  Polynomial h;
  Polynomial f_hat;
  Polynomial g_hat;
  bool f_hat_is_unit = false;
  bool g_hat_is_unit = false;
};

/// f = h*f_hat, g = h*g_hat with h = gcd(f, g) monic.
GcdDecomposition decompose(const MapGerm& germ);

enum class IntersectionCase {
  CodimTwo,  // germ of Z(f) ∩ Z(g) has dimension n-2
  CodimOne,  // f and g share a factor through the origin
};

IntersectionCase intersection_dimension_case(const MapGerm& germ, const GcdDecomposition& dec);

/// One 2x2 minor df/dx_i * dg/dx_j - df/dx_j * dg/dx_i, i < j.
struct JacobianMinor {
  std::size_t i;
  std::size_t j;
  Polynomial value;
};

/// First minor (in (i, j) lexicographic order) that is not identically
/// zero, or nullopt when the Jacobian has rank <= 1 everywhere.
std::optional<JacobianMinor> first_nonzero_jacobian_minor(const MapGerm& germ);

/// All 2x2 minors of the Jacobian vanish identically (vacuous for n = 1).
bool jacobian_rank_deficient(const MapGerm& germ);

}  // namespace locimage
