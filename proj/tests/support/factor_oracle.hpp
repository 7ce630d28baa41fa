#pragma once

#include <algorithm>
#include <vector>

#include "support/test_support.hpp"

namespace locimage::testing {

/// A polynomial together with the irreducible factors it was built from.
struct TrackedProduct {
  Polynomial value;
  std::vector<Polynomial> factors;  // monic, with repetition
};

/// Irreducible by construction: c*x_k + q(other variables) with c a nonzero
/// constant is of degree one in x_k with unit leading coefficient.
inline Polynomial random_irreducible(PolyGen& gen, std::size_t nvars, unsigned max_degree, bool through_origin) {
  const std::size_t k = static_cast<std::size_t>(gen.uniform(0, static_cast<int>(nvars) - 1));
  Polynomial rest(nvars);
  if (nvars > 1) {
    Polynomial q = gen.poly(nvars, max_degree, 4);
    std::vector<Term> kept;
    for (const auto& t : q.terms())
      if (t.monomial[k] == 0 && !t.monomial.is_one()) kept.push_back(t);
    rest = Polynomial(nvars, std::move(kept));
  }
  GaussianRational c;
  do c = gen.coeff(); while (c.is_zero());
  Polynomial f = c * Polynomial::variable(nvars, k) + rest;
  if (!through_origin) {
    GaussianRational k0;
    do k0 = gen.coeff(); while (k0.is_zero());
    f += Polynomial::constant(nvars, k0);
  }
  return f.monic();
}

inline TrackedProduct product_of(const std::vector<Polynomial>& pool, PolyGen& gen, int max_factors) {
  const std::size_t nvars = pool.front().nvars();
  TrackedProduct out{Polynomial::constant(nvars, 1), {}};
  const int count = gen.uniform(1, max_factors);
  for (int i = 0; i < count; ++i) {
    const auto& f = pool[static_cast<std::size_t>(gen.uniform(0, static_cast<int>(pool.size()) - 1))];
    out.value *= f;
    out.factors.push_back(f);
  }
  GaussianRational scale;
  do scale = gen.coeff(); while (scale.is_zero());
  out.value *= scale;
  return out;
}

/// Exact oracle: (Z(p),0) ⊆ (Z(q),0) iff every factor of p through the
/// origin is (up to a unit) among the factors of q.
inline bool oracle_germ_included(const TrackedProduct& p, const TrackedProduct& q) {
  for (const auto& f : p.factors) {
    if (!f.vanishes_at_origin()) continue;
    if (std::find(q.factors.begin(), q.factors.end(), f) == q.factors.end()) return false;
  }
  return true;
}

}  // namespace locimage::testing
