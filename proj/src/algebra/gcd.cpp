#include <optional>

#include "locimage/algebra.hpp"
#include "locimage/error.hpp"

namespace locimage {
namespace {

// Highest-index variable occurring in p or q.
std::optional<std::size_t> main_variable(const Polynomial& p, const Polynomial& q) {
  for (std::size_t v = p.nvars(); v-- > 0;)
    if (p.involves(v) || q.involves(v)) return v;
  return std::nullopt;
}

Polynomial leading_coeff_in(const Polynomial& p, std::size_t var) {
  return p.coefficient_in(var, p.degree_in(var));
}

Polynomial var_power(std::size_t nvars, std::size_t var, std::uint32_t e) {
  Monomial m(nvars);
  m[var] = e;
  return Polynomial::monomial(m);
}

// lc(B)^(deg A - deg B + 1) * A mod B, in the variable `var`.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var) {
  const std::uint32_t db = b.degree_in(var);
  const Polynomial lcb = leading_coeff_in(b, var);
  Polynomial r = a;
  int e = static_cast<int>(a.degree_in(var)) - static_cast<int>(db) + 1;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    const std::uint32_t dr = r.degree_in(var);
    const Polynomial lcr = leading_coeff_in(r, var);
    r = lcb * r - lcr * var_power(r.nvars(), var, dr - db) * b;
    --e;
  }
  if (e > 0) r *= lcb.pow(static_cast<unsigned>(e));
  return r;
}

Polynomial primitive_part_in(const Polynomial& p, std::size_t var) {
  return exact_divide(p, content_in(p, var));
}

// Subresultant PRS on primitive a, b with deg_var(a) >= deg_var(b) >= 1.
// Returns the primitive gcd (up to a unit).
Polynomial subresultant_gcd(Polynomial a, Polynomial b, std::size_t var) {
  const std::size_t n = a.nvars();
  Polynomial g = Polynomial::constant(n, 1);
  Polynomial h = Polynomial::constant(n, 1);
  for (;;) {
    const std::uint32_t delta = a.degree_in(var) - b.degree_in(var);
    Polynomial r = pseudo_remainder(a, b, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) return Polynomial::constant(n, 1);
    a = std::move(b);
    b = exact_divide(r, g * h.pow(delta));
    g = leading_coeff_in(a, var);
    if (delta > 0) h = exact_divide(g.pow(delta), h.pow(delta - 1));
  }
  return primitive_part_in(b, var);
}

Polynomial gcd_nonzero(const Polynomial& p, const Polynomial& q) {
  const std::size_t n = p.nvars();
  if (p.is_constant() || q.is_constant()) return Polynomial::constant(n, 1);
  const std::size_t var = *main_variable(p, q);

  const Polynomial cp = content_in(p, var);
  const Polynomial cq = content_in(q, var);
  const Polynomial c = gcd_nonzero(cp, cq);

  Polynomial a = exact_divide(p, cp);
  Polynomial b = exact_divide(q, cq);
  if (a.degree_in(var) == 0 || b.degree_in(var) == 0) return c.monic();
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  return (c * subresultant_gcd(std::move(a), std::move(b), var)).monic();
}

}  // namespace

Polynomial content_in(const Polynomial& p, std::size_t var) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroInput, "content of the zero polynomial");
  const std::uint32_t d = p.degree_in(var);
  std::optional<Polynomial> c;
  for (std::uint32_t k = d + 1; k-- > 0;) {
    Polynomial coeff = p.coefficient_in(var, k);
    if (coeff.is_zero()) continue;
    c = c ? gcd_nonzero(*c, coeff) : coeff.monic();
    if (c->is_constant()) break;
  }
  return *c;
}

Polynomial gcd(const Polynomial& p, const Polynomial& q) {
  if (p.nvars() != q.nvars()) throw Error(ErrorCode::DimensionMismatch, "gcd: ring mismatch");
  if (p.is_zero() && q.is_zero()) throw Error(ErrorCode::UndefinedGcd, "gcd(0, 0) is undefined");
  if (p.is_zero()) return q.monic();
  if (q.is_zero()) return p.monic();
  return gcd_nonzero(p, q);
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroInput, "squarefree part of the zero polynomial");
  Polynomial common = p.monic();
  for (std::size_t v = 0; v < p.nvars() && !common.is_constant(); ++v) {
    Polynomial d = partial_derivative(p, v);
    if (!d.is_zero()) common = gcd(common, d);
  }
  return exact_divide(p, common).monic();
}

bool zero_set_germ_included(const Polynomial& p, const Polynomial& q) {
  if (p.nvars() != q.nvars()) throw Error(ErrorCode::DimensionMismatch, "germ inclusion: ring mismatch");
  if (p.is_zero() || q.is_zero()) throw Error(ErrorCode::ZeroInput, "germ inclusion needs nonzero polynomials");
  // Strip every factor shared with q, with full multiplicity. What is left
  // is the product of the factors of p that do not divide q; the inclusion
  // holds iff none of them passes through the origin.
  Polynomial rest = p;
  for (;;) {
    Polynomial common = gcd(rest, q);
    if (common.is_constant()) break;
    rest = exact_divide(rest, common);
  }
  return !rest.vanishes_at_origin();
}

}  // namespace locimage
