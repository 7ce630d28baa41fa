#pragma once

#include <cstddef>
#include <vector>

#include "locimage/map_germ.hpp"
#include "locimage/polynomial.hpp"

namespace locimage {

/// Monomial order. Block(k) compares the first k exponents by degrevlex,
/// breaking ties by degrevlex on the remaining ones; it eliminates the
/// first k variables.
class TermOrder {
public:
  enum class Kind { Degrevlex, Lex, Block };

  static TermOrder degrevlex(std::size_t nvars) { return {Kind::Degrevlex, nvars, 0}; }
  static TermOrder lex(std::size_t nvars) { return {Kind::Lex, nvars, 0}; }
  static TermOrder block(std::size_t elim_count, std::size_t nvars);

  Kind kind() const { return kind_; }
  std::size_t nvars() const { return nvars_; }
  std::size_t elim_count() const { return elim_count_; }

  /// Negative, zero or positive as a <, =, > b.
  int compare(const Monomial& a, const Monomial& b) const;

private:
  TermOrder(Kind kind, std::size_t nvars, std::size_t elim_count)
      : kind_(kind), nvars_(nvars), elim_count_(elim_count) {}

  Kind kind_;
  std::size_t nvars_;
  std::size_t elim_count_;
};

struct GroebnerBasis {
  std::vector<Polynomial> generators;  // monic under `order`, ascending leading monomials
  TermOrder order;
  bool reduced = false;
};

/// Leading term of p under `order` (p nonzero).
const Term& leading_term(const Polynomial& p, const TermOrder& order);

/// Buchberger's algorithm with the coprime-leading-monomial and chain
/// criteria and normal pair selection. Returns the reduced basis.
GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const TermOrder& order);

/// Fully reduced remainder of p modulo the basis; zero iff p is in the ideal.
Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb);

/// Checks that every S-polynomial of the generators reduces to zero.
bool satisfies_buchberger_criterion(const GroebnerBasis& gb);

struct ImageCurve {
  Polynomial phi;       // in C[u, v]
  GroebnerBasis basis;  // of the graph ideal <f - u, g - v> under block(n)
};

/// Eliminates the source variables from <f - u, g - v>. Requires a
/// rank-deficient Jacobian. phi is squarefree and monic under degrevlex.
ImageCurve image_curve(const MapGerm& germ);
Polynomial image_curve_equation(const MapGerm& germ);

}  // namespace locimage
