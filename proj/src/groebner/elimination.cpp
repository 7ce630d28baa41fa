#include <numeric>

#include "locimage/algebra.hpp"
#include "locimage/error.hpp"
#include "locimage/groebner.hpp"

namespace locimage {
namespace {

bool free_of_first(const Polynomial& p, std::size_t k) {
  for (const auto& t : p.terms())
    for (std::size_t i = 0; i < k; ++i)
      if (t.monomial[i] != 0) return false;
  return true;
}

// Keep only the trailing two variables of a polynomial free of the others.
Polynomial to_target_ring(const Polynomial& p) {
  const std::size_t n = p.nvars();
  std::vector<Term> terms;
  for (const auto& t : p.terms()) terms.push_back(Term{Monomial{t.monomial[n - 2], t.monomial[n - 1]}, t.coeff});
  return Polynomial(2, std::move(terms));
}

}  // namespace

ImageCurve image_curve(const MapGerm& germ) {
  if (!jacobian_rank_deficient(germ))
    throw Error(ErrorCode::Precondition, "image curve requested for a map with Jacobian of rank 2");
  const std::size_t n = germ.n();
  const std::size_t total = n + 2;
  std::vector<std::size_t> positions(n);
  std::iota(positions.begin(), positions.end(), 0);

  const Polynomial u = Polynomial::variable(total, n);
  const Polynomial v = Polynomial::variable(total, n + 1);
  std::vector<Polynomial> graph{germ.f().embed(total, positions) - u, germ.g().embed(total, positions) - v};

  ImageCurve out{Polynomial(2), buchberger(graph, TermOrder::block(n, total))};

  std::vector<Polynomial> eliminants;
  for (const auto& g : out.basis.generators)
    if (free_of_first(g, n)) eliminants.push_back(to_target_ring(g));
  if (eliminants.empty()) throw Error(ErrorCode::Internal, "elimination ideal is zero for a non-constant map");
  if (eliminants.size() > 1) throw Error(ErrorCode::Internal, "elimination ideal is not principal");

  out.phi = squarefree_part(eliminants.front());
  return out;
}

Polynomial image_curve_equation(const MapGerm& germ) { return image_curve(germ).phi; }

}  // namespace locimage
