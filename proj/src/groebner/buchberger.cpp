#include <algorithm>
#include <set>
#include <utility>

#include "locimage/error.hpp"
#include "locimage/groebner.hpp"

namespace locimage {
namespace {

// Terms sorted descending under one TermOrder.
struct OrderedPoly {
  std::vector<Term> terms;

  bool is_zero() const { return terms.empty(); }
  const Term& lead() const { return terms.front(); }
};

OrderedPoly to_ordered(const Polynomial& p, const TermOrder& order) {
  OrderedPoly out{p.terms()};
  std::sort(out.terms.begin(), out.terms.end(),
            [&](const Term& a, const Term& b) { return order.compare(a.monomial, b.monomial) > 0; });
  return out;
}

Polynomial to_polynomial(const OrderedPoly& p, std::size_t nvars) { return Polynomial(nvars, p.terms); }

// a - c * m * b
OrderedPoly sub_scaled(const OrderedPoly& a, const GaussianRational& c, const Monomial& m, const OrderedPoly& b,
                       const TermOrder& order) {
  OrderedPoly out;
  out.terms.reserve(a.terms.size() + b.terms.size());
  auto ia = a.terms.begin();
  auto ib = b.terms.begin();
  while (ia != a.terms.end() || ib != b.terms.end()) {
    if (ib == b.terms.end()) {
      out.terms.push_back(*ia++);
      continue;
    }
    Monomial mb = ib->monomial * m;
    const int cmp = ia == a.terms.end() ? -1 : order.compare(ia->monomial, mb);
    if (cmp > 0) {
      out.terms.push_back(*ia++);
    } else if (cmp < 0) {
      out.terms.push_back(Term{std::move(mb), -(c * ib->coeff)});
      ++ib;
    } else {
      GaussianRational v = ia->coeff - c * ib->coeff;
      if (!v.is_zero()) out.terms.push_back(Term{std::move(mb), std::move(v)});
      ++ia;
      ++ib;
    }
  }
  return out;
}

void make_monic(OrderedPoly& p) {
  if (p.is_zero() || p.lead().coeff.is_one()) return;
  const GaussianRational inv = GaussianRational(1) / p.lead().coeff;
  for (auto& t : p.terms) t.coeff *= inv;
}

// Full reduction modulo basis elements (all monic), skipping index `skip`.
OrderedPoly reduce(OrderedPoly p, const std::vector<OrderedPoly>& basis, const TermOrder& order,
                   std::size_t skip = static_cast<std::size_t>(-1)) {
  OrderedPoly rem;
  while (!p.is_zero()) {
    const Term lt = p.lead();
    bool reduced = false;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (k == skip || basis[k].is_zero()) continue;
      const Term& bl = basis[k].lead();
      if (!bl.monomial.divides(lt.monomial)) continue;
      p = sub_scaled(p, lt.coeff / bl.coeff, lt.monomial / bl.monomial, basis[k], order);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.terms.push_back(lt);
      p.terms.erase(p.terms.begin());
    }
  }
  return rem;
}

OrderedPoly s_polynomial(const OrderedPoly& a, const OrderedPoly& b, const TermOrder& order) {
  const Monomial l = a.lead().monomial.lcm(b.lead().monomial);
  OrderedPoly left;
  const Monomial ma = l / a.lead().monomial;
  const GaussianRational ca = GaussianRational(1) / a.lead().coeff;
  for (const auto& t : a.terms) left.terms.push_back(Term{t.monomial * ma, t.coeff * ca});
  return sub_scaled(left, GaussianRational(1) / b.lead().coeff, l / b.lead().monomial, b, order);
}

std::size_t ring_size(const std::vector<Polynomial>& gens, const TermOrder& order) {
  if (gens.empty()) throw Error(ErrorCode::ZeroInput, "buchberger: no generators");
  const std::size_t n = gens.front().nvars();
  for (const auto& g : gens)
    if (g.nvars() != n) throw Error(ErrorCode::DimensionMismatch, "buchberger: generators in different rings");
  if (order.nvars() != n) throw Error(ErrorCode::DimensionMismatch, "buchberger: order has wrong variable count");
  return n;
}

}  // namespace

GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const TermOrder& order) {
  const std::size_t nvars = ring_size(gens, order);

  std::vector<OrderedPoly> basis;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    OrderedPoly p = to_ordered(g, order);
    make_monic(p);
    basis.push_back(std::move(p));
  }

  using Pair = std::pair<std::size_t, std::size_t>;
  std::set<Pair> pending;
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pending.insert({i, j});

  auto lcm_of = [&](const Pair& pr) { return basis[pr.first].lead().monomial.lcm(basis[pr.second].lead().monomial); };
  auto is_pending = [&](std::size_t a, std::size_t b) { return pending.count({std::min(a, b), std::max(a, b)}) > 0; };

  while (!pending.empty()) {
    // Normal strategy: smallest lcm first; ties by pair index.
    auto best = pending.begin();
    Monomial best_lcm = lcm_of(*best);
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Monomial l = lcm_of(*it);
      if (order.compare(l, best_lcm) < 0) {
        best = it;
        best_lcm = std::move(l);
      }
    }
    const Pair pr = *best;
    pending.erase(best);

    const auto& li = basis[pr.first].lead().monomial;
    const auto& lj = basis[pr.second].lead().monomial;
    if (li.coprime_with(lj)) continue;

    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pr.first || k == pr.second) continue;
      if (basis[k].lead().monomial.divides(best_lcm) && !is_pending(pr.first, k) && !is_pending(pr.second, k))
        chain = true;
    }
    if (chain) continue;

    OrderedPoly r = reduce(s_polynomial(basis[pr.first], basis[pr.second], order), basis, order);
    if (r.is_zero()) continue;
    make_monic(r);
    const std::size_t idx = basis.size();
    basis.push_back(std::move(r));
    for (std::size_t i = 0; i < idx; ++i) pending.insert({i, idx});
  }

  // Minimal basis: drop elements whose leading monomial is a multiple of
  // another's (earlier index wins among equal ones).
  std::vector<bool> keep(basis.size(), true);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size() && keep[i]; ++j) {
      if (i == j || !keep[j]) continue;
      const auto& lj = basis[j].lead().monomial;
      const auto& li = basis[i].lead().monomial;
      if (lj.divides(li) && (lj != li || j < i)) keep[i] = false;
    }
  }
  std::vector<OrderedPoly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (keep[i]) minimal.push_back(std::move(basis[i]));

  // Interreduce tails.
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    minimal[i] = reduce(std::move(minimal[i]), minimal, order, i);
    make_monic(minimal[i]);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const OrderedPoly& a, const OrderedPoly& b) {
    return order.compare(a.lead().monomial, b.lead().monomial) < 0;
  });

  GroebnerBasis gb{{}, order, true};
  for (const auto& p : minimal) gb.generators.push_back(to_polynomial(p, nvars));
  return gb;
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb) {
  if (!gb.generators.empty() && gb.generators.front().nvars() != p.nvars())
    throw Error(ErrorCode::DimensionMismatch, "normal_form: ring mismatch");
  std::vector<OrderedPoly> basis;
  for (const auto& g : gb.generators) {
    OrderedPoly o = to_ordered(g, gb.order);
    make_monic(o);
    basis.push_back(std::move(o));
  }
  return to_polynomial(reduce(to_ordered(p, gb.order), basis, gb.order), p.nvars());
}

bool satisfies_buchberger_criterion(const GroebnerBasis& gb) {
  std::vector<OrderedPoly> basis;
  for (const auto& g : gb.generators) {
    OrderedPoly o = to_ordered(g, gb.order);
    make_monic(o);
    basis.push_back(std::move(o));
  }
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (!reduce(s_polynomial(basis[i], basis[j], gb.order), basis, gb.order).is_zero()) return false;
  return true;
}

}  // namespace locimage
