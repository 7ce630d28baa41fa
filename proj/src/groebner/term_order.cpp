#include "locimage/error.hpp"
#include "locimage/groebner.hpp"

namespace locimage {
namespace {

int degrevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i-- > lo;)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

}  // namespace

TermOrder TermOrder::block(std::size_t elim_count, std::size_t nvars) {
  if (elim_count > nvars) throw Error(ErrorCode::IndexOutOfRange, "block order eliminates more variables than exist");
  return {Kind::Block, nvars, elim_count};
}

int TermOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::Degrevlex:
      return degrevlex_range(a, b, 0, a.nvars());
    case Kind::Lex:
      for (std::size_t i = 0; i < a.nvars(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case Kind::Block: {
      const int first = degrevlex_range(a, b, 0, elim_count_);
      if (first != 0) return first;
      return degrevlex_range(a, b, elim_count_, a.nvars());
    }
  }
  return 0;
}

const Term& leading_term(const Polynomial& p, const TermOrder& order) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroInput, "leading term of the zero polynomial");
  const Term* best = &p.terms().front();
  for (const auto& t : p.terms())
    if (order.compare(t.monomial, best->monomial) > 0) best = &t;
  return *best;
}

}  // namespace locimage
