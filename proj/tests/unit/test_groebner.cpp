#include "doctest.h"
#include "locimage/error.hpp"
#include "locimage/groebner.hpp"
#include "support/test_support.hpp"

using namespace locimage;
using namespace locimage::testing;

namespace {

// Oracle for a claimed image curve: substitute a parametrization (p(t), q(t)).
bool vanishes_on_parametrization(const Polynomial& phi, const Polynomial& pu, const Polynomial& pv) {
  const std::array<Polynomial, 2> images{pu, pv};
  return substitute(phi, images).is_zero();
}

}  // namespace

TEST_CASE("term orders") {
  const Monomial a{2, 0, 0};
  const Monomial b{0, 1, 1};
  CHECK(TermOrder::degrevlex(3).compare(a, b) > 0);
  CHECK(TermOrder::lex(3).compare(a, b) > 0);
  CHECK(TermOrder::lex(3).compare(Monomial{0, 3, 0}, Monomial{1, 0, 0}) < 0);
  // x > any power of u, v under block(1).
  CHECK(TermOrder::block(1, 3).compare(Monomial{1, 0, 0}, Monomial{0, 5, 7}) > 0);
  CHECK(TermOrder::block(1, 3).compare(Monomial{0, 2, 0}, Monomial{0, 1, 1}) > 0);
  CHECK(TermOrder::degrevlex(2).compare(Monomial{0, 0}, Monomial{0, 1}) < 0);
}

TEST_CASE("buchberger on trivial ideals") {
  auto v = ring(2);
  const auto& x = v[0];
  const auto& y = v[1];
  auto gb = buchberger({GaussianRational(3) * x}, TermOrder::degrevlex(2));
  REQUIRE(gb.generators.size() == 1);
  CHECK(gb.generators[0] == x);
  CHECK(gb.reduced);

  auto gb2 = buchberger({x, y}, TermOrder::lex(2));
  REQUIRE(gb2.generators.size() == 2);
  CHECK(gb2.generators[0] == y);
  CHECK(gb2.generators[1] == x);
  CHECK_THROWS_AS(buchberger({}, TermOrder::lex(2)), Error);
}

TEST_CASE("buchberger eliminates x from <x^2 - u, x^3 - v>") {
  auto r = ring(3);
  const auto& x = r[0];
  const auto& u = r[1];
  const auto& v = r[2];
  auto gb = buchberger({x.pow(2) - u, x.pow(3) - v}, TermOrder::block(1, 3));
  CHECK(satisfies_buchberger_criterion(gb));
  std::vector<Polynomial> eliminants;
  for (const auto& g : gb.generators)
    if (g.degree_in(0) == 0) eliminants.push_back(g);
  REQUIRE(eliminants.size() == 1);
  CHECK(eliminants[0] == u.pow(3) - v.pow(2));
  CHECK(normal_form(u.pow(3) - v.pow(2), gb).is_zero());
}

TEST_CASE("normal_form") {
  auto v = ring(2);
  const auto& x = v[0];
  const auto& y = v[1];
  auto gb = buchberger({x}, TermOrder::degrevlex(2));
  CHECK(normal_form(x.pow(2), gb).is_zero());
  CHECK(normal_form(y, gb) == y);
  CHECK(normal_form(x * y + y.pow(2) + Polynomial::constant(2, 3), gb) == y.pow(2) + Polynomial::constant(2, 3));
}

TEST_CASE("random ideals: certificate, membership of generators, order independence") {
  PolyGen gen(404);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.uniform(2, 3));
    std::vector<Polynomial> gens;
    const int count = gen.uniform(1, 3);
    for (int k = 0; k < count; ++k) gens.push_back(gen.nonzero_poly(n, 2, 3));
    const auto drl = buchberger(gens, TermOrder::degrevlex(n));
    const auto lex = buchberger(gens, TermOrder::lex(n));
    CHECK(satisfies_buchberger_criterion(drl));
    CHECK(satisfies_buchberger_criterion(lex));
    for (const auto& g : gens) {
      CHECK(normal_form(g, drl).is_zero());
      CHECK(normal_form(g, lex).is_zero());
    }
    for (int probe = 0; probe < 3; ++probe) {
      // Members built as combinations, plus random non-members.
      Polynomial member(n);
      for (const auto& g : gens) member += g * gen.poly(n, 1, 2);
      CHECK(normal_form(member, drl).is_zero());
      CHECK(normal_form(member, lex).is_zero());
      const Polynomial other = gen.poly(n, 2, 3);
      CHECK(normal_form(other, drl).is_zero() == normal_form(other, lex).is_zero());
    }
  }
}

TEST_CASE("image_curve_equation") {
  auto s = ring(2);
  const auto& x = s[0];
  const auto& y = s[1];
  auto t = ring(2);
  const auto& u = t[0];
  const auto& v = t[1];

  SUBCASE("cusp from a rank-one map in two variables") {
    MapGerm cusp((x + y).pow(2), (x + y).pow(3));
    auto ic = image_curve(cusp);
    CHECK(ic.phi == u.pow(3) - v.pow(2));
    CHECK(satisfies_buchberger_criterion(ic.basis));
    CHECK(compose_target(ic.phi, cusp).is_zero());
    auto p = ring(1);
    CHECK(vanishes_on_parametrization(ic.phi, p[0].pow(2), p[0].pow(3)));
  }
  SUBCASE("diagonal") {
    auto one = ring(1);
    CHECK(image_curve_equation(MapGerm(one[0], one[0])) == u - v);
  }
  SUBCASE("cusp in one variable") {
    auto one = ring(1);
    MapGerm germ(one[0].pow(2), one[0].pow(3));
    const Polynomial phi = image_curve_equation(germ);
    CHECK(phi == u.pow(3) - v.pow(2));
    CHECK(vanishes_on_parametrization(phi, one[0].pow(2), one[0].pow(3)));
  }
  SUBCASE("zero component") {
    auto one = ring(1);
    CHECK(image_curve_equation(MapGerm(Polynomial(1), one[0].pow(2))) == u);
  }
  SUBCASE("rank two is rejected") { CHECK_THROWS_AS(image_curve_equation(MapGerm(x, x * y)), Error); }
}
