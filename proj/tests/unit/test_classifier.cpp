#include <chrono>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "locimage/classifier.hpp"
#include "locimage/error.hpp"
#include "support/corpus_maps.hpp"
#include "support/test_support.hpp"

using namespace locimage;
using namespace locimage::testing;

namespace {

// Target variables u, v.
const Polynomial U = Polynomial::variable(2, 0);
const Polynomial V = Polynomial::variable(2, 1);

bool proportional(const Polynomial& a, const Polynomial& b) { return a.monic() == b.monic(); }

bool same_verdict(const Verdict& a, const Verdict& b) {
  if (a.status != b.status || a.subflat_label != b.subflat_label || a.rationale != b.rationale) return false;
  if (witness_kind(a.witness) != witness_kind(b.witness)) return false;
  if (auto* la = std::get_if<GapLineWitness>(&a.witness)) return la->ratio == std::get<GapLineWitness>(b.witness).ratio;
  if (auto* ca = std::get_if<GapCurveWitness>(&a.witness)) return ca->curve == std::get<GapCurveWitness>(b.witness).curve;
  if (auto* pa = std::get_if<PropCritCertificate>(&a.witness)) {
    const auto& pb = std::get<PropCritCertificate>(b.witness);
    return pa->verified_absent == pb.verified_absent && pa->stats.roots == pb.stats.roots &&
           pa->stats.clusters == pb.stats.clusters && pa->stats.usable_points == pb.stats.usable_points;
  }
  if (auto* ea = std::get_if<CurveEquationWitness>(&a.witness)) return ea->phi == std::get<CurveEquationWitness>(b.witness).phi;
  return true;
}

// x -> A x for an integer matrix given row by row.
MapGerm change_source(const MapGerm& germ, const std::vector<std::vector<int>>& a) {
  const std::size_t n = germ.n();
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial row(n);
    for (std::size_t j = 0; j < n; ++j) row += Polynomial::variable(n, j) * GaussianRational(a[i][j]);
    images.push_back(row);
  }
  return MapGerm(substitute(germ.f(), images), substitute(germ.g(), images));
}

// Product of random elementary shears x_i += c x_j; determinant 1.
std::vector<std::vector<int>> random_unimodular(PolyGen& gen, std::size_t n) {
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
  for (int step = 0; step < 3; ++step) {
    const auto i = static_cast<std::size_t>(gen.uniform(0, static_cast<int>(n) - 1));
    auto j = static_cast<std::size_t>(gen.uniform(0, static_cast<int>(n) - 2));
    if (j >= i) ++j;
    const int c = gen.uniform(0, 1) == 0 ? -1 : 1;
    for (std::size_t k = 0; k < n; ++k) a[i][k] += c * a[j][k];
  }
  return a;
}

}  // namespace

TEST_CASE("ProjectiveRatio canonical form") {
  const ProjectiveRatio r(2, -2);
  CHECK(r.alpha() == GaussianRational(-1));
  CHECK(r.beta() == GaussianRational(1));
  const ProjectiveRatio s(GaussianRational::i(), 0);
  CHECK(s.alpha() == GaussianRational(1));
  CHECK(s.beta().is_zero());
  CHECK(ProjectiveRatio(3, 6) == ProjectiveRatio(1, 2));
  CHECK_THROWS_AS(ProjectiveRatio(0, 0), Error);
}

TEST_CASE("PlaneCurveCandidate") {
  CHECK(PlaneCurveCandidate(V * GaussianRational(-1) + U.pow(2)).phi() == U.pow(2) - V);
  CHECK_THROWS_AS(PlaneCurveCandidate(Polynomial(2)), Error);
  CHECK_THROWS_AS(PlaneCurveCandidate(U + Polynomial::constant(2, 1)), Error);
  CHECK_THROWS_AS(PlaneCurveCandidate(Polynomial::variable(3, 0)), Error);
}

TEST_CASE("rationalize") {
  CHECK(*rationalize(0.5, 1'000'000, 1e-12) == Rational(1, 2));
  CHECK(*rationalize(-1.0 / 3.0, 1'000'000, 1e-12) == Rational(-1, 3));
  CHECK(*rationalize(0.0, 1'000'000, 1e-12) == Rational(0));
  CHECK(*rationalize(1e-17, 1'000'000, 1e-12) == Rational(0));
  CHECK(*rationalize(355.0 / 113.0, 1'000'000, 1e-12) == Rational(355, 113));
  CHECK_FALSE(rationalize(std::numbers::sqrt2, 100, 1e-9).has_value());
  CHECK_FALSE(rationalize(std::nan(""), 100, 1e-9).has_value());
  const auto z = rationalize(Complex(0.25, -2.0), 1'000'000, 1e-12);
  REQUIRE(z.has_value());
  CHECK(*z == GaussianRational(Rational(1, 4), -2));

  PolyGen gen(21);
  for (int trial = 0; trial < 200; ++trial) {
    const long p = gen.uniform(-5000, 5000);
    const long q = gen.uniform(1, 5000);
    Rational exact(p, q);
    exact.canonicalize();
    const auto back = rationalize(static_cast<double>(p) / static_cast<double>(q), 1'000'000, 1e-12);
    REQUIRE(back.has_value());
    CHECK(*back == exact);
  }
}

TEST_CASE("is_gap_line") {
  auto s = ring(2);
  const auto& x = s[0];
  const auto& y = s[1];

  CHECK(is_gap_line(decompose(MapGerm(x.pow(2), x * y)), ProjectiveRatio(0, 1)));
  CHECK_FALSE(is_gap_line(decompose(MapGerm(x.pow(2), x * y)), ProjectiveRatio(1, 1)));
  CHECK(is_gap_line(decompose(MapGerm(x * (x + y), x * y)), ProjectiveRatio(-1, 1)));

  const auto dec = decompose(MapGerm(x * y, x.pow(2) * y.pow(2) + y.pow(3)));
  PolyGen gen(5);
  CHECK_FALSE(is_gap_line(dec, ProjectiveRatio(1, 0)));
  CHECK_FALSE(is_gap_line(dec, ProjectiveRatio(0, 1)));
  for (int trial = 0; trial < 40; ++trial) {
    const GaussianRational a = gen.coeff();
    const GaussianRational b = gen.coeff();
    if (a.is_zero() && b.is_zero()) continue;
    CHECK_FALSE(is_gap_line(dec, ProjectiveRatio(a, b)));
  }

  // Unit cofactor, and h a unit.
  CHECK_THROWS_AS(is_gap_line(decompose(MapGerm(x, x * y)), ProjectiveRatio(0, 1)), Error);
  CHECK_THROWS_AS(is_gap_line(decompose(MapGerm(x, y)), ProjectiveRatio(0, 1)), Error);
}

TEST_CASE("find_gap_lines") {
  auto s = ring(2);
  const auto& x = s[0];
  const auto& y = s[1];
  const SamplerConfig cfg;

  SUBCASE("blowup") {
    const auto found = find_gap_lines(decompose(MapGerm(x.pow(2), x * y)), cfg);
    REQUIRE(found.verified.size() == 1);
    CHECK(found.verified[0] == ProjectiveRatio(0, 1));
    CHECK(found.unverified_numeric.empty());
    CHECK(found.coverage.lines_per_attempt == cfg.lines);
    CHECK(found.coverage.usable_points > 0);
  }
  SUBCASE("diagonal") {
    const auto found = find_gap_lines(decompose(MapGerm(x * (x + y), x * y)), cfg);
    REQUIRE(found.verified.size() == 1);
    CHECK(found.verified[0] == ProjectiveRatio(-1, 1));
  }
  SUBCASE("gap curve but no gap line") {
    const auto found = find_gap_lines(decompose(MapGerm(x * y, x.pow(2) * y.pow(2) + y.pow(3))), cfg);
    CHECK(found.verified.empty());
    CHECK(found.unverified_numeric.empty());
  }
  SUBCASE("parabola cofactor") {
    const auto found = find_gap_lines(decompose(MapGerm(x * (y + x.pow(2)), y * (y + x.pow(2)))), cfg);
    CHECK(found.verified.empty());
    CHECK(found.unverified_numeric.empty());
  }
  SUBCASE("irrational gap line is reported numerically") {
    // h = x^2 - 2y^2 has components x = ±sqrt(2) y, on which [f_hat : -g_hat]
    // with f_hat = x, g_hat = y is constant and irrational.
    const Polynomial h = x.pow(2) - GaussianRational(2) * y.pow(2);
    const auto found = find_gap_lines(decompose(MapGerm(h * x, h * y)), cfg);
    CHECK(found.verified.empty());
    REQUIRE(found.unverified_numeric.size() == 2);
    for (const auto& r : found.unverified_numeric) {
      const Complex t = r.beta == Complex(1.0, 0.0) ? r.alpha : 1.0 / r.beta;
      CHECK(std::abs(std::abs(t) - std::numbers::sqrt2) < 1e-8);
    }
  }
  SUBCASE("deterministic") {
    const auto dec = decompose(MapGerm(x.pow(2), x * y));
    const auto a = find_gap_lines(dec, cfg);
    const auto b = find_gap_lines(dec, cfg);
    CHECK(a.verified == b.verified);
    CHECK(a.coverage.roots == b.coverage.roots);
    CHECK(a.coverage.clusters == b.coverage.clusters);
  }
}

TEST_CASE("prop_crit_check") {
  auto s = ring(2);
  const auto& x = s[0];
  const auto& y = s[1];
  const SamplerConfig cfg;

  const auto parabola = prop_crit_check(decompose(MapGerm(x * (y + x.pow(2)), y * (y + x.pow(2)))), cfg);
  CHECK(parabola.status == PropCritStatus::Established);

  const auto blowup = prop_crit_check(decompose(MapGerm(x.pow(2), x * y)), cfg);
  CHECK(blowup.status == PropCritStatus::GapLineFound);
  REQUIRE(blowup.gap_line.has_value());
  CHECK(*blowup.gap_line == ProjectiveRatio(0, 1));

  const Polynomial h = x.pow(4) + y;
  const auto rouche = prop_crit_check(decompose(MapGerm(x * h, y * h.pow(2))), cfg);
  CHECK(rouche.status == PropCritStatus::Inconclusive);
  CHECK(rouche.reason == "criterion hypothesis fails, no gap line");

  // h = x(y-1). On the component y = 1, which misses the origin, g_hat
  // vanishes and the ratio is [1:0]; the certificate records it as checked.
  const Polynomial y1 = y - Polynomial::constant(2, 1);
  const auto away = prop_crit_check(decompose(MapGerm(x * y1 * (x + y), x * y1 * y * y1)), cfg);
  CHECK(away.status == PropCritStatus::Established);
  REQUIRE(away.verified_absent.size() == 1);
  CHECK(away.verified_absent[0] == ProjectiveRatio(1, 0));
}

TEST_CASE("is_gap_curve") {
  auto s = ring(2);
  const auto& x = s[0];
  const auto& y = s[1];
  const MapGerm gap(x * y, x.pow(2) * y.pow(2) + y.pow(3));
  const MapGerm parabola(x * (y + x.pow(2)), y * (y + x.pow(2)));

  CHECK(is_gap_curve(gap, decompose(gap), PlaneCurveCandidate(V - U.pow(2))));
  CHECK_FALSE(is_gap_curve(parabola, decompose(parabola), PlaneCurveCandidate(V - U.pow(2))));
  CHECK_FALSE(is_gap_curve(gap, decompose(gap), PlaneCurveCandidate(U)));

  const MapGerm identity(x, y);
  CHECK_FALSE(is_gap_curve(identity, decompose(identity), PlaneCurveCandidate(U)));
  const MapGerm cusp((x + y).pow(2), (x + y).pow(3));
  CHECK_THROWS_AS(is_gap_curve(cusp, decompose(cusp), PlaneCurveCandidate(U.pow(3) - V.pow(2))), Error);
}

TEST_CASE("bounded_gap_curve_search") {
  auto s = ring(2);
  const auto& x = s[0];
  const auto& y = s[1];

  SUBCASE("finds v - u^2") {
    const MapGerm gap(x * y, x.pow(2) * y.pow(2) + y.pow(3));
    const auto found = bounded_gap_curve_search(gap, decompose(gap), SearchParams{});
    bool has = false;
    for (const auto& c : found.found) {
      has = has || proportional(c.phi(), V - U.pow(2));
      CHECK(is_gap_curve(gap, decompose(gap), c));
    }
    CHECK(has);
    // 5^4 + 5^3 + 5^2 + 5 + 1 candidates over u^2, uv, v^2, u, v.
    CHECK(found.stats.candidates == 781);
  }
  SUBCASE("none for the parabola cofactor") {
    const MapGerm parabola(x * (y + x.pow(2)), y * (y + x.pow(2)));
    CHECK(bounded_gap_curve_search(parabola, decompose(parabola), SearchParams{}).found.empty());
  }
  SUBCASE("diagonal at degree one") {
    const MapGerm diagonal(x * (x + y), x * y);
    const auto found = bounded_gap_curve_search(diagonal, decompose(diagonal), SearchParams{1, {-2, -1, 0, 1, 2}});
    bool has = false;
    for (const auto& c : found.found) has = has || c.phi() == U - V;
    CHECK(has);
    CHECK(found.stats.candidates == 6);
  }
  SUBCASE("codim two has no gap curve") {
    const MapGerm identity(x, y);
    CHECK(bounded_gap_curve_search(identity, decompose(identity), SearchParams{}).found.empty());
  }
  SUBCASE("image containers are skipped") {
    auto one = ring(1);
    const MapGerm cusp(one[0].pow(2), one[0].pow(3));
    const auto found = bounded_gap_curve_search(cusp, decompose(cusp), SearchParams{3, {-1, 0, 1}});
    CHECK(found.stats.image_containers == 1);
    CHECK(found.stats.candidates == 9841);
  }
  SUBCASE("degree zero is rejected") {
    const MapGerm identity(x, y);
    CHECK_THROWS_AS(bounded_gap_curve_search(identity, decompose(identity), SearchParams{0, {1}}), Error);
  }
}

TEST_CASE("classify reference maps") {
  const SamplerConfig cfg;
  for (const auto& entry : reference_germs()) {
    CAPTURE(entry.name);
    const auto start = std::chrono::steady_clock::now();
    const Verdict v = classify(entry.germ, cfg);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(v.status == entry.expected);
    CHECK(recheck_witness(entry.germ, v));
    CHECK(seconds < 10.0);

    // Subflat label follows the status and witness.
    const bool gap =
        std::holds_alternative<GapLineWitness>(v.witness) || std::holds_alternative<GapCurveWitness>(v.witness);
    if (v.status == Status::LocallyOpen) CHECK(v.subflat_label == SubflatLabel::Subflat);
    if (v.status == Status::NotAGerm && gap) CHECK(v.subflat_label == SubflatLabel::NotSubflat);
    if (v.status != Status::LocallyOpen && !(v.status == Status::NotAGerm && gap))
      CHECK(v.subflat_label == SubflatLabel::Unknown);

    // A gap witness never comes with an openness verdict.
    if (gap) CHECK(v.status != Status::LocallyOpen);
  }
}

TEST_CASE("classify witnesses") {
  auto s = ring(2);
  const auto& x = s[0];
  const auto& y = s[1];
  const SamplerConfig cfg;

  SUBCASE("angle") {
    const Verdict v = classify(MapGerm(x, x * y), cfg);
    const auto& w = std::get<ContainmentWitness>(v.witness);
    CHECK(w.direction == ContainmentWitness::Direction::FInG);
    CHECK(w.minor.value == x);
  }
  SUBCASE("blowup and diagonal") {
    // Z(x^2) ⊆ Z(xy), so the blowup is decided by the containment branch; its
    // gap line is still found from the decomposition.
    const MapGerm blowup(x.pow(2), x * y);
    const Verdict b = classify(blowup, cfg);
    CHECK(std::get<ContainmentWitness>(b.witness).minor.value == GaussianRational(2) * x.pow(2));
    CHECK(find_gap_lines(b.decomposition, cfg).verified == std::vector{ProjectiveRatio(0, 1)});
    CHECK(std::get<GapLineWitness>(classify(MapGerm(x * (x + y), x * y), cfg).witness).ratio ==
          ProjectiveRatio(-1, 1));
  }
  SUBCASE("gap curve") {
    const Verdict v = classify(MapGerm(x * y, x.pow(2) * y.pow(2) + y.pow(3)), cfg);
    CHECK(std::get<GapCurveWitness>(v.witness).curve.phi() == U.pow(2) - V);
    REQUIRE(v.prop_crit.has_value());
    CHECK(v.prop_crit->status == PropCritStatus::Inconclusive);
    CHECK(v.search.has_value());
  }
  SUBCASE("rouche stays undetermined") {
    const Polynomial h = x.pow(4) + y;
    Verdict v = classify(MapGerm(x * h, y * h.pow(2)), cfg);
    CHECK(std::holds_alternative<NoWitness>(v.witness));
    REQUIRE(v.prop_crit.has_value());
    CHECK(v.prop_crit->status == PropCritStatus::Inconclusive);
    CHECK(v.decomposition.h == h);
    attach_probe_evidence(v, OccupancyReport{});
    CHECK(witness_kind(v.witness) == "ProbeOnly");
  }
  SUBCASE("curve images") {
    const Verdict cusp = classify(MapGerm((x + y).pow(2), (x + y).pow(3)), cfg);
    CHECK(std::get<CurveEquationWitness>(cusp.witness).phi == U.pow(3) - V.pow(2));
    REQUIRE(cusp.elimination_basis.has_value());
    CHECK(satisfies_buchberger_criterion(*cusp.elimination_basis));

    const Verdict axis = classify(MapGerm(Polynomial(2), x * y), cfg);
    CHECK(axis.status == Status::CurveImage);
    CHECK(std::get<CurveEquationWitness>(axis.witness).phi == U);
    CHECK(recheck_witness(MapGerm(Polynomial(2), x * y), axis));
  }
  SUBCASE("codim two") {
    const Verdict v = classify(MapGerm(x, y.pow(3) + x * y), cfg);
    CHECK(v.status == Status::LocallyOpen);
    CHECK(witness_kind(v.witness) == "CodimTwo");
  }
  SUBCASE("a forged witness fails the re-check") {
    const MapGerm diagonal(x * (x + y), x * y);
    Verdict v = classify(diagonal, cfg);
    REQUIRE(recheck_witness(diagonal, v));
    v.witness = GapLineWitness{ProjectiveRatio(1, 1)};
    CHECK_FALSE(recheck_witness(diagonal, v));
    v.witness = CurveEquationWitness{U - V};
    CHECK_FALSE(recheck_witness(diagonal, v));
  }
}

TEST_CASE("status names") {
  for (Status st : {Status::LocallyOpen, Status::CurveImage, Status::NotAGerm, Status::Undetermined})
    CHECK(parse_status(status_name(st)) == st);
  CHECK_FALSE(parse_status("Open").has_value());
}

TEST_CASE("classify is deterministic") {
  const SamplerConfig cfg;
  for (const auto& entry : reference_germs()) {
    CAPTURE(entry.name);
    CHECK(same_verdict(classify(entry.germ, cfg), classify(entry.germ, cfg)));
  }
}

TEST_CASE("status is invariant under source coordinate changes") {
  PolyGen gen(77);
  const SamplerConfig cfg;
  for (const auto& entry : reference_germs()) {
    if (entry.germ.n() < 2) continue;
    CAPTURE(entry.name);
    for (int trial = 0; trial < 2; ++trial) {
      const MapGerm moved = change_source(entry.germ, random_unimodular(gen, entry.germ.n()));
      const Verdict v = classify(moved, cfg);
      CHECK(v.status == entry.expected);
      CHECK(recheck_witness(moved, v));
    }
  }
}

TEST_CASE("open and non-germ statuses are invariant under target coordinate changes") {
  const SamplerConfig cfg;
  for (const auto& entry : reference_germs()) {
    if (entry.expected != Status::LocallyOpen && entry.expected != Status::NotAGerm) continue;
    CAPTURE(entry.name);
    const Polynomial& f = entry.germ.f();
    const Polynomial& g = entry.germ.g();
    const std::vector<MapGerm> moved{
        MapGerm(f + g, g), MapGerm(f, g - f), MapGerm(g, f), MapGerm(-f, g),
        MapGerm(f * GaussianRational::i(), g),
    };
    for (const auto& m : moved) {
      const Verdict v = classify(m, cfg);
      CHECK(v.status == entry.expected);
      CHECK(recheck_witness(m, v));
    }
  }
}
