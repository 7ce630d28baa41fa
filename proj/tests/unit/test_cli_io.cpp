#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "locimage/corpus.hpp"
#include "locimage/expression.hpp"
#include "locimage/report.hpp"
#include "locimage/runner.hpp"
#include "support/test_support.hpp"

using namespace locimage;
using namespace locimage::testing;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};

Polynomial var(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Internal;
}

// Random expression text together with its value at a fixed point, computed
// directly from the generated tree.
struct ExprGen {
  PolyGen& gen;
  std::vector<Complex> point;

  std::pair<std::string, Complex> base(int depth) {
    const int pick = gen.uniform(0, depth > 0 ? 4 : 2);
    if (pick == 0) {
      const int k = gen.uniform(0, 9);
      return {std::to_string(k), Complex(k, 0)};
    }
    if (pick == 1) return {"i", Complex(0, 1)};
    if (pick == 2) {
      const auto v = static_cast<std::size_t>(gen.uniform(0, static_cast<int>(point.size()) - 1));
      return {XYZ[v], point[v]};
    }
    auto [text, value] = expression(depth - 1);
    return {"(" + text + ")", value};
  }

  std::pair<std::string, Complex> factor(int depth) {
    auto [text, value] = base(depth);
    if (gen.uniform(0, 3) == 0) {
      const int e = gen.uniform(1, 3);
      return {text + "^" + std::to_string(e), std::pow(value, e)};
    }
    return {text, value};
  }

  std::pair<std::string, Complex> term(int depth) {
    auto [text, value] = factor(depth);
    for (int k = gen.uniform(0, 2); k > 0; --k) {
      auto [t, v] = factor(depth);
      text += gen.uniform(0, 1) ? " * " + t : "*" + t;
      value *= v;
    }
    return {text, value};
  }

  std::pair<std::string, Complex> expression(int depth) {
    std::string text;
    Complex value;
    const int lead = gen.uniform(0, 3);
    auto [t, v] = term(depth);
    if (lead == 0) {
      text = "-" + t;
      value = -v;
    } else {
      text = t;
      value = v;
    }
    for (int k = gen.uniform(0, 3); k > 0; --k) {
      auto [t2, v2] = term(depth);
      if (gen.uniform(0, 1)) {
        text += " + " + t2;
        value += v2;
      } else {
        text += "-" + t2;
        value -= v2;
      }
    }
    return {text, value};
  }
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("parse_map_germ examples") {
  const MapGerm parabola = parse_map_germ(XY, "x*(y+x^2)", "y*(y+x^2)");
  const Polynomial x = var(2, 0), y = var(2, 1);
  CHECK(parabola.f() == x * (y + x * x));
  CHECK(parabola.g() == y * (y + x * x));

  const MapGerm cone = parse_map_germ(XYZ, "x*y", "x*z");
  CHECK(cone.n() == 3);
  CHECK(cone.f() == var(3, 0) * var(3, 1));
  CHECK(cone.g() == var(3, 0) * var(3, 2));

  CHECK(code_of([] { parse_map_germ(XY, "x+1", "y"); }) == ErrorCode::NotThroughOrigin);
  CHECK(code_of([] { parse_map_germ(XY, "0", "x-x"); }) == ErrorCode::ConstantMap);
}

TEST_CASE("Gaussian coefficients combine through arithmetic") {
  const Polynomial p = parse_polynomial(XY, "(1+i)*x - 2*i*y^2 + i*i*x");
  const Polynomial x = var(2, 0), y = var(2, 1);
  CHECK(p == x * GaussianRational::i() - y * y * GaussianRational(0, 2));
  CHECK(parse_gaussian("(1+i)*3") == GaussianRational(3, 3));
  CHECK(parse_gaussian("-1") == GaussianRational(-1));
  CHECK(parse_gaussian("0") == GaussianRational(0));
}

TEST_CASE("parse errors carry line and column") {
  auto error_at = [](std::string_view text) -> std::pair<std::size_t, std::size_t> {
    try {
      parse_polynomial(XY, text);
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  CHECK(error_at("x + q") == std::pair<std::size_t, std::size_t>{1, 5});
  CHECK(error_at("x\n  + y*)") == std::pair<std::size_t, std::size_t>{2, 7});
  CHECK(error_at("x y") == std::pair<std::size_t, std::size_t>{1, 3});
  CHECK(error_at("x^0") == std::pair<std::size_t, std::size_t>{1, 3});
  CHECK(error_at("x^1001") == std::pair<std::size_t, std::size_t>{1, 3});
  CHECK(error_at("(x+y") == std::pair<std::size_t, std::size_t>{1, 5});
  CHECK(error_at("") == std::pair<std::size_t, std::size_t>{1, 1});

  CHECK(code_of([] { parse_polynomial(XY, "x + q"); }) == ErrorCode::UnknownVariable);
  CHECK(code_of([] { parse_polynomial(XY, "x +"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_polynomial(XY, "2x"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_polynomial(XY, "x/2"); }) == ErrorCode::SyntaxError);
}

TEST_CASE("variable lists") {
  CHECK(parse_variable_list(" x, y ,z") == XYZ);
  CHECK(code_of([] { parse_variable_list("x,x"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_variable_list("x,i"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_variable_list("x,2y"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_variable_list(""); }) == ErrorCode::SyntaxError);
}

TEST_CASE("pretty printing") {
  const Polynomial x = var(2, 0), y = var(2, 1);
  CHECK(to_string(Polynomial(2), XY) == "0");
  CHECK(to_string(x * x - x * y * GaussianRational(3), XY) == "x^2 - 3*x*y");
  CHECK(to_string(-x - y, XY) == "-x - y");
  CHECK(to_string(x * GaussianRational::i() - y * GaussianRational(0, 2), XY) == "i*x - 2*i*y");
  CHECK(to_string(x * GaussianRational(-1, 1), XY) == "(-1+i)*x");
  CHECK(to_string(x * GaussianRational::from_fraction(1, 2), XY) == "(1/2)*x");
}

TEST_CASE("random expressions parse to their value and round-trip") {
  PolyGen gen(20261015);
  const std::vector<Complex> point{{0.7, -0.3}, {-0.4, 0.9}, {0.25, 0.5}};
  ExprGen exprs{gen, point};
  for (int trial = 0; trial < 1000; ++trial) {
    const auto [text, value] = exprs.expression(2);
    const Polynomial p = parse_polynomial(XYZ, text);
    const Complex got = p.evaluate(point);
    CHECK_MESSAGE(std::abs(got - value) <= 1e-9 * (1.0 + std::abs(value)), text);
    const std::string printed = to_string(p, XYZ);
    CHECK_MESSAGE(parse_polynomial(XYZ, printed) == p, text, " -> ", printed);
  }
}

TEST_CASE("random Gaussian-integer polynomials round-trip") {
  PolyGen gen(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const Polynomial p = gen.poly(3, 4, 6) * GaussianRational(2);
    CHECK(parse_polynomial(XYZ, to_string(p, XYZ)) == p);
  }
}

TEST_CASE("occupancy grid CSV") {
  SamplerConfig cfg;
  cfg.grid_bins_per_axis = 2;
  cfg.samples = 5000;
  const OccupancyReport r = ball_image_occupancy(parse_map_germ(XY, "x", "x*y"), cfg);
  std::ostringstream out;
  write_occupancy_grid(r, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "re_u,im_u,re_v,im_v,count");
  std::size_t rows = 0;
  std::uint64_t total = 0;
  while (std::getline(in, line)) {
    ++rows;
    total += std::stoull(line.substr(line.rfind(',') + 1));
  }
  CHECK(rows == 16);
  CHECK(total == r.hits_in_target);

  const double c = r.target_radius / 2.0;
  CHECK(out.str().find(exact_double(-c) + "," + exact_double(-c) + "," + exact_double(-c) + "," + exact_double(-c)) !=
        std::string::npos);
  CHECK(std::stod(exact_double(0.1 / 3.0)) == 0.1 / 3.0);
}

TEST_CASE("empty-hit report still emits every bin") {
  OccupancyReport r;
  r.bins_per_axis = 3;
  r.target_radius = 0.01;
  r.hit_histogram.assign(81, 0);
  const auto path = std::filesystem::temp_directory_path() / "locimage_empty_grid.csv";
  emit_occupancy_grid(r, path);
  const std::string text = slurp(path);
  std::filesystem::remove(path);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line.substr(line.rfind(',') + 1) == "0");
  }
  CHECK(rows == 81);

  r.hit_histogram.pop_back();
  std::ostringstream sink;
  CHECK(code_of([&] { write_occupancy_grid(r, sink); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([&] { emit_occupancy_grid(r, "/nonexistent-dir/grid.csv"); }) == ErrorCode::Io);
}

TEST_CASE("corpus loader") {
  const Corpus c = parse_corpus(R"(
seed: 5
search: {max_degree: 1, grid: ["-1", "i"]}
entries:
  - name: a
    variables: [x, y]
    f: "x"
    g: "x*y"
    expected_status: NotAGerm
    expected_witness_kind: ContainmentNonvanishingJacobian
    expected_gap_lines: [["-1", "1"], ["1", "0"]]
    expected_prop_crit: Inconclusive
    probes:
      - {kind: stability, eps1: 0.2, eps2: 0.05, baseline: a, min_baseline_ratio: 2}
    note: test
)");
  CHECK(c.seed == 5);
  CHECK(c.search.max_degree == 1);
  CHECK(c.search.grid == std::vector<GaussianRational>{GaussianRational(-1), GaussianRational::i()});
  REQUIRE(c.entries.size() == 1);
  const CorpusEntry& e = c.entries[0];
  CHECK(e.expected_status == Status::NotAGerm);
  REQUIRE(e.expected_gap_lines);
  CHECK(*e.expected_gap_lines == std::vector<ProjectiveRatio>{ProjectiveRatio(-1, 1), ProjectiveRatio(1, 0)});
  CHECK(e.expected_prop_crit == PropCritStatus::Inconclusive);
  REQUIRE(e.probes.size() == 1);
  CHECK(e.probes[0].kind == ProbeSpec::Kind::Stability);
  CHECK(e.probes[0].sampler(9).seed == 9);
  CHECK(e.germ() == parse_map_germ(XY, "x", "x*y"));

  CHECK(parse_corpus("").entries.empty());
  CHECK(parse_corpus("entries: []").entries.empty());

  const std::string entry = "entries:\n  - {name: a, variables: [x], f: x, g: x, expected_status: CurveImage, "
                            "expected_witness_kind: CurveEquation";
  CHECK_NOTHROW(parse_corpus(entry + "}"));
  CHECK(code_of([&] { parse_corpus(entry + ", colour: red}"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] {
          parse_corpus("entries: [{name: a, variables: [x], f: x, g: x, expected_status: Open, "
                       "expected_witness_kind: None}]");
        }) == ErrorCode::SyntaxError);
  CHECK(code_of([&] { parse_corpus(entry + "}\n  - {name: a, variables: [x], f: x, g: x, expected_status: "
                                             "CurveImage, expected_witness_kind: CurveEquation}"); }) ==
        ErrorCode::SyntaxError);
  CHECK(code_of([&] { parse_corpus(entry + ", probes: [{kind: stability, eps1: 0.1, eps2: 0.2}]}"); }) ==
        ErrorCode::SyntaxError);
  CHECK(code_of([&] { parse_corpus(entry + ", probes: [{kind: occupancy, control: b, control_max_occupancy: 1}]}"); }) ==
        ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_corpus("entries: [unclosed"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { load_corpus("/nonexistent/corpus.yaml"); }) == ErrorCode::Io);
}

TEST_CASE("run_corpus flags mismatches and input errors") {
  const Corpus c = parse_corpus(R"(
entries:
  - {name: ok, variables: [x, y], f: x, g: y, expected_status: LocallyOpen, expected_witness_kind: CodimTwo}
  - {name: wrong, variables: [x, y], f: x, g: "x*y", expected_status: LocallyOpen, expected_witness_kind: CodimTwo}
)");
  const CorpusRun run = run_corpus(c);
  REQUIRE(run.entries.size() == 2);
  CHECK(run.entries[0].passed);
  CHECK_FALSE(run.entries[1].passed);
  CHECK(run.entries[1].mismatches.size() == 2);
  CHECK(run.exit_code() == 1);
  const Json j = run.to_json();
  CHECK(j["summary"]["failed"] == 1);
  CHECK(j["entries"][1]["passed"] == false);

  const Corpus bad = parse_corpus(
      "entries:\n  - {name: bad, variables: [x], f: 'x+1', g: x, expected_status: CurveImage, "
      "expected_witness_kind: CurveEquation}");
  const CorpusRun bad_run = run_corpus(bad);
  CHECK(bad_run.entries[0].input_error);
  CHECK(bad_run.exit_code() == 2);

  const CorpusRun empty = run_corpus(parse_corpus(""));
  CHECK(empty.entries.empty());
  CHECK(empty.exit_code() == 0);
  CHECK(empty.to_json()["summary"]["total"] == 0);
}

TEST_CASE("classify report serializes the witness exactly") {
  ClassifyRequest req;
  req.variables = XY;
  req.f = "x*(x+y)";
  req.g = "x*y";
  const Json j = run_classify(req);
  CHECK(j["input"]["f"] == "x^2 + x*y");
  CHECK(j["verdict"]["status"] == "NotAGerm");
  CHECK(j["verdict"]["witness"]["kind"] == "GapLine");
  CHECK(j["verdict"]["witness"]["ratio"]["alpha"] == "-1/1");
  CHECK(j["verdict"]["witness"]["ratio"]["beta"] == "1/1");
  CHECK(j["verdict"]["witness"]["line"] == "u - v");
  CHECK_FALSE(j.contains("timing"));
  CHECK_FALSE(j.contains("probe"));
  CHECK(run_classify(req).dump() == j.dump());

  req.f = "(x+y)^2";
  req.g = "(x+y)^3";
  const Json cusp = run_classify(req);
  CHECK(cusp["verdict"]["witness"]["phi"] == "u^3 - v^2");
  CHECK(cusp["verdict"]["groebner"]["buchberger_certificate"] == true);

  req.f = "x";
  req.g = "x*y";
  req.probe = true;
  req.timing = true;
  const Json probed = run_classify(req);
  CHECK(probed.contains("probe"));
  CHECK(probed.contains("timing"));

  CHECK(error_json(Error(ErrorCode::NotThroughOrigin, "m"))["error"]["code"] == "not_through_origin");
}
