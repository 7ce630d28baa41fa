// locimage: classify polynomial map germs (C^n,0) -> (C^2,0) by their local image.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "locimage/corpus.hpp"
#include "locimage/expression.hpp"
#include "locimage/report.hpp"
#include "locimage/runner.hpp"

namespace fs = std::filesystem;
using namespace locimage;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct Options {
  std::string vars = "x,y";
  std::string f;
  std::string g;
  std::string name = "input";
  std::uint64_t seed = 1;
  bool json = false;
  bool probe = false;
  bool timing = false;
  unsigned max_degree = 2;
  std::string grid = "-2,-1,0,1,2";
  std::string out_dir;

  // probe
  double epsilon = 0.1;
  std::optional<double> radius;
  std::uint64_t samples = 200'000;
  unsigned bins = 8;
  std::string csv;
  std::optional<double> eps1;
  std::optional<double> eps2;
  std::string phi;

  bool no_probes = false;
  std::string corpus_file;

  bool seed_given = false;
  bool search_given = false;
};

SamplerConfig sampler(const Options& o) {
  SamplerConfig cfg;
  cfg.seed = o.seed;
  cfg.epsilon = o.epsilon;
  cfg.target_radius = o.radius;
  cfg.samples = o.samples;
  cfg.grid_bins_per_axis = o.bins;
  return cfg;
}

SearchParams search(const Options& o) {
  SearchParams p;
  p.max_degree = o.max_degree;
  p.grid.clear();
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = o.grid.find(',', start);
    p.grid.push_back(parse_gaussian(o.grid.substr(start, comma == std::string::npos ? comma : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return p;
}

fs::path output_path(const Options& o, const std::string& file) {
  if (o.out_dir.empty() || fs::path(file).is_absolute()) return file;
  fs::create_directories(o.out_dir);
  return fs::path(o.out_dir) / file;
}

void emit(const Options& o, const Json& j, const std::string& text) {
  if (o.json) std::cout << j.dump(2) << '\n';
  else std::cout << text;
}

std::string status_text(const Json& v) {
  std::string out = "status: " + v["status"].get<std::string>() + "\n";
  out += "witness: " + v["witness"]["kind"].get<std::string>() + "\n";
  out += "subflat: " + v["subflat_label"].get<std::string>() + "\n";
  out += "rationale: " + v["rationale"].get<std::string>() + "\n";
  return out;
}

int cmd_classify(const Options& o) {
  ClassifyRequest req;
  req.name = o.name;
  req.variables = parse_variable_list(o.vars);
  req.f = o.f;
  req.g = o.g;
  req.sampler = sampler(o);
  req.search = search(o);
  req.probe = o.probe;
  req.timing = o.timing;
  const Json report = run_classify(req);
  std::string text = status_text(report["verdict"]);
  if (report.contains("probe"))
    text += "occupancy: " + report["probe"]["occupancy"]["occupied_fraction"].dump() + "\n";
  emit(o, report, text);
  if (!o.out_dir.empty()) std::ofstream(output_path(o, o.name + ".json")) << report.dump(2) << '\n';
  return 0;
}

int cmd_gap_lines(const Options& o) {
  const auto vars = parse_variable_list(o.vars);
  const MapGerm germ = parse_map_germ(vars, o.f, o.g);
  const GcdDecomposition dec = decompose(germ);
  const GapLineSearch s = find_gap_lines(dec, sampler(o));
  Json j{{"input", input_json(o.name, vars, germ)},
         {"decomposition", decomposition_json(dec, vars)},
         {"gap_lines", gap_line_search_json(s)}};
  std::string text;
  for (const auto& r : s.verified)
    text += "gap line [" + r.alpha().to_exact_string() + " : " + r.beta().to_exact_string() + "]\n";
  text += std::to_string(s.verified.size()) + " verified, " + std::to_string(s.unverified_numeric.size()) +
          " numeric only\n";
  emit(o, j, text);
  return 0;
}

int cmd_gap_curve(const Options& o) {
  const auto vars = parse_variable_list(o.vars);
  const MapGerm germ = parse_map_germ(vars, o.f, o.g);
  const GcdDecomposition dec = decompose(germ);
  Json j{{"input", input_json(o.name, vars, germ)}, {"decomposition", decomposition_json(dec, vars)}};
  std::string text;
  if (!o.phi.empty()) {
    const PlaneCurveCandidate c(parse_polynomial(target_variables(), o.phi));
    const bool gap = is_gap_curve(germ, dec, c);
    j["phi"] = to_string(c.phi(), target_variables());
    j["is_gap_curve"] = gap;
    text = j["phi"].get<std::string>() + (gap ? " is a gap curve\n" : " is not a gap curve\n");
  } else {
    const GapCurveSearch s = bounded_gap_curve_search(germ, dec, search(o));
    Json found = Json::array();
    for (const auto& c : s.found) {
      found.push_back(to_string(c.phi(), target_variables()));
      text += "gap curve " + found.back().get<std::string>() + "\n";
    }
    j["found"] = std::move(found);
    j["search"] = search_stats_json(s.stats);
    text += std::to_string(s.found.size()) + " found among " + std::to_string(s.stats.candidates) + " candidates\n";
  }
  emit(o, j, text);
  return 0;
}

int cmd_image_curve(const Options& o) {
  const auto vars = parse_variable_list(o.vars);
  const MapGerm germ = parse_map_germ(vars, o.f, o.g);
  const ImageCurve ic = image_curve(germ);
  const bool certified = satisfies_buchberger_criterion(ic.basis);
  const bool vanishes = compose_target(ic.phi, germ).is_zero();
  Json j{{"input", input_json(o.name, vars, germ)},
         {"phi", to_string(ic.phi, target_variables())},
         {"basis_size", ic.basis.generators.size()},
         {"buchberger_certificate", certified},
         {"composition_vanishes", vanishes}};
  emit(o, j,
       "phi: " + j["phi"].get<std::string>() + "\nbuchberger certificate: " + (certified ? "yes" : "no") + "\n");
  return 0;
}

int cmd_probe(const Options& o) {
  const auto vars = parse_variable_list(o.vars);
  const MapGerm germ = parse_map_germ(vars, o.f, o.g);
  const SamplerConfig cfg = sampler(o);
  Json j{{"input", input_json(o.name, vars, germ)}};
  std::string text;
  if (!o.phi.empty()) {
    const Polynomial phi = parse_polynomial(target_variables(), o.phi);
    const ResidualReport r = curve_residual_probe(germ, phi, cfg);
    j["residual"] = residual_json(r);
    text = "max residual: " + exact_double(r.max_residual) + "\n";
  } else if (o.eps1 || o.eps2) {
    if (!o.eps1 || !o.eps2) throw Error(ErrorCode::Precondition, "--eps1 and --eps2 go together");
    const StabilityReport r = germ_stability_probe(germ, *o.eps1, *o.eps2, cfg);
    j["stability"] = stability_json(r);
    text = "divergence: " + exact_double(r.divergence) + "\n";
  } else {
    const OccupancyReport r = ball_image_occupancy(germ, cfg);
    j["occupancy"] = occupancy_json(r);
    text = "occupancy: " + exact_double(r.occupied_fraction) + " (" + std::to_string(r.occupied_bins) + "/" +
           std::to_string(r.total_bins) + " bins)\n";
    if (!o.csv.empty()) {
      const fs::path path = output_path(o, o.csv);
      emit_occupancy_grid(r, path);
      j["csv"] = path.string();
    }
  }
  emit(o, j, text);
  return 0;
}

int cmd_corpus(const Options& o) {
  const Corpus corpus = load_corpus(o.corpus_file);
  RunOptions opts;
  opts.probes = !o.no_probes;
  opts.timing = o.timing;
  if (o.seed_given) opts.seed = o.seed;
  if (o.search_given) opts.search = search(o);
  const CorpusRun run = run_corpus(corpus, opts);
  const Json j = run.to_json();
  if (o.json) std::cout << j.dump(2) << '\n';
  else print_table(run, std::cout);
  if (!o.out_dir.empty()) std::ofstream(output_path(o, "corpus_report.json")) << j.dump(2) << '\n';
  return run.exit_code();
}

bool is_input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::SyntaxError:
    case ErrorCode::UnknownVariable:
    case ErrorCode::NotThroughOrigin:
    case ErrorCode::ConstantMap:
    case ErrorCode::Io:
    case ErrorCode::Precondition:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::ZeroInput:
    case ErrorCode::ImageContainer:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify polynomial map germs (C^n,0) -> (C^2,0) by their local image."};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  app.add_option("--seed", o.seed, "Random seed for line sampling and probes")->capture_default_str();
  app.add_flag("--json", o.json, "Write a JSON report to stdout");
  app.add_flag("--probe", o.probe, "Attach a Monte Carlo occupancy probe (classify)");
  app.add_option("--max-degree", o.max_degree, "Degree bound of the gap-curve search")->capture_default_str();
  app.add_option("--grid", o.grid, "Coefficient grid of the gap-curve search, comma-separated")
      ->capture_default_str();
  app.add_option("--out-dir", o.out_dir, "Directory for report and CSV files");
  app.add_flag("--timing", o.timing, "Include wall-clock timing in reports");

  auto add_germ = [&](CLI::App* sub) {
    sub->add_option("--vars", o.vars, "Source variables, comma-separated")->capture_default_str();
    sub->add_option("--f", o.f, "First component")->required();
    sub->add_option("--g", o.g, "Second component")->required();
    sub->add_option("--name", o.name, "Name echoed in the report");
  };
  auto add_sampler = [&](CLI::App* sub) {
    sub->add_option("--epsilon", o.epsilon, "Source ball radius")->capture_default_str();
    sub->add_option("--radius", o.radius, "Target polydisk radius (default epsilon^2/4)");
    sub->add_option("--samples", o.samples, "Number of ball samples")->capture_default_str();
    sub->add_option("--bins", o.bins, "Grid bins per target axis")->capture_default_str();
  };

  auto* classify_cmd = app.add_subcommand("classify", "Classify the local image of a germ");
  add_germ(classify_cmd);
  add_sampler(classify_cmd);

  auto* gap_lines_cmd = app.add_subcommand("gap-lines", "Find gap lines [alpha : beta]");
  add_germ(gap_lines_cmd);

  auto* gap_curve_cmd = app.add_subcommand("gap-curve", "Check a candidate gap curve, or search a bounded family");
  add_germ(gap_curve_cmd);
  gap_curve_cmd->add_option("--phi", o.phi, "Candidate curve in u, v");

  auto* image_curve_cmd = app.add_subcommand("image-curve", "Eliminate to the image curve of a rank-1 germ");
  add_germ(image_curve_cmd);

  auto* probe_cmd = app.add_subcommand("probe", "Monte Carlo image probes");
  add_germ(probe_cmd);
  add_sampler(probe_cmd);
  probe_cmd->add_option("--csv", o.csv, "Write the occupancy grid as CSV");
  probe_cmd->add_option("--eps1", o.eps1, "Outer radius for the stability probe");
  probe_cmd->add_option("--eps2", o.eps2, "Inner radius for the stability probe");
  probe_cmd->add_option("--phi", o.phi, "Curve in u, v for the residual probe");

  auto* corpus_cmd = app.add_subcommand("corpus", "Run a corpus file and compare with expected verdicts");
  corpus_cmd->add_option("file", o.corpus_file, "Corpus YAML file")->required();
  corpus_cmd->add_flag("--no-probes", o.no_probes, "Skip Monte Carlo probes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  o.seed_given = app.count("--seed") > 0;
  o.search_given = app.count("--max-degree") > 0 || app.count("--grid") > 0;

  try {
    if (*classify_cmd) return cmd_classify(o);
    if (*gap_lines_cmd) return cmd_gap_lines(o);
    if (*gap_curve_cmd) return cmd_gap_curve(o);
    if (*image_curve_cmd) return cmd_image_curve(o);
    if (*probe_cmd) return cmd_probe(o);
    if (*corpus_cmd) return cmd_corpus(o);
  } catch (const Error& e) {
    if (o.json) std::cout << error_json(e).dump(2) << '\n';
    else std::cerr << "error (" << error_code_name(e.code()) << "): " << e.what() << '\n';
    return is_input_error(e.code()) ? kExitInput : kExitInternal;
  } catch (const std::exception& e) {
    if (o.json) std::cout << error_json(e).dump(2) << '\n';
    else std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
