#include "locimage/report.hpp"

#include <charconv>
#include <chrono>
#include <fstream>

#include "locimage/corpus.hpp"
#include "locimage/expression.hpp"

namespace locimage {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

std::string_view case_name(IntersectionCase c) {
  return c == IntersectionCase::CodimTwo ? "CodimTwo" : "CodimOne";
}

std::string line_text(const ProjectiveRatio& r) {
  const Polynomial u = Polynomial::variable(2, 0);
  const Polynomial v = Polynomial::variable(2, 1);
  return to_string(u * r.beta() + v * r.alpha(), target_variables());
}

}  // namespace

const std::vector<std::string>& target_variables() {
  static const std::vector<std::string> uv{"u", "v"};
  return uv;
}

std::string exact_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json ratio_json(const ProjectiveRatio& r) {
  return Json{{"alpha", r.alpha().to_exact_string()}, {"beta", r.beta().to_exact_string()}};
}

Json numeric_ratio_json(const NumericRatio& r) {
  return Json{{"alpha", complex_json(r.alpha)}, {"beta", complex_json(r.beta)}};
}

Json sampling_stats_json(const SamplingStats& s) {
  return Json{{"seed", s.seed},
              {"lines_per_attempt", s.lines_per_attempt},
              {"attempts", s.attempts},
              {"roots", s.roots},
              {"usable_points", s.usable_points},
              {"degenerate_points", s.degenerate_points},
              {"clusters", s.clusters},
              {"repeated_clusters", s.repeated_clusters},
              {"cluster_tolerance", s.cluster_tolerance}};
}

Json decomposition_json(const GcdDecomposition& dec, const std::vector<std::string>& vars) {
  return Json{{"h", to_string(dec.h, vars)},
              {"f_hat", to_string(dec.f_hat, vars)},
              {"g_hat", to_string(dec.g_hat, vars)},
              {"f_hat_is_unit", dec.f_hat_is_unit},
              {"g_hat_is_unit", dec.g_hat_is_unit}};
}

Json witness_json(const Witness& w, const std::vector<std::string>& vars) {
  Json j{{"kind", std::string(witness_kind(w))}};
  std::visit(Overloaded{
                 [](const NoWitness&) {},
                 [](const CodimTwoWitness&) {},
                 [&](const PropCritCertificate& c) {
                   Json absent = Json::array();
                   for (const auto& r : c.verified_absent) absent.push_back(ratio_json(r));
                   j["verified_absent"] = std::move(absent);
                   j["sampling"] = sampling_stats_json(c.stats);
                 },
                 [&](const GapLineWitness& g) {
                   j["ratio"] = ratio_json(g.ratio);
                   j["line"] = line_text(g.ratio);
                 },
                 [&](const GapCurveWitness& g) { j["phi"] = to_string(g.curve.phi(), target_variables()); },
                 [&](const ContainmentWitness& c) {
                   j["direction"] = c.direction == ContainmentWitness::Direction::FInG ? "f_in_g" : "g_in_f";
                   j["minor"] = Json{{"i", c.minor.i}, {"j", c.minor.j}, {"value", to_string(c.minor.value, vars)}};
                 },
                 [&](const CurveEquationWitness& c) { j["phi"] = to_string(c.phi, target_variables()); },
                 [&](const ProbeOnlyWitness& p) { j["occupancy"] = occupancy_json(p.occupancy); },
             },
             w);
  return j;
}

Json prop_crit_json(const PropCritResult& r) {
  Json absent = Json::array();
  for (const auto& x : r.verified_absent) absent.push_back(ratio_json(x));
  return Json{{"status", std::string(prop_crit_name(r.status))},
              {"reason", r.reason},
              {"gap_line", r.gap_line ? ratio_json(*r.gap_line) : Json(nullptr)},
              {"verified_absent", std::move(absent)},
              {"sampling", sampling_stats_json(r.stats)}};
}

Json gap_line_search_json(const GapLineSearch& s) {
  Json verified = Json::array();
  for (const auto& r : s.verified) verified.push_back(ratio_json(r));
  Json numeric = Json::array();
  for (const auto& r : s.unverified_numeric) numeric.push_back(numeric_ratio_json(r));
  return Json{{"verified", std::move(verified)},
              {"unverified_numeric", std::move(numeric)},
              {"sampling", sampling_stats_json(s.coverage)}};
}

Json search_stats_json(const SearchStats& s) {
  return Json{{"max_degree", s.max_degree}, {"candidates", s.candidates}, {"image_containers", s.image_containers}};
}

Json occupancy_json(const OccupancyReport& r) {
  return Json{{"occupied_fraction", r.occupied_fraction},
              {"occupied_bins", r.occupied_bins},
              {"total_bins", r.total_bins},
              {"hits_in_target", r.hits_in_target},
              {"bins_per_axis", r.bins_per_axis},
              {"epsilon", r.epsilon},
              {"target_radius", r.target_radius},
              {"samples", r.samples},
              {"seed", r.seed}};
}

Json stability_json(const StabilityReport& r) {
  return Json{{"divergence", r.divergence}, {"count_eps1", r.count_eps1}, {"count_eps2", r.count_eps2},
              {"eps1", r.eps1},             {"eps2", r.eps2},             {"target_radius", r.target_radius}};
}

Json residual_json(const ResidualReport& r) {
  return Json{{"max_residual", r.max_residual}, {"mean_residual", r.mean_residual}, {"samples", r.samples}};
}

Json error_json(const std::exception& e) {
  std::string code = "internal";
  if (const auto* err = dynamic_cast<const Error*>(&e)) code = std::string(error_code_name(err->code()));
  Json inner{{"code", code}, {"message", e.what()}};
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    inner["line"] = pe->line();
    inner["column"] = pe->column();
  }
  return Json{{"error", std::move(inner)}};
}

Json input_json(const std::string& name, const std::vector<std::string>& vars, const MapGerm& germ) {
  return Json{{"name", name},
              {"variables", vars},
              {"f", to_string(germ.f(), vars)},
              {"g", to_string(germ.g(), vars)},
              {"n", germ.n()}};
}

Json verdict_json(const MapGerm& germ, const Verdict& v, const std::vector<std::string>& vars) {
  Json j{{"status", std::string(status_name(v.status))},
         {"subflat_label", std::string(subflat_name(v.subflat_label))},
         {"rationale", v.rationale},
         {"witness", witness_json(v.witness, vars)},
         {"decomposition", decomposition_json(v.decomposition, vars)},
         {"intersection_case", std::string(case_name(intersection_dimension_case(germ, v.decomposition)))}};
  j["prop_crit"] = v.prop_crit ? prop_crit_json(*v.prop_crit) : Json(nullptr);
  j["gap_curve_search"] = v.search ? search_stats_json(*v.search) : Json(nullptr);
  if (v.elimination_basis) {
    j["groebner"] = Json{{"basis_size", v.elimination_basis->generators.size()},
                         {"reduced", v.elimination_basis->reduced},
                         {"buchberger_certificate", satisfies_buchberger_criterion(*v.elimination_basis)}};
  } else {
    j["groebner"] = nullptr;
  }
  return j;
}

Json run_classify(const ClassifyRequest& request) {
  const auto start = std::chrono::steady_clock::now();
  const MapGerm germ = parse_map_germ(request.variables, request.f, request.g);
  Verdict verdict = classify(germ, request.sampler, request.search);
  const auto classified = std::chrono::steady_clock::now();

  Json report{{"input", input_json(request.name, request.variables, germ)},
              {"config",
               Json{{"seed", request.sampler.seed},
                    {"lines", request.sampler.lines},
                    {"max_degree", request.search.max_degree},
                    {"grid_size", request.search.grid.size()}}}};
  std::optional<OccupancyReport> occupancy;
  if (request.probe) {
    occupancy = ball_image_occupancy(germ, request.sampler);
    attach_probe_evidence(verdict, *occupancy);
  }
  report["verdict"] = verdict_json(germ, verdict, request.variables);
  if (occupancy) report["probe"] = Json{{"occupancy", occupancy_json(*occupancy)}};
  if (request.timing) {
    const auto done = std::chrono::steady_clock::now();
    report["timing"] = Json{{"classify_seconds", std::chrono::duration<double>(classified - start).count()},
                            {"total_seconds", std::chrono::duration<double>(done - start).count()}};
  }
  return report;
}

void write_occupancy_grid(const OccupancyReport& report, std::ostream& out) {
  const std::size_t bins = static_cast<std::size_t>(report.bins_per_axis);
  const std::size_t count = bins * bins * bins * bins;
  if (report.hit_histogram.size() != count)
    throw Error(ErrorCode::DimensionMismatch, "histogram size does not match bins_per_axis^4");
  const TargetGrid grid(report.target_radius, report.bins_per_axis);
  out << "re_u,im_u,re_v,im_v,count\n";
  for (std::size_t b = 0; b < count; ++b) {
    const auto c = grid.centre(b);
    out << exact_double(c[0]) << ',' << exact_double(c[1]) << ',' << exact_double(c[2]) << ','
        << exact_double(c[3]) << ',' << report.hit_histogram[b] << '\n';
  }
}

void emit_occupancy_grid(const OccupancyReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  write_occupancy_grid(report, out);
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace locimage
