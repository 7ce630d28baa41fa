#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "locimage/classifier.hpp"
#include "locimage/error.hpp"

namespace locimage {

/// Keys keep insertion order so that reports read top-down.
using Json = nlohmann::ordered_json;

/// Target ring variable names used for phi in every report.
const std::vector<std::string>& target_variables();

Json ratio_json(const ProjectiveRatio& r);
Json numeric_ratio_json(const NumericRatio& r);
Json sampling_stats_json(const SamplingStats& s);
Json decomposition_json(const GcdDecomposition& dec, const std::vector<std::string>& vars);
Json witness_json(const Witness& w, const std::vector<std::string>& vars);
Json prop_crit_json(const PropCritResult& r);
Json gap_line_search_json(const GapLineSearch& s);
Json search_stats_json(const SearchStats& s);
Json occupancy_json(const OccupancyReport& r);
Json stability_json(const StabilityReport& r);
Json residual_json(const ResidualReport& r);
Json error_json(const std::exception& e);

/// Echo of the input: name, variables, canonical f and g, n.
Json input_json(const std::string& name, const std::vector<std::string>& vars, const MapGerm& germ);

/// status, subflat_label, rationale, witness, decomposition, intersection
/// case, prop_crit, gap_curve_search, groebner.
Json verdict_json(const MapGerm& germ, const Verdict& v, const std::vector<std::string>& vars);

struct ClassifyRequest {
  std::string name;
  std::vector<std::string> variables;
  std::string f;
  std::string g;
  SamplerConfig sampler;
  SearchParams search;
  bool probe = false;  // attach an occupancy probe at the sampler settings
  bool timing = false;
};

/// Full report for one germ. Input errors propagate as exceptions.
Json run_classify(const ClassifyRequest& request);

/// CSV with header "re_u,im_u,re_v,im_v,count" and one row per bin, bin
/// centres at full double precision.
void write_occupancy_grid(const OccupancyReport& report, std::ostream& out);
/// Throws Error(Io) when the file cannot be written.
void emit_occupancy_grid(const OccupancyReport& report, const std::filesystem::path& path);

/// Shortest text that reads back to the same double.
std::string exact_double(double x);

}  // namespace locimage
