#include "locimage/corpus.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "locimage/error.hpp"
#include "locimage/expression.hpp"

namespace locimage {
namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& message) {
  throw Error(ErrorCode::SyntaxError, "corpus: " + where + ": " + message);
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& where) {
  if (!node.IsScalar()) schema_error(where, "expected a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception& e) {
    schema_error(where, e.what());
  }
}

template <typename T>
std::optional<T> optional_scalar(const YAML::Node& map, const char* key, const std::string& where) {
  const YAML::Node node = map[key];
  if (!node) return std::nullopt;
  return scalar<T>(node, where + "." + key);
}

std::string required_string(const YAML::Node& map, const char* key, const std::string& where) {
  const YAML::Node node = map[key];
  if (!node) schema_error(where, std::string("missing '") + key + "'");
  return scalar<std::string>(node, where + "." + key);
}

void reject_unknown_keys(const YAML::Node& map, const std::set<std::string>& known, const std::string& where) {
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!known.count(key)) schema_error(where, "unknown key '" + key + "'");
  }
}

ProbeSpec parse_probe(const YAML::Node& node, const std::string& where) {
  if (!node.IsMap()) schema_error(where, "probe must be a mapping");
  reject_unknown_keys(node,
                      {"kind", "epsilon", "target_radius", "samples", "bins", "eps1", "eps2", "min_occupancy",
                       "max_occupancy", "min_divergence", "max_divergence", "max_residual", "min_residual", "baseline",
                       "min_baseline_ratio", "control", "control_max_occupancy"},
                      where);
  ProbeSpec p;
  const std::string kind = required_string(node, "kind", where);
  if (kind == "occupancy") p.kind = ProbeSpec::Kind::Occupancy;
  else if (kind == "stability") p.kind = ProbeSpec::Kind::Stability;
  else if (kind == "residual") p.kind = ProbeSpec::Kind::Residual;
  else schema_error(where, "unknown probe kind '" + kind + "'");

  p.epsilon = optional_scalar<double>(node, "epsilon", where).value_or(p.epsilon);
  p.target_radius = optional_scalar<double>(node, "target_radius", where);
  p.samples = optional_scalar<std::uint64_t>(node, "samples", where).value_or(p.samples);
  p.bins = optional_scalar<unsigned>(node, "bins", where).value_or(p.bins);
  p.eps1 = optional_scalar<double>(node, "eps1", where).value_or(0.0);
  p.eps2 = optional_scalar<double>(node, "eps2", where).value_or(0.0);
  p.min_occupancy = optional_scalar<double>(node, "min_occupancy", where);
  p.max_occupancy = optional_scalar<double>(node, "max_occupancy", where);
  p.min_divergence = optional_scalar<double>(node, "min_divergence", where);
  p.max_divergence = optional_scalar<double>(node, "max_divergence", where);
  p.max_residual = optional_scalar<double>(node, "max_residual", where);
  p.min_residual = optional_scalar<double>(node, "min_residual", where);
  p.baseline = optional_scalar<std::string>(node, "baseline", where);
  p.min_baseline_ratio = optional_scalar<double>(node, "min_baseline_ratio", where);
  p.control = optional_scalar<std::string>(node, "control", where);
  p.control_max_occupancy = optional_scalar<double>(node, "control_max_occupancy", where);

  if (p.kind == ProbeSpec::Kind::Stability && !(p.eps1 > p.eps2 && p.eps2 > 0.0))
    schema_error(where, "stability probe needs eps1 > eps2 > 0");
  if (p.baseline.has_value() != p.min_baseline_ratio.has_value())
    schema_error(where, "baseline and min_baseline_ratio go together");
  if (p.control.has_value() != p.control_max_occupancy.has_value())
    schema_error(where, "control and control_max_occupancy go together");
  return p;
}

ProjectiveRatio parse_ratio(const YAML::Node& node, const std::string& where) {
  if (!node.IsSequence() || node.size() != 2) schema_error(where, "gap line must be [alpha, beta]");
  try {
    return ProjectiveRatio(parse_gaussian(scalar<std::string>(node[0], where)),
                           parse_gaussian(scalar<std::string>(node[1], where)));
  } catch (const Error& e) {
    schema_error(where, e.what());
  }
}

CorpusEntry parse_entry(const YAML::Node& node, const std::string& where) {
  if (!node.IsMap()) schema_error(where, "entry must be a mapping");
  reject_unknown_keys(node,
                      {"name", "variables", "f", "g", "expected_status", "expected_witness_kind",
                       "expected_gap_lines", "expected_prop_crit", "expected_phi", "expected_gap_curve", "probes",
                       "note"},
                      where);
  CorpusEntry e;
  e.name = required_string(node, "name", where);
  const std::string at = "entry '" + e.name + "'";

  const YAML::Node vars = node["variables"];
  if (!vars || !vars.IsSequence() || vars.size() == 0) schema_error(at, "'variables' must be a non-empty list");
  for (const auto& v : vars) e.variables.push_back(scalar<std::string>(v, at + ".variables"));
  e.f = required_string(node, "f", at);
  e.g = required_string(node, "g", at);

  const std::string status = required_string(node, "expected_status", at);
  const auto parsed = parse_status(status);
  if (!parsed) schema_error(at, "unknown status '" + status + "'");
  e.expected_status = *parsed;
  e.expected_witness_kind = required_string(node, "expected_witness_kind", at);

  if (const YAML::Node lines = node["expected_gap_lines"]) {
    if (!lines.IsSequence()) schema_error(at, "'expected_gap_lines' must be a list");
    e.expected_gap_lines.emplace();
    for (const auto& r : lines) e.expected_gap_lines->push_back(parse_ratio(r, at + ".expected_gap_lines"));
  }
  if (const auto pc = optional_scalar<std::string>(node, "expected_prop_crit", at)) {
    e.expected_prop_crit = parse_prop_crit(*pc);
    if (!e.expected_prop_crit) schema_error(at, "unknown prop-crit status '" + *pc + "'");
  }
  e.expected_phi = optional_scalar<std::string>(node, "expected_phi", at);
  e.expected_gap_curve = optional_scalar<std::string>(node, "expected_gap_curve", at);
  e.note = optional_scalar<std::string>(node, "note", at).value_or("");

  if (const YAML::Node probes = node["probes"]) {
    if (!probes.IsSequence()) schema_error(at, "'probes' must be a list");
    for (std::size_t k = 0; k < probes.size(); ++k)
      e.probes.push_back(parse_probe(probes[k], at + ".probes[" + std::to_string(k) + "]"));
  }
  return e;
}

}  // namespace

SamplerConfig ProbeSpec::sampler(std::uint64_t seed) const {
  SamplerConfig cfg;
  cfg.epsilon = epsilon;
  cfg.target_radius = target_radius;
  cfg.samples = samples;
  cfg.grid_bins_per_axis = bins;
  cfg.seed = seed;
  return cfg;
}

std::string_view probe_kind_name(ProbeSpec::Kind k) {
  switch (k) {
    case ProbeSpec::Kind::Occupancy: return "occupancy";
    case ProbeSpec::Kind::Stability: return "stability";
    case ProbeSpec::Kind::Residual: return "residual";
  }
  return "occupancy";
}

MapGerm CorpusEntry::germ() const { return parse_map_germ(variables, f, g); }

const CorpusEntry* Corpus::find(std::string_view name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

std::string_view prop_crit_name(PropCritStatus s) {
  switch (s) {
    case PropCritStatus::Established: return "Established";
    case PropCritStatus::GapLineFound: return "GapLineFound";
    case PropCritStatus::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::optional<PropCritStatus> parse_prop_crit(std::string_view name) {
  for (auto s : {PropCritStatus::Established, PropCritStatus::GapLineFound, PropCritStatus::Inconclusive})
    if (prop_crit_name(s) == name) return s;
  return std::nullopt;
}

Corpus parse_corpus(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::SyntaxError, std::string("corpus: ") + e.what());
  }
  Corpus corpus;
  if (root.IsNull()) return corpus;
  if (!root.IsMap()) schema_error("top level", "expected a mapping");
  reject_unknown_keys(root, {"seed", "search", "entries"}, "top level");

  corpus.seed = optional_scalar<std::uint64_t>(root, "seed", "top level").value_or(1);
  if (const YAML::Node search = root["search"]) {
    reject_unknown_keys(search, {"max_degree", "grid"}, "search");
    corpus.search.max_degree = optional_scalar<unsigned>(search, "max_degree", "search").value_or(2);
    if (const YAML::Node grid = search["grid"]) {
      if (!grid.IsSequence()) schema_error("search", "'grid' must be a list");
      corpus.search.grid.clear();
      for (const auto& c : grid) corpus.search.grid.push_back(parse_gaussian(scalar<std::string>(c, "search.grid")));
    }
  }

  const YAML::Node entries = root["entries"];
  if (!entries || entries.IsNull()) return corpus;
  if (!entries.IsSequence()) schema_error("top level", "'entries' must be a list");
  for (std::size_t k = 0; k < entries.size(); ++k) {
    CorpusEntry e = parse_entry(entries[k], "entries[" + std::to_string(k) + "]");
    if (corpus.find(e.name)) schema_error("entry '" + e.name + "'", "duplicate name");
    corpus.entries.push_back(std::move(e));
  }
  for (const auto& e : corpus.entries)
    for (const auto& p : e.probes) {
      if (p.baseline && !corpus.find(*p.baseline)) schema_error("entry '" + e.name + "'", "unknown baseline entry");
      if (p.control && !corpus.find(*p.control)) schema_error("entry '" + e.name + "'", "unknown control entry");
    }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read corpus file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_corpus(text.str());
}

}  // namespace locimage
