#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "locimage/classifier.hpp"

namespace locimage {

/// One probe attached to a corpus entry, with the thresholds it must meet.
struct ProbeSpec {
  enum class Kind { Occupancy, Stability, Residual } kind = Kind::Occupancy;

  double epsilon = 0.1;
  std::optional<double> target_radius;
  std::uint64_t samples = 200'000;
  unsigned bins = 8;
  double eps1 = 0.0;  // stability only
  double eps2 = 0.0;

  std::optional<double> min_occupancy;
  std::optional<double> max_occupancy;
  std::optional<double> min_divergence;
  std::optional<double> max_divergence;
  std::optional<double> max_residual;
  std::optional<double> min_residual;

  /// Stability: compare against the first stability probe of this entry.
  std::optional<std::string> baseline;
  std::optional<double> min_baseline_ratio;
  /// Occupancy: run the same probe on this entry, which must stay below
  /// control_max_occupancy.
  std::optional<std::string> control;
  std::optional<double> control_max_occupancy;

  SamplerConfig sampler(std::uint64_t seed) const;
};

std::string_view probe_kind_name(ProbeSpec::Kind k);

struct CorpusEntry {
  std::string name;
  std::vector<std::string> variables;
  std::string f;
  std::string g;
  Status expected_status = Status::Undetermined;
  std::string expected_witness_kind;
  /// When present, find_gap_lines must return exactly these ratios.
  std::optional<std::vector<ProjectiveRatio>> expected_gap_lines;
  std::optional<PropCritStatus> expected_prop_crit;
  /// Curve equations in u, v, compared up to a scalar.
  std::optional<std::string> expected_phi;
  std::optional<std::string> expected_gap_curve;
  std::vector<ProbeSpec> probes;
  std::string note;

  MapGerm germ() const;
};

struct Corpus {
  std::uint64_t seed = 1;
  SearchParams search;
  std::vector<CorpusEntry> entries;

  const CorpusEntry* find(std::string_view name) const;
};

/// Throws Error(SyntaxError) on malformed YAML or schema violations and
/// Error(Io) when the file cannot be read.
Corpus parse_corpus(const std::string& yaml_text);
Corpus load_corpus(const std::filesystem::path& path);

std::string_view prop_crit_name(PropCritStatus s);
std::optional<PropCritStatus> parse_prop_crit(std::string_view name);

}  // namespace locimage
