#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "locimage/corpus.hpp"
#include "locimage/report.hpp"

namespace locimage {

struct RunOptions {
  bool probes = true;
  bool timing = false;
  std::optional<std::uint64_t> seed;       // overrides the corpus seed
  std::optional<SearchParams> search;      // overrides the corpus search bound
};

struct ProbeOutcome {
  ProbeSpec::Kind kind = ProbeSpec::Kind::Occupancy;
  bool passed = true;
  std::vector<std::string> failures;
  Json detail;
};

struct EntryResult {
  std::string name;
  bool passed = false;
  bool input_error = false;
  std::vector<std::string> mismatches;
  std::optional<MapGerm> germ;
  std::optional<Verdict> verdict;
  std::optional<GapLineSearch> gap_lines;  // when the entry lists expected gap lines
  std::vector<ProbeOutcome> probes;
  double seconds = 0.0;
  Json report;
};

struct CorpusRun {
  std::uint64_t seed = 1;
  std::vector<EntryResult> entries;

  bool all_passed() const;
  /// 0 all pass, 1 a classification or probe mismatch, 2 an input error.
  int exit_code() const;
  /// {"seed", "entries": [...], "summary": {...}}.
  Json to_json() const;
};

CorpusRun run_corpus(const Corpus& corpus, const RunOptions& options = {});

/// Fixed-width result table, one row per entry.
void print_table(const CorpusRun& run, std::ostream& out);

}  // namespace locimage
