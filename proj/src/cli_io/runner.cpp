#include "locimage/runner.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <map>

#include "locimage/expression.hpp"

namespace locimage {
namespace {

bool same_curve(const Polynomial& expected, const Polynomial& actual) {
  return !expected.is_zero() && !actual.is_zero() && expected.monic() == actual.monic();
}

bool same_ratio_set(const std::vector<ProjectiveRatio>& a, const std::vector<ProjectiveRatio>& b) {
  if (a.size() != b.size()) return false;
  return std::all_of(a.begin(), a.end(), [&](const ProjectiveRatio& r) {
    return std::find(b.begin(), b.end(), r) != b.end();
  });
}

std::string ratios_text(const std::vector<ProjectiveRatio>& rs) {
  std::string out = "[";
  for (std::size_t k = 0; k < rs.size(); ++k) {
    if (k) out += ", ";
    out += "(" + rs[k].alpha().to_exact_string() + ", " + rs[k].beta().to_exact_string() + ")";
  }
  return out + "]";
}

std::string fmt(double x) { return exact_double(x); }

class Runner {
public:
  Runner(const Corpus& corpus, const RunOptions& options)
      : corpus_(corpus),
        options_(options),
        seed_(options.seed.value_or(corpus.seed)),
        search_(options.search.value_or(corpus.search)) {}

  CorpusRun run() {
    CorpusRun out;
    out.seed = seed_;
    for (const auto& entry : corpus_.entries) out.entries.push_back(run_entry(entry));
    return out;
  }

private:
  SamplerConfig classifier_config() const {
    SamplerConfig cfg;
    cfg.seed = seed_;
    return cfg;
  }

  const MapGerm& germ_of(const std::string& name) {
    auto it = germs_.find(name);
    if (it == germs_.end()) it = germs_.emplace(name, corpus_.find(name)->germ()).first;
    return it->second;
  }

  /// First stability probe of `name`, cached since it may serve as a baseline
  /// for several entries.
  const StabilityReport& baseline_of(const std::string& name) {
    auto it = baselines_.find(name);
    if (it != baselines_.end()) return it->second;
    const CorpusEntry* e = corpus_.find(name);
    const auto spec = std::find_if(e->probes.begin(), e->probes.end(),
                                   [](const ProbeSpec& p) { return p.kind == ProbeSpec::Kind::Stability; });
    if (spec == e->probes.end()) throw Error(ErrorCode::Precondition, "baseline entry '" + name + "' has no stability probe");
    StabilityReport r = germ_stability_probe(germ_of(name), spec->eps1, spec->eps2, spec->sampler(seed_));
    return baselines_.emplace(name, std::move(r)).first->second;
  }

  ProbeOutcome run_probe(const CorpusEntry& entry, const MapGerm& germ, const ProbeSpec& spec, Verdict& verdict) {
    ProbeOutcome o;
    o.kind = spec.kind;
    const SamplerConfig cfg = spec.sampler(seed_);
    auto fail = [&](std::string msg) {
      o.passed = false;
      o.failures.push_back(std::move(msg));
    };
    o.detail = Json{{"kind", std::string(probe_kind_name(spec.kind))}, {"seed", seed_}};

    switch (spec.kind) {
      case ProbeSpec::Kind::Occupancy: {
        const OccupancyReport r = ball_image_occupancy(germ, cfg);
        o.detail["result"] = occupancy_json(r);
        if (spec.min_occupancy && r.occupied_fraction < *spec.min_occupancy)
          fail("occupancy " + fmt(r.occupied_fraction) + " < " + fmt(*spec.min_occupancy));
        if (spec.max_occupancy && r.occupied_fraction > *spec.max_occupancy)
          fail("occupancy " + fmt(r.occupied_fraction) + " > " + fmt(*spec.max_occupancy));
        if (spec.control) {
          const OccupancyReport c = ball_image_occupancy(germ_of(*spec.control), cfg);
          o.detail["control"] = Json{{"entry", *spec.control}, {"result", occupancy_json(c)}};
          if (c.occupied_fraction > *spec.control_max_occupancy)
            fail("control occupancy " + fmt(c.occupied_fraction) + " > " + fmt(*spec.control_max_occupancy));
        }
        attach_probe_evidence(verdict, r);
        break;
      }
      case ProbeSpec::Kind::Stability: {
        const auto first = std::find_if(entry.probes.begin(), entry.probes.end(),
                                        [](const ProbeSpec& p) { return p.kind == ProbeSpec::Kind::Stability; });
        const StabilityReport r =
            &*first == &spec ? baseline_of(entry.name) : germ_stability_probe(germ, spec.eps1, spec.eps2, cfg);
        o.detail["result"] = stability_json(r);
        if (spec.min_divergence && r.divergence < *spec.min_divergence)
          fail("divergence " + fmt(r.divergence) + " < " + fmt(*spec.min_divergence));
        if (spec.max_divergence && r.divergence > *spec.max_divergence)
          fail("divergence " + fmt(r.divergence) + " > " + fmt(*spec.max_divergence));
        if (spec.baseline) {
          const StabilityReport& b = baseline_of(*spec.baseline);
          o.detail["baseline"] = Json{{"entry", *spec.baseline}, {"result", stability_json(b)}};
          if (r.divergence < *spec.min_baseline_ratio * b.divergence)
            fail("divergence " + fmt(r.divergence) + " < " + fmt(*spec.min_baseline_ratio) + " x baseline " +
                 fmt(b.divergence));
        }
        break;
      }
      case ProbeSpec::Kind::Residual: {
        std::optional<Polynomial> phi;
        if (entry.expected_phi) phi = parse_polynomial(target_variables(), *entry.expected_phi);
        else if (const auto* w = std::get_if<CurveEquationWitness>(&verdict.witness)) phi = w->phi;
        if (!phi) {
          fail("residual probe needs expected_phi or a curve-equation witness");
          break;
        }
        const ResidualReport r = curve_residual_probe(germ, *phi, cfg);
        o.detail["phi"] = to_string(*phi, target_variables());
        o.detail["result"] = residual_json(r);
        if (spec.max_residual && r.max_residual > *spec.max_residual)
          fail("residual " + fmt(r.max_residual) + " > " + fmt(*spec.max_residual));
        if (spec.min_residual && r.max_residual < *spec.min_residual)
          fail("residual " + fmt(r.max_residual) + " < " + fmt(*spec.min_residual));
        break;
      }
    }
    o.detail["passed"] = o.passed;
    o.detail["failures"] = o.failures;
    return o;
  }

  void compare(const CorpusEntry& entry, EntryResult& res) {
    const Verdict& v = *res.verdict;
    auto& bad = res.mismatches;
    if (v.status != entry.expected_status)
      bad.push_back("status: expected " + std::string(status_name(entry.expected_status)) + ", got " +
                    std::string(status_name(v.status)));

    const std::string kind(witness_kind(v.witness));
    const bool probe_pending = !options_.probes && entry.expected_witness_kind == "ProbeOnly" && kind == "None";
    if (kind != entry.expected_witness_kind && !probe_pending)
      bad.push_back("witness: expected " + entry.expected_witness_kind + ", got " + kind);

    if (entry.expected_prop_crit) {
      if (!v.prop_crit) bad.push_back("prop_crit: expected " + std::string(prop_crit_name(*entry.expected_prop_crit)) + ", not run");
      else if (v.prop_crit->status != *entry.expected_prop_crit)
        bad.push_back("prop_crit: expected " + std::string(prop_crit_name(*entry.expected_prop_crit)) + ", got " +
                      std::string(prop_crit_name(v.prop_crit->status)));
    }
    if (entry.expected_phi) {
      const Polynomial expected = parse_polynomial(target_variables(), *entry.expected_phi);
      const auto* w = std::get_if<CurveEquationWitness>(&v.witness);
      if (!w || !same_curve(expected, w->phi)) bad.push_back("phi: expected " + *entry.expected_phi);
    }
    if (entry.expected_gap_curve) {
      const Polynomial expected = parse_polynomial(target_variables(), *entry.expected_gap_curve);
      const auto* w = std::get_if<GapCurveWitness>(&v.witness);
      if (!w || !same_curve(expected, w->curve.phi())) bad.push_back("gap curve: expected " + *entry.expected_gap_curve);
    }
    if (entry.expected_gap_lines) {
      try {
        res.gap_lines = find_gap_lines(v.decomposition, classifier_config());
        if (!same_ratio_set(*entry.expected_gap_lines, res.gap_lines->verified))
          bad.push_back("gap lines: expected " + ratios_text(*entry.expected_gap_lines) + ", got " +
                        ratios_text(res.gap_lines->verified));
      } catch (const Error& e) {
        bad.push_back(std::string("gap lines: ") + e.what());
      }
    }
    for (const auto& p : res.probes)
      for (const auto& f : p.failures) bad.push_back(std::string(probe_kind_name(p.kind)) + " probe: " + f);
  }

  Json expected_json(const CorpusEntry& entry) const {
    Json j{{"status", std::string(status_name(entry.expected_status))}, {"witness_kind", entry.expected_witness_kind}};
    if (entry.expected_prop_crit) j["prop_crit"] = std::string(prop_crit_name(*entry.expected_prop_crit));
    if (entry.expected_phi) j["phi"] = *entry.expected_phi;
    if (entry.expected_gap_curve) j["gap_curve"] = *entry.expected_gap_curve;
    if (entry.expected_gap_lines) {
      Json lines = Json::array();
      for (const auto& r : *entry.expected_gap_lines) lines.push_back(ratio_json(r));
      j["gap_lines"] = std::move(lines);
    }
    return j;
  }

  EntryResult run_entry(const CorpusEntry& entry) {
    EntryResult res;
    res.name = entry.name;
    const auto start = std::chrono::steady_clock::now();
    res.report = Json{{"name", entry.name}};
    try {
      res.germ = germ_of(entry.name);
    } catch (const std::exception& e) {
      res.input_error = true;
      res.mismatches.push_back(std::string("input: ") + e.what());
      res.report["error"] = error_json(e)["error"];
      res.report["passed"] = false;
      return res;
    }
    const MapGerm& germ = *res.germ;
    try {
      res.verdict = classify(germ, classifier_config(), search_);
      if (options_.probes)
        for (const auto& spec : entry.probes) res.probes.push_back(run_probe(entry, germ, spec, *res.verdict));
      compare(entry, res);
    } catch (const std::exception& e) {
      res.mismatches.push_back(std::string("error: ") + e.what());
      res.report["error"] = error_json(e)["error"];
    }
    res.passed = res.mismatches.empty();
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    res.report["input"] = input_json(entry.name, entry.variables, germ);
    if (res.verdict) res.report["verdict"] = verdict_json(germ, *res.verdict, entry.variables);
    if (res.gap_lines) res.report["gap_lines"] = gap_line_search_json(*res.gap_lines);
    Json probes = Json::array();
    for (const auto& p : res.probes) probes.push_back(p.detail);
    res.report["probes"] = std::move(probes);
    res.report["expected"] = expected_json(entry);
    res.report["passed"] = res.passed;
    res.report["mismatches"] = res.mismatches;
    if (options_.timing) res.report["timing"] = Json{{"seconds", res.seconds}};
    return res;
  }

  const Corpus& corpus_;
  RunOptions options_;
  std::uint64_t seed_;
  SearchParams search_;
  std::map<std::string, MapGerm> germs_;
  std::map<std::string, StabilityReport> baselines_;
};

}  // namespace

bool CorpusRun::all_passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const EntryResult& e) { return e.passed; });
}

int CorpusRun::exit_code() const {
  if (std::any_of(entries.begin(), entries.end(), [](const EntryResult& e) { return e.input_error; })) return 2;
  return all_passed() ? 0 : 1;
}

Json CorpusRun::to_json() const {
  Json list = Json::array();
  std::size_t passed = 0;
  std::size_t input_errors = 0;
  for (const auto& e : entries) {
    list.push_back(e.report);
    passed += e.passed;
    input_errors += e.input_error;
  }
  return Json{{"seed", seed},
              {"entries", std::move(list)},
              {"summary",
               Json{{"total", entries.size()},
                    {"passed", passed},
                    {"failed", entries.size() - passed},
                    {"input_errors", input_errors}}}};
}

CorpusRun run_corpus(const Corpus& corpus, const RunOptions& options) { return Runner(corpus, options).run(); }

void print_table(const CorpusRun& run, std::ostream& out) {
  out << std::left << std::setw(20) << "entry" << std::setw(14) << "status" << std::setw(34) << "witness"
      << "result\n";
  for (const auto& e : run.entries) {
    const std::string status = e.verdict ? std::string(status_name(e.verdict->status)) : "-";
    const std::string witness = e.verdict ? std::string(witness_kind(e.verdict->witness)) : "-";
    out << std::left << std::setw(20) << e.name << std::setw(14) << status << std::setw(34) << witness
        << (e.passed ? "PASS" : "FAIL") << '\n';
    for (const auto& m : e.mismatches) out << "    " << m << '\n';
  }
  std::size_t passed = 0;
  for (const auto& e : run.entries) passed += e.passed;
  out << passed << "/" << run.entries.size() << " entries passed\n";
}

}  // namespace locimage
