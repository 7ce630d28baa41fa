#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "locimage/algebra.hpp"
#include "locimage/groebner.hpp"
#include "locimage/map_germ.hpp"
#include "locimage/probe.hpp"

namespace locimage {

/// A point [alpha : beta] of P^1 over Q(i), naming the target line
/// beta*u + alpha*v = 0. Canonical form: beta = 1 when beta != 0, otherwise
/// alpha = 1.
class ProjectiveRatio {
public:
  /// Throws Error(ZeroInput) for (0, 0).
  ProjectiveRatio(GaussianRational alpha, GaussianRational beta);

  const GaussianRational& alpha() const { return alpha_; }
  const GaussianRational& beta() const { return beta_; }

  /// beta*f_hat + alpha*g_hat.
  Polynomial pencil(const Polynomial& f_hat, const Polynomial& g_hat) const;

  friend bool operator==(const ProjectiveRatio&, const ProjectiveRatio&) = default;

private:
  GaussianRational alpha_;
  GaussianRational beta_;
};

/// A ratio that was seen repeatedly but has no Gaussian-rational
/// representative within the denominator bound. Larger component is 1.
struct NumericRatio {
  Complex alpha;
  Complex beta;
};

/// Nonzero phi in C[u, v] with phi(0, 0) = 0, scaled so that its leading
/// coefficient (degrevlex) is 1.
class PlaneCurveCandidate {
public:
  explicit PlaneCurveCandidate(Polynomial phi);

  const Polynomial& phi() const { return phi_; }

  friend bool operator==(const PlaneCurveCandidate&, const PlaneCurveCandidate&) = default;

private:
  Polynomial phi_;
};

/// Best rational approximation with denominator <= max_denominator, kept only
/// if it lies within `tolerance` of x.
std::optional<Rational> rationalize(double x, std::int64_t max_denominator, double tolerance);
std::optional<GaussianRational> rationalize(Complex z, std::int64_t max_denominator, double tolerance);

struct SamplingStats {
  std::uint64_t seed = 0;
  unsigned lines_per_attempt = 0;
  unsigned attempts = 0;
  std::uint64_t roots = 0;
  std::uint64_t usable_points = 0;
  std::uint64_t degenerate_points = 0;
  std::uint64_t clusters = 0;
  std::uint64_t repeated_clusters = 0;
  double cluster_tolerance = 0.0;
};

/// Ratio of a cluster hit by at least two lines.
struct RepeatedRatio {
  std::optional<ProjectiveRatio> exact;  // rationalized representative
  NumericRatio numeric;
  unsigned lines = 0;  // distinct lines that hit the cluster
};

/// Random-line sampling of Z(h): ratios [f_hat(p) : -g_hat(p)] at points p
/// of Z(h) on random affine lines, clustered on P^1. Clusters hit by two or
/// more lines are the ratios that stay constant along a component of Z(h).
struct LineSample {
  std::vector<RepeatedRatio> repeated;
  SamplingStats stats;
};

/// Throws Error(Precondition) unless h(0) = 0 and neither cofactor is a unit,
/// Error(SamplingFailed) if no line yields a usable point in max_retries
/// attempts.
LineSample sample_ratios_on_zero_set(const GcdDecomposition& dec, const SamplerConfig& cfg);

/// (Z(beta*f_hat + alpha*g_hat), 0) ⊆ (Z(h), 0). Throws Error(Precondition)
/// when a cofactor is a unit or h(0) != 0.
bool is_gap_line(const GcdDecomposition& dec, const ProjectiveRatio& r);

struct GapLineSearch {
  std::vector<ProjectiveRatio> verified;
  std::vector<NumericRatio> unverified_numeric;
  SamplingStats coverage;
};

GapLineSearch find_gap_lines(const GcdDecomposition& dec, const SamplerConfig& cfg);

enum class PropCritStatus { Established, GapLineFound, Inconclusive };

struct PropCritResult {
  PropCritStatus status = PropCritStatus::Inconclusive;
  std::optional<ProjectiveRatio> gap_line;
  /// Repeated ratios whose pencil shares no factor through 0 with h.
  std::vector<ProjectiveRatio> verified_absent;
  std::string reason;
  SamplingStats stats;
};

PropCritResult prop_crit_check(const GcdDecomposition& dec, const SamplerConfig& cfg);

/// (Z(phi(f, g)), 0) ⊆ (Z(h), 0); false when h(0) != 0. Throws
/// Error(ImageContainer) when phi(f, g) = 0, i.e. Z(phi) contains the image.
bool is_gap_curve(const MapGerm& germ, const GcdDecomposition& dec, const PlaneCurveCandidate& c);

struct SearchParams {
  unsigned max_degree = 2;
  std::vector<GaussianRational> grid{-2, -1, 0, 1, 2};
};

struct SearchStats {
  unsigned max_degree = 0;
  std::uint64_t candidates = 0;
  std::uint64_t image_containers = 0;  // candidates with phi(f, g) = 0
};

struct GapCurveSearch {
  std::vector<PlaneCurveCandidate> found;
  SearchStats stats;
};

/// Every phi = sum c_ij u^i v^j over 1 <= i+j <= max_degree whose first
/// nonzero coefficient (descending degrevlex) is 1 and whose other
/// coefficients come from grid ∪ {0}, kept when it is a gap curve.
GapCurveSearch bounded_gap_curve_search(const MapGerm& germ, const GcdDecomposition& dec, const SearchParams& params);

enum class Status { LocallyOpen, CurveImage, NotAGerm, Undetermined };
enum class SubflatLabel { Subflat, NotSubflat, Unknown };

std::string_view status_name(Status s);
std::string_view subflat_name(SubflatLabel s);
std::optional<Status> parse_status(std::string_view name);

struct CodimTwoWitness {};

struct PropCritCertificate {
  std::vector<ProjectiveRatio> verified_absent;
  SamplingStats stats;
};

struct GapLineWitness {
  ProjectiveRatio ratio;
};

struct GapCurveWitness {
  PlaneCurveCandidate curve;
};

/// Z(inner) ⊆ Z(outer) as germs, and a 2x2 Jacobian minor that is not
/// identically zero.
struct ContainmentWitness {
  enum class Direction { FInG, GInF } direction;
  JacobianMinor minor;
};

struct CurveEquationWitness {
  Polynomial phi;
};

struct ProbeOnlyWitness {
  OccupancyReport occupancy;
};

struct NoWitness {};

using Witness = std::variant<NoWitness, CodimTwoWitness, PropCritCertificate, GapLineWitness, GapCurveWitness,
                             ContainmentWitness, CurveEquationWitness, ProbeOnlyWitness>;

std::string_view witness_kind(const Witness& w);

struct Verdict {
  Status status = Status::Undetermined;
  Witness witness;
  SubflatLabel subflat_label = SubflatLabel::Unknown;
  std::string rationale;
  GcdDecomposition decomposition;
  std::optional<PropCritResult> prop_crit;
  std::optional<SearchStats> search;
  std::optional<GroebnerBasis> elimination_basis;  // CurveImage only
};

Verdict classify(const MapGerm& germ, const SamplerConfig& cfg, const SearchParams& search = {});

/// Replaces a NoWitness on an Undetermined verdict with probe evidence.
void attach_probe_evidence(Verdict& v, OccupancyReport report);

/// Re-runs the defining check of the verdict's witness.
bool recheck_witness(const MapGerm& germ, const Verdict& v);

}  // namespace locimage
