#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "locimage/map_germ.hpp"
#include "locimage/polynomial.hpp"

namespace locimage {

/// Settings shared by the Monte Carlo probes and the line sampler used in
/// the gap-line search.
struct SamplerConfig {
  // Image probes.
  double epsilon = 0.1;                // source ball radius
  std::optional<double> target_radius; // defaults to epsilon^2 / 4
  std::uint64_t samples = 200'000;
  unsigned grid_bins_per_axis = 8;
  std::uint64_t seed = 1;
  unsigned max_retries = 8;

  // Random-line sampling of Z(h).
  unsigned lines = 12;
  double root_tolerance = 1e-9;
  double cluster_tolerance = 1e-6;
  std::int64_t max_denominator = 1'000'000;

  double effective_target_radius() const { return target_radius.value_or(epsilon * epsilon / 4.0); }
};

/// Counter-based pseudo-random stream: the values drawn for sample k depend
/// only on (seed, k).
class SampleStream {
public:
  SampleStream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform in [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }

private:
  std::uint64_t state_;
};

/// Sample k of the uniform distribution on the unit ball of C^n = R^{2n}
/// (rejection from the cube).
std::vector<Complex> unit_ball_sample(std::uint64_t seed, std::uint64_t index, std::size_t n);

struct OccupancyReport {
  double occupied_fraction = 0.0;
  std::uint64_t total_bins = 0;  // bins whose centre lies in the target polydisk
  std::uint64_t occupied_bins = 0;
  std::uint64_t hits_in_target = 0;
  unsigned bins_per_axis = 0;
  std::vector<std::uint64_t> hit_histogram;  // bins_per_axis^4 counts, (Re u, Im u, Re v, Im v) row-major
  double epsilon = 0.0;
  double target_radius = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Grid over the cube [-r, r]^4 holding the target polydisk |u| < r, |v| < r.
class TargetGrid {
public:
  TargetGrid(double radius, unsigned bins_per_axis);

  std::size_t bin_count() const { return static_cast<std::size_t>(bins_) * bins_ * bins_ * bins_; }
  unsigned bins_per_axis() const { return bins_; }
  double radius() const { return radius_; }

  /// Bin of (u, v), or nullopt outside the polydisk.
  std::optional<std::size_t> locate(Complex u, Complex v) const;
  bool inside_polydisk(std::size_t bin) const;
  /// Centre coordinates (Re u, Im u, Re v, Im v).
  std::array<double, 4> centre(std::size_t bin) const;

private:
  double radius_;
  unsigned bins_;
};

OccupancyReport ball_image_occupancy(const MapGerm& germ, const SamplerConfig& cfg);

struct StabilityReport {
  double divergence = 0.0;  // fraction of eps1-occupied bins not occupied at eps2
  std::vector<bool> occupied_eps1;
  std::vector<bool> occupied_eps2;
  std::uint64_t count_eps1 = 0;
  std::uint64_t count_eps2 = 0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double target_radius = 0.0;
};

/// Compares the image of two nested balls on one target grid. The eps1
/// point set contains the eps2 point set, so occupied(eps2) ⊆ occupied(eps1)
/// holds exactly.
StabilityReport germ_stability_probe(const MapGerm& germ, double eps1, double eps2, const SamplerConfig& cfg);

struct ResidualReport {
  double max_residual = 0.0;
  double mean_residual = 0.0;
  std::uint64_t samples = 0;
};

/// |phi(f(x), g(x))| over sampled x in the eps-ball.
ResidualReport curve_residual_probe(const MapGerm& germ, const Polynomial& phi, const SamplerConfig& cfg);

}  // namespace locimage
