#include "locimage/probe.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "locimage/error.hpp"

namespace locimage {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

void check_config(const SamplerConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw Error(ErrorCode::Precondition, "epsilon must be positive");
  if (!(cfg.effective_target_radius() > 0.0)) throw Error(ErrorCode::Precondition, "target radius must be positive");
  if (cfg.samples == 0) throw Error(ErrorCode::Precondition, "sample count must be positive");
  if (cfg.grid_bins_per_axis == 0) throw Error(ErrorCode::Precondition, "grid needs at least one bin per axis");
}

// Maps the unit-ball samples through F at radius eps and hands each image
// point to `sink`.
template <typename Sink>
void for_each_image(const MapGerm& germ, double eps, const SamplerConfig& cfg, Sink&& sink) {
  const CompiledPolynomial f(germ.f());
  const CompiledPolynomial g(germ.g());
  for (std::uint64_t k = 0; k < cfg.samples; ++k) {
    std::vector<Complex> x = unit_ball_sample(cfg.seed, k, germ.n());
    for (auto& xi : x) xi *= eps;
    sink(f(x), g(x));
  }
}

}  // namespace

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed;
  state_ = splitmix64(s) ^ (index * 0xD1B54A32D192ED03ull);
}

std::uint64_t SampleStream::next() { return splitmix64(state_); }

double SampleStream::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::vector<Complex> unit_ball_sample(std::uint64_t seed, std::uint64_t index, std::size_t n) {
  SampleStream stream(seed, index);
  std::vector<Complex> x(n);
  for (;;) {
    double r2 = 0.0;
    for (auto& xi : x) {
      const double re = stream.symmetric();
      const double im = stream.symmetric();
      xi = Complex(re, im);
      r2 += re * re + im * im;
    }
    if (r2 < 1.0) return x;
  }
}

TargetGrid::TargetGrid(double radius, unsigned bins_per_axis) : radius_(radius), bins_(bins_per_axis) {
  if (!(radius > 0.0) || bins_per_axis == 0) throw Error(ErrorCode::Precondition, "invalid target grid");
}

std::optional<std::size_t> TargetGrid::locate(Complex u, Complex v) const {
  if (!(std::abs(u) < radius_ && std::abs(v) < radius_)) return std::nullopt;
  const std::array<double, 4> coords{u.real(), u.imag(), v.real(), v.imag()};
  std::size_t idx = 0;
  for (double c : coords) {
    auto b = static_cast<long>(std::floor((c + radius_) / (2.0 * radius_) * bins_));
    b = std::clamp<long>(b, 0, static_cast<long>(bins_) - 1);
    idx = idx * bins_ + static_cast<std::size_t>(b);
  }
  return idx;
}

std::array<double, 4> TargetGrid::centre(std::size_t bin) const {
  std::array<double, 4> c{};
  const double width = 2.0 * radius_ / bins_;
  for (std::size_t axis = 4; axis-- > 0;) {
    c[axis] = -radius_ + (static_cast<double>(bin % bins_) + 0.5) * width;
    bin /= bins_;
  }
  return c;
}

bool TargetGrid::inside_polydisk(std::size_t bin) const {
  const auto c = centre(bin);
  const double r2 = radius_ * radius_;
  return c[0] * c[0] + c[1] * c[1] < r2 && c[2] * c[2] + c[3] * c[3] < r2;
}

OccupancyReport ball_image_occupancy(const MapGerm& germ, const SamplerConfig& cfg) {
  check_config(cfg);
  const TargetGrid grid(cfg.effective_target_radius(), cfg.grid_bins_per_axis);
  OccupancyReport rep;
  rep.bins_per_axis = cfg.grid_bins_per_axis;
  rep.hit_histogram.assign(grid.bin_count(), 0);
  rep.epsilon = cfg.epsilon;
  rep.target_radius = grid.radius();
  rep.samples = cfg.samples;
  rep.seed = cfg.seed;

  for_each_image(germ, cfg.epsilon, cfg, [&](Complex u, Complex v) {
    if (auto bin = grid.locate(u, v)) {
      ++rep.hit_histogram[*bin];
      ++rep.hits_in_target;
    }
  });
  for (std::size_t b = 0; b < grid.bin_count(); ++b) {
    if (!grid.inside_polydisk(b)) continue;
    ++rep.total_bins;
    if (rep.hit_histogram[b] > 0) ++rep.occupied_bins;
  }
  rep.occupied_fraction =
      rep.total_bins == 0 ? 0.0 : static_cast<double>(rep.occupied_bins) / static_cast<double>(rep.total_bins);
  return rep;
}

StabilityReport germ_stability_probe(const MapGerm& germ, double eps1, double eps2, const SamplerConfig& cfg) {
  check_config(cfg);
  if (!(eps1 > eps2 && eps2 > 0.0)) throw Error(ErrorCode::Precondition, "stability probe needs eps1 > eps2 > 0");
  const TargetGrid grid(cfg.effective_target_radius(), cfg.grid_bins_per_axis);

  StabilityReport rep;
  rep.eps1 = eps1;
  rep.eps2 = eps2;
  rep.target_radius = grid.radius();
  rep.occupied_eps1.assign(grid.bin_count(), false);
  rep.occupied_eps2.assign(grid.bin_count(), false);

  for_each_image(germ, eps2, cfg, [&](Complex u, Complex v) {
    if (auto bin = grid.locate(u, v)) rep.occupied_eps2[*bin] = true;
  });
  rep.occupied_eps1 = rep.occupied_eps2;
  for_each_image(germ, eps1, cfg, [&](Complex u, Complex v) {
    if (auto bin = grid.locate(u, v)) rep.occupied_eps1[*bin] = true;
  });

  std::uint64_t only_eps1 = 0;
  for (std::size_t b = 0; b < grid.bin_count(); ++b) {
    if (!grid.inside_polydisk(b)) continue;
    if (rep.occupied_eps1[b]) ++rep.count_eps1;
    if (rep.occupied_eps2[b]) ++rep.count_eps2;
    if (rep.occupied_eps1[b] && !rep.occupied_eps2[b]) ++only_eps1;
  }
  rep.divergence = rep.count_eps1 == 0 ? 0.0 : static_cast<double>(only_eps1) / static_cast<double>(rep.count_eps1);
  return rep;
}

ResidualReport curve_residual_probe(const MapGerm& germ, const Polynomial& phi, const SamplerConfig& cfg) {
  check_config(cfg);
  if (phi.is_zero()) throw Error(ErrorCode::ZeroInput, "residual probe needs a nonzero curve equation");
  if (phi.nvars() != 2) throw Error(ErrorCode::DimensionMismatch, "curve equation must have two variables");
  const CompiledPolynomial curve(phi);
  ResidualReport rep;
  double total = 0.0;
  for_each_image(germ, cfg.epsilon, cfg, [&](Complex u, Complex v) {
    const std::array<Complex, 2> uv{u, v};
    const double r = std::abs(curve(uv));
    rep.max_residual = std::max(rep.max_residual, r);
    total += r;
  });
  rep.samples = cfg.samples;
  rep.mean_residual = total / static_cast<double>(cfg.samples);
  return rep;
}

}  // namespace locimage
