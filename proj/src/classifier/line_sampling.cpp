#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "locimage/classifier.hpp"
#include "locimage/error.hpp"

namespace locimage {
namespace {

using Univariate = std::vector<Complex>;  // ascending powers of t

Univariate mul(const Univariate& a, const Univariate& b) {
  Univariate out(a.size() + b.size() - 1, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// p(a + t d) as a polynomial in t.
Univariate restrict_to_line(const Polynomial& p, const std::vector<Complex>& a, const std::vector<Complex>& d) {
  const std::size_t n = p.nvars();
  std::vector<std::vector<Univariate>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    powers[i].push_back(Univariate{Complex(1.0, 0.0)});
    for (std::uint32_t e = 0; e < p.degree_in(i); ++e) powers[i].push_back(mul(powers[i].back(), {a[i], d[i]}));
  }
  const auto degree = static_cast<std::size_t>(p.degree().value());
  Univariate out(degree + 1, Complex(0.0, 0.0));
  for (const auto& t : p.terms()) {
    Univariate acc{t.coeff.to_complex()};
    for (std::size_t i = 0; i < n; ++i)
      if (t.monomial[i] > 0) acc = mul(acc, powers[i][t.monomial[i]]);
    for (std::size_t k = 0; k < acc.size(); ++k) out[k] += acc[k];
  }
  return out;
}

Complex horner(const Univariate& p, Complex t, Complex* derivative) {
  Complex value(0.0, 0.0);
  Complex slope(0.0, 0.0);
  for (std::size_t k = p.size(); k-- > 0;) {
    slope = slope * t + value;
    value = value * t + p[k];
  }
  if (derivative) *derivative = slope;
  return value;
}

// Companion-matrix eigenvalues, then a few Newton steps that are kept only
// when they lower |p|.
std::vector<Complex> univariate_roots(Univariate p) {
  double scale = 0.0;
  for (const auto& c : p) scale = std::max(scale, std::abs(c));
  while (!p.empty() && std::abs(p.back()) <= 1e-12 * scale) p.pop_back();
  if (p.size() < 2) return {};
  const std::size_t k = p.size() - 1;

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t r = 1; r < k; ++r) companion(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r - 1)) = 1.0;
  for (std::size_t r = 0; r < k; ++r)
    companion(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k - 1)) = -p[r] / p[k];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) return {};

  std::vector<Complex> roots;
  for (Eigen::Index r = 0; r < solver.eigenvalues().size(); ++r) {
    Complex t = solver.eigenvalues()[r];
    Complex slope;
    double residual = std::abs(horner(p, t, &slope));
    for (int step = 0; step < 4 && residual > 0.0 && slope != Complex(0.0, 0.0); ++step) {
      const Complex next = t - horner(p, t, nullptr) / slope;
      Complex next_slope;
      const double next_residual = std::abs(horner(p, next, &next_slope));
      if (!(next_residual < residual)) break;
      t = next;
      slope = next_slope;
      residual = next_residual;
    }
    roots.push_back(t);
  }
  return roots;
}

double chordal_distance(const NumericRatio& a, const NumericRatio& b) {
  const double na = std::hypot(std::abs(a.alpha), std::abs(a.beta));
  const double nb = std::hypot(std::abs(b.alpha), std::abs(b.beta));
  return std::abs(a.alpha * b.beta - b.alpha * a.beta) / (na * nb);
}

NumericRatio normalized(const NumericRatio& r) {
  if (std::abs(r.beta) >= std::abs(r.alpha)) return {r.alpha / r.beta, Complex(1.0, 0.0)};
  return {Complex(1.0, 0.0), r.beta / r.alpha};
}

// A close rational exists for almost any real at this denominator bound, so
// the rational ratio is kept only if its pencil really shares a component
// with Z(h).
std::optional<ProjectiveRatio> exact_ratio(const NumericRatio& r, const GcdDecomposition& dec,
                                           const SamplerConfig& cfg) {
  const bool beta_is_one = r.beta == Complex(1.0, 0.0);
  const auto other = rationalize(beta_is_one ? r.alpha : r.beta, cfg.max_denominator, cfg.root_tolerance);
  if (!other) return std::nullopt;
  ProjectiveRatio exact = beta_is_one ? ProjectiveRatio(*other, 1) : ProjectiveRatio(1, *other);
  if (gcd(dec.h, exact.pencil(dec.f_hat, dec.g_hat)).is_constant()) return std::nullopt;
  return exact;
}

struct SampledPoint {
  NumericRatio ratio;
  std::size_t line;
};

class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  // The smaller index stays the root so cluster order is deterministic.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::optional<Rational> rationalize(double x, std::int64_t max_denominator, double tolerance) {
  if (!std::isfinite(x) || std::abs(x) > 1e15 || max_denominator < 1) return std::nullopt;
  // Convergents p_k/q_k of the continued fraction of x.
  long double rest = x;
  std::int64_t p_prev = 1, q_prev = 0;
  std::int64_t p = static_cast<std::int64_t>(std::floor(rest)), q = 1;
  rest -= std::floor(rest);
  while (std::abs(x - static_cast<double>(p) / static_cast<double>(q)) > tolerance && rest > 1e-18L) {
    rest = 1.0L / rest;
    if (rest > static_cast<long double>(max_denominator)) break;
    const auto a = static_cast<std::int64_t>(std::floor(rest));
    rest -= static_cast<long double>(a);
    const std::int64_t q_next = a * q + q_prev;
    if (q_next > max_denominator) break;
    const std::int64_t p_next = a * p + p_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
  }
  if (std::abs(x - static_cast<double>(p) / static_cast<double>(q)) > tolerance) return std::nullopt;
  Rational out(mpz_class(static_cast<long>(p)), mpz_class(static_cast<long>(q)));
  out.canonicalize();
  return out;
}

std::optional<GaussianRational> rationalize(Complex z, std::int64_t max_denominator, double tolerance) {
  const auto re = rationalize(z.real(), max_denominator, tolerance);
  const auto im = rationalize(z.imag(), max_denominator, tolerance);
  if (!re || !im) return std::nullopt;
  return GaussianRational(*re, *im);
}

LineSample sample_ratios_on_zero_set(const GcdDecomposition& dec, const SamplerConfig& cfg) {
  if (dec.f_hat_is_unit || dec.g_hat_is_unit)
    throw Error(ErrorCode::Precondition, "line sampling needs non-unit cofactors");
  if (!dec.h.vanishes_at_origin()) throw Error(ErrorCode::Precondition, "line sampling needs h(0) = 0");
  if (cfg.lines == 0) throw Error(ErrorCode::Precondition, "line sampling needs at least one line");

  const std::size_t n = dec.h.nvars();
  const Polynomial h = squarefree_part(dec.h);
  const CompiledPolynomial f_hat(dec.f_hat);
  const CompiledPolynomial g_hat(dec.g_hat);
  const auto cofactor_degree = static_cast<double>(
      std::max(dec.f_hat.degree().value(), dec.g_hat.degree().value()));

  LineSample out;
  out.stats.seed = cfg.seed;
  out.stats.lines_per_attempt = cfg.lines;
  out.stats.cluster_tolerance = cfg.cluster_tolerance;

  std::vector<SampledPoint> points;
  const unsigned attempts = std::max(1u, cfg.max_retries);
  for (unsigned attempt = 0; attempt < attempts && points.empty(); ++attempt) {
    ++out.stats.attempts;
    for (unsigned l = 0; l < cfg.lines; ++l) {
      const std::size_t line = static_cast<std::size_t>(attempt) * cfg.lines + l;
      SampleStream stream(cfg.seed, line);
      std::vector<Complex> a(n), d(n);
      for (auto& c : a) c = Complex(stream.symmetric(), stream.symmetric());
      for (auto& c : d) c = Complex(stream.symmetric(), stream.symmetric());

      for (const Complex t : univariate_roots(restrict_to_line(h, a, d))) {
        ++out.stats.roots;
        std::vector<Complex> p(n);
        double size = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
          p[i] = a[i] + t * d[i];
          size = std::max(size, std::abs(p[i]));
        }
        const Complex fv = f_hat(p);
        const Complex gv = g_hat(p);
        const double floor = 1e-8 * std::pow(size, cofactor_degree);
        if (std::abs(fv) < floor && std::abs(gv) < floor) {
          ++out.stats.degenerate_points;
          continue;
        }
        points.push_back({normalized({fv, -gv}), line});
      }
    }
  }
  out.stats.usable_points = points.size();
  if (points.empty()) throw Error(ErrorCode::SamplingFailed, "no usable points on Z(h) after all retries");

  DisjointSets sets(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (chordal_distance(points[i].ratio, points[j].ratio) <= cfg.cluster_tolerance) sets.unite(i, j);

  for (std::size_t i = 0; i < points.size(); ++i) {
    if (sets.find(i) != i) continue;
    ++out.stats.clusters;
    std::vector<std::size_t> lines;
    for (std::size_t j = i; j < points.size(); ++j)
      if (sets.find(j) == i) lines.push_back(points[j].line);
    std::sort(lines.begin(), lines.end());
    const auto distinct = static_cast<unsigned>(std::unique(lines.begin(), lines.end()) - lines.begin());
    if (distinct < 2) continue;
    ++out.stats.repeated_clusters;
    out.repeated.push_back({exact_ratio(points[i].ratio, dec, cfg), points[i].ratio, distinct});
  }
  return out;
}

}  // namespace locimage
