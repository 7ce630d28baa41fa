#include "locimage/classifier.hpp"

#include <algorithm>
#include <utility>

#include "locimage/error.hpp"

namespace locimage {
namespace {

// gcd(h, beta*f_hat + alpha*g_hat) has no factor through the origin.
bool pencil_meets_h_properly(const GcdDecomposition& dec, const ProjectiveRatio& r) {
  return !gcd(dec.h, r.pencil(dec.f_hat, dec.g_hat)).vanishes_at_origin();
}

void require_case_b(const GcdDecomposition& dec) {
  if (dec.f_hat_is_unit || dec.g_hat_is_unit)
    throw Error(ErrorCode::Precondition, "gap lines need non-unit cofactors; use the containment branch");
  if (!dec.h.vanishes_at_origin()) throw Error(ErrorCode::Precondition, "gap lines need h(0) = 0");
}

Polynomial jacobian_minor(const MapGerm& germ, std::size_t i, std::size_t j) {
  return partial_derivative(germ.f(), i) * partial_derivative(germ.g(), j) -
         partial_derivative(germ.f(), j) * partial_derivative(germ.g(), i);
}

SubflatLabel subflat_for(const Verdict& v) {
  if (v.status == Status::LocallyOpen) return SubflatLabel::Subflat;
  const bool gap = std::holds_alternative<GapLineWitness>(v.witness) || std::holds_alternative<GapCurveWitness>(v.witness);
  if (v.status == Status::NotAGerm && gap) return SubflatLabel::NotSubflat;
  return SubflatLabel::Unknown;
}

}  // namespace

ProjectiveRatio::ProjectiveRatio(GaussianRational alpha, GaussianRational beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
  if (beta_.is_zero()) {
    if (alpha_.is_zero()) throw Error(ErrorCode::ZeroInput, "[0:0] is not a point of P^1");
    alpha_ = 1;
  } else {
    alpha_ /= beta_;
    beta_ = 1;
  }
}

Polynomial ProjectiveRatio::pencil(const Polynomial& f_hat, const Polynomial& g_hat) const {
  return f_hat * beta_ + g_hat * alpha_;
}

PlaneCurveCandidate::PlaneCurveCandidate(Polynomial phi) : phi_(std::move(phi)) {
  if (phi_.nvars() != 2) throw Error(ErrorCode::DimensionMismatch, "plane curve must live in C[u, v]");
  if (phi_.is_zero()) throw Error(ErrorCode::ZeroInput, "plane curve equation is zero");
  if (!phi_.vanishes_at_origin()) throw Error(ErrorCode::Precondition, "plane curve must pass through the origin");
  phi_ = phi_.monic();
}

bool is_gap_line(const GcdDecomposition& dec, const ProjectiveRatio& r) {
  require_case_b(dec);
  return zero_set_germ_included(r.pencil(dec.f_hat, dec.g_hat), dec.h);
}

GapLineSearch find_gap_lines(const GcdDecomposition& dec, const SamplerConfig& cfg) {
  require_case_b(dec);
  const LineSample sample = sample_ratios_on_zero_set(dec, cfg);
  GapLineSearch out;
  out.coverage = sample.stats;
  for (const auto& rep : sample.repeated) {
    if (!rep.exact) {
      out.unverified_numeric.push_back(rep.numeric);
    } else if (is_gap_line(dec, *rep.exact) &&
               std::find(out.verified.begin(), out.verified.end(), *rep.exact) == out.verified.end()) {
      out.verified.push_back(*rep.exact);
    }
  }
  return out;
}

PropCritResult prop_crit_check(const GcdDecomposition& dec, const SamplerConfig& cfg) {
  require_case_b(dec);
  const LineSample sample = sample_ratios_on_zero_set(dec, cfg);
  PropCritResult out;
  out.stats = sample.stats;

  for (const auto& rep : sample.repeated) {
    if (rep.exact && is_gap_line(dec, *rep.exact)) {
      out.status = PropCritStatus::GapLineFound;
      out.gap_line = rep.exact;
      out.reason = "repeated ratio is a gap line";
      return out;
    }
  }
  for (const auto& rep : sample.repeated) {
    if (!rep.exact) {
      out.status = PropCritStatus::Inconclusive;
      out.reason = "repeated ratio has no Gaussian-rational representative within the bound";
      return out;
    }
    if (!pencil_meets_h_properly(dec, *rep.exact)) {
      out.status = PropCritStatus::Inconclusive;
      out.reason = "criterion hypothesis fails, no gap line";
      return out;
    }
    out.verified_absent.push_back(*rep.exact);
  }
  out.status = PropCritStatus::Established;
  out.reason = out.verified_absent.empty() ? "no ratio is constant along a component of Z(h)"
                                           : "every repeated ratio meets Z(h) in codimension two at 0";
  return out;
}

bool is_gap_curve(const MapGerm& germ, const GcdDecomposition& dec, const PlaneCurveCandidate& c) {
  const Polynomial psi = compose_target(c.phi(), germ);
  if (psi.is_zero()) throw Error(ErrorCode::ImageContainer, "candidate curve contains the image");
  if (!dec.h.vanishes_at_origin()) return false;
  return zero_set_germ_included(psi, dec.h);
}

GapCurveSearch bounded_gap_curve_search(const MapGerm& germ, const GcdDecomposition& dec, const SearchParams& params) {
  if (params.max_degree == 0) throw Error(ErrorCode::Precondition, "gap curve search needs max_degree >= 1");
  GapCurveSearch out;
  out.stats.max_degree = params.max_degree;
  if (!dec.h.vanishes_at_origin()) return out;

  std::vector<Monomial> monomials;
  for (std::uint32_t d = 1; d <= params.max_degree; ++d)
    for (std::uint32_t i = 0; i <= d; ++i) monomials.push_back(Monomial{i, d - i});
  std::sort(monomials.begin(), monomials.end(),
            [](const Monomial& a, const Monomial& b) { return degrevlex_compare(a, b) > 0; });

  std::vector<Polynomial> f_pow{Polynomial::constant(germ.n(), 1)};
  std::vector<Polynomial> g_pow{Polynomial::constant(germ.n(), 1)};
  for (unsigned e = 0; e < params.max_degree; ++e) {
    f_pow.push_back(f_pow.back() * germ.f());
    g_pow.push_back(g_pow.back() * germ.g());
  }
  std::vector<Polynomial> images;
  for (const auto& m : monomials) images.push_back(f_pow[m[0]] * g_pow[m[1]]);

  std::vector<GaussianRational> values = params.grid;
  values.push_back(0);
  std::sort(values.begin(), values.end(), lexicographic_less);
  values.erase(std::unique(values.begin(), values.end()), values.end());

  const std::size_t count = monomials.size();
  for (std::size_t lead = 0; lead < count; ++lead) {
    // Odometer over the coefficients after the leading one.
    std::vector<std::size_t> digit(count - lead - 1, 0);
    for (;;) {
      std::vector<Term> terms{Term{monomials[lead], 1}};
      Polynomial psi = images[lead];
      for (std::size_t k = 0; k < digit.size(); ++k) {
        const GaussianRational& c = values[digit[k]];
        if (c.is_zero()) continue;
        terms.push_back(Term{monomials[lead + 1 + k], c});
        psi += images[lead + 1 + k] * c;
      }
      ++out.stats.candidates;
      if (psi.is_zero()) {
        ++out.stats.image_containers;
      } else if (zero_set_germ_included(psi, dec.h)) {
        out.found.emplace_back(Polynomial(2, std::move(terms)));
      }

      std::size_t k = 0;
      while (k < digit.size() && ++digit[k] == values.size()) digit[k++] = 0;
      if (k == digit.size()) break;
    }
  }
  return out;
}

std::string_view status_name(Status s) {
  switch (s) {
    case Status::LocallyOpen: return "LocallyOpen";
    case Status::CurveImage: return "CurveImage";
    case Status::NotAGerm: return "NotAGerm";
    case Status::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

std::string_view subflat_name(SubflatLabel s) {
  switch (s) {
    case SubflatLabel::Subflat: return "Subflat";
    case SubflatLabel::NotSubflat: return "NotSubflat";
    case SubflatLabel::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::optional<Status> parse_status(std::string_view name) {
  for (Status s : {Status::LocallyOpen, Status::CurveImage, Status::NotAGerm, Status::Undetermined})
    if (status_name(s) == name) return s;
  return std::nullopt;
}

std::string_view witness_kind(const Witness& w) {
  struct Visitor {
    std::string_view operator()(const NoWitness&) const { return "None"; }
    std::string_view operator()(const CodimTwoWitness&) const { return "CodimTwo"; }
    std::string_view operator()(const PropCritCertificate&) const { return "PropCritCertificate"; }
    std::string_view operator()(const GapLineWitness&) const { return "GapLine"; }
    std::string_view operator()(const GapCurveWitness&) const { return "GapCurve"; }
    std::string_view operator()(const ContainmentWitness&) const { return "ContainmentNonvanishingJacobian"; }
    std::string_view operator()(const CurveEquationWitness&) const { return "CurveEquation"; }
    std::string_view operator()(const ProbeOnlyWitness&) const { return "ProbeOnly"; }
  };
  return std::visit(Visitor{}, w);
}

Verdict classify(const MapGerm& germ, const SamplerConfig& cfg, const SearchParams& search) {
  Verdict v;
  v.decomposition = decompose(germ);
  const GcdDecomposition& dec = v.decomposition;

  if (germ.f().is_zero() || germ.g().is_zero()) {
    // One component vanishes: the image is the other coordinate axis.
    v.status = Status::CurveImage;
    v.witness = CurveEquationWitness{Polynomial::variable(2, germ.f().is_zero() ? 0 : 1)};
    v.rationale = "one component is identically zero; the image is a coordinate axis";
  } else if (const bool f_in_g = zero_set_germ_included(germ.f(), germ.g());
             f_in_g || zero_set_germ_included(germ.g(), germ.f())) {
    if (jacobian_rank_deficient(germ)) {
      ImageCurve ic = image_curve(germ);
      v.status = Status::CurveImage;
      v.witness = CurveEquationWitness{ic.phi};
      v.elimination_basis = std::move(ic.basis);
      v.rationale = "one zero set contains the other and the Jacobian has rank <= 1; the image is the eliminant curve";
    } else {
      v.status = Status::NotAGerm;
      v.witness = ContainmentWitness{f_in_g ? ContainmentWitness::Direction::FInG : ContainmentWitness::Direction::GInF,
                                     *first_nonzero_jacobian_minor(germ)};
      v.rationale = "one zero set contains the other but the Jacobian has rank 2";
    }
  } else if (intersection_dimension_case(germ, dec) == IntersectionCase::CodimTwo) {
    v.status = Status::LocallyOpen;
    v.witness = CodimTwoWitness{};
    v.rationale = "f and g share no factor through 0, so Z(f) ∩ Z(g) has codimension two";
  } else {
    PropCritResult pc = prop_crit_check(dec, cfg);
    switch (pc.status) {
      case PropCritStatus::GapLineFound:
        v.status = Status::NotAGerm;
        v.witness = GapLineWitness{*pc.gap_line};
        v.rationale =
            "gap line found; a gap line is a gap curve, so the image is not locally open, and a common factor "
            "through 0 without zero-set containment excludes a curve image";
        break;
      case PropCritStatus::Established:
        v.status = Status::LocallyOpen;
        v.witness = PropCritCertificate{pc.verified_absent, pc.stats};
        v.rationale = "no pencil member shares a component of Z(h) through 0 (sampled certificate)";
        break;
      case PropCritStatus::Inconclusive: {
        GapCurveSearch found = bounded_gap_curve_search(germ, dec, search);
        v.search = found.stats;
        if (!found.found.empty()) {
          v.status = Status::NotAGerm;
          // The simplest curve found: fewest terms, then lowest degree.
          const auto simplest = std::min_element(
              found.found.begin(), found.found.end(), [](const PlaneCurveCandidate& a, const PlaneCurveCandidate& b) {
                return std::pair(a.phi().term_count(), a.phi().degree().value()) <
                       std::pair(b.phi().term_count(), b.phi().degree().value());
              });
          v.witness = GapCurveWitness{*simplest};
          v.rationale =
              "openness criterion inconclusive; gap curve found, so the image is not locally open and, with a "
              "common factor through 0, not a curve";
        } else {
          v.status = Status::Undetermined;
          v.witness = NoWitness{};
          v.rationale = "openness criterion inconclusive and no gap curve within the search bound";
        }
        break;
      }
    }
    v.prop_crit = std::move(pc);
  }
  v.subflat_label = subflat_for(v);
  return v;
}

void attach_probe_evidence(Verdict& v, OccupancyReport report) {
  if (v.status == Status::Undetermined && std::holds_alternative<NoWitness>(v.witness))
    v.witness = ProbeOnlyWitness{std::move(report)};
}

bool recheck_witness(const MapGerm& germ, const Verdict& v) {
  const GcdDecomposition dec = decompose(germ);
  struct Visitor {
    const MapGerm& germ;
    const GcdDecomposition& dec;
    Status status;

    bool operator()(const NoWitness&) const { return status == Status::Undetermined; }
    bool operator()(const ProbeOnlyWitness&) const { return status == Status::Undetermined; }
    bool operator()(const CodimTwoWitness&) const {
      return status == Status::LocallyOpen && !dec.h.vanishes_at_origin();
    }
    bool operator()(const PropCritCertificate& c) const {
      if (status != Status::LocallyOpen || !dec.h.vanishes_at_origin()) return false;
      return std::all_of(c.verified_absent.begin(), c.verified_absent.end(),
                         [&](const ProjectiveRatio& r) { return pencil_meets_h_properly(dec, r); });
    }
    bool operator()(const GapLineWitness& w) const { return status == Status::NotAGerm && is_gap_line(dec, w.ratio); }
    bool operator()(const GapCurveWitness& w) const {
      return status == Status::NotAGerm && is_gap_curve(germ, dec, w.curve);
    }
    bool operator()(const ContainmentWitness& w) const {
      const bool inclusion = w.direction == ContainmentWitness::Direction::FInG
                                 ? zero_set_germ_included(germ.f(), germ.g())
                                 : zero_set_germ_included(germ.g(), germ.f());
      const Polynomial minor = jacobian_minor(germ, w.minor.i, w.minor.j);
      return status == Status::NotAGerm && inclusion && !minor.is_zero() && minor == w.minor.value;
    }
    bool operator()(const CurveEquationWitness& w) const {
      return status == Status::CurveImage && !w.phi.is_zero() && compose_target(w.phi, germ).is_zero();
    }
  };
  return std::visit(Visitor{germ, dec, v.status}, v.witness);
}

}  // namespace locimage
