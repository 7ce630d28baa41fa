#include "locimage/polynomial.hpp"

#include <algorithm>
#include <map>

#include "locimage/error.hpp"

namespace locimage {

Monomial Monomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw Error(ErrorCode::IndexOutOfRange, "variable index out of range");
  Monomial m(nvars);
  m.exps_[index] = 1;
  return m;
}

std::uint64_t Monomial::total_degree() const {
  std::uint64_t d = 0;
  for (auto e : exps_) d += e;
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (other.exps_[i] > exps_[i]) throw Error(ErrorCode::NotDivisible, "monomial does not divide");
    r.exps_[i] -= other.exps_[i];
  }
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(exps_[i], other.exps_[i]);
  return r;
}

bool Monomial::coprime_with(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  return true;
}

int degrevlex_compare(const Monomial& a, const Monomial& b) {
  const auto da = a.total_degree();
  const auto db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.nvars(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

std::uint64_t Degree::value() const {
  if (minus_inf_) throw Error(ErrorCode::ZeroInput, "degree of the zero polynomial");
  return d_;
}

namespace {

struct DescendingDegrevlex {
  bool operator()(const Monomial& a, const Monomial& b) const { return degrevlex_compare(a, b) > 0; }
};

using TermMap = std::map<Monomial, GaussianRational, DescendingDegrevlex>;

std::vector<Term> from_map(TermMap&& acc) {
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) out.push_back(Term{m, std::move(c)});
  return out;
}

Complex int_pow(Complex z, std::uint32_t e) {
  Complex r(1.0, 0.0);
  for (std::uint32_t k = 0; k < e; ++k) r *= z;
  return r;
}

}  // namespace

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) {
  if (nvars == 0) throw Error(ErrorCode::DimensionMismatch, "polynomial ring needs at least one variable");
}

Polynomial::Polynomial(std::size_t nvars, std::vector<Term> terms) : Polynomial(nvars) {
  TermMap acc;
  for (auto& t : terms) {
    if (t.monomial.nvars() != nvars)
      throw Error(ErrorCode::DimensionMismatch, "monomial length differs from variable count");
    auto [it, inserted] = acc.try_emplace(t.monomial, t.coeff);
    if (!inserted) it->second += t.coeff;
  }
  terms_ = from_map(std::move(acc));
}

Polynomial Polynomial::constant(std::size_t nvars, const GaussianRational& c) {
  Polynomial p(nvars);
  if (!c.is_zero()) p.terms_.push_back(Term{Monomial(nvars), c});
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  Polynomial p(nvars);
  p.terms_.push_back(Term{Monomial::variable(nvars, index), 1});
  return p;
}

Polynomial Polynomial::monomial(const Monomial& m, const GaussianRational& c) {
  Polynomial p(m.nvars());
  if (!c.is_zero()) p.terms_.push_back(Term{m, c});
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one());
}

Degree Polynomial::degree() const {
  if (terms_.empty()) return Degree::minus_infinity();
  return Degree::of(terms_.front().monomial.total_degree());
}

std::uint32_t Polynomial::degree_in(std::size_t var) const {
  if (var >= nvars_) throw Error(ErrorCode::IndexOutOfRange, "variable index out of range");
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial[var]);
  return d;
}

GaussianRational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coeff;
  return 0;
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw Error(ErrorCode::ZeroInput, "leading term of the zero polynomial");
  return terms_.front();
}

Polynomial Polynomial::monic() const {
  if (terms_.empty() || leading_coeff().is_one()) return *this;
  const GaussianRational inv = GaussianRational(1) / leading_coeff();
  return *this * inv;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

void Polynomial::check_same_ring(const Polynomial& q) const {
  if (nvars_ != q.nvars_)
    throw Error(ErrorCode::DimensionMismatch,
                "polynomials live in rings with " + std::to_string(nvars_) + " and " +
                    std::to_string(q.nvars_) + " variables");
}

Polynomial& Polynomial::operator+=(const Polynomial& q) {
  check_same_ring(q);
  std::vector<Term> out;
  out.reserve(terms_.size() + q.terms_.size());
  auto a = terms_.begin();
  auto b = q.terms_.begin();
  while (a != terms_.end() || b != q.terms_.end()) {
    int cmp;
    if (a == terms_.end()) cmp = -1;
    else if (b == q.terms_.end()) cmp = 1;
    else cmp = degrevlex_compare(a->monomial, b->monomial);
    if (cmp > 0) {
      out.push_back(std::move(*a++));
    } else if (cmp < 0) {
      out.push_back(*b++);
    } else {
      GaussianRational c = a->coeff + b->coeff;
      if (!c.is_zero()) out.push_back(Term{std::move(a->monomial), std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& q) { return *this += -q; }

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  p.check_same_ring(q);
  if (p.is_zero() || q.is_zero()) return Polynomial(p.nvars_);
  TermMap acc;
  for (const auto& a : p.terms_) {
    for (const auto& b : q.terms_) {
      auto [it, inserted] = acc.try_emplace(a.monomial * b.monomial, a.coeff * b.coeff);
      if (!inserted) it->second += a.coeff * b.coeff;
    }
  }
  Polynomial r(p.nvars_);
  r.terms_ = from_map(std::move(acc));
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& q) { return *this = *this * q; }

Polynomial& Polynomial::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::mul_monomial(const Monomial& m, const GaussianRational& c) const {
  Polynomial r(nvars_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  // Monomial multiplication preserves the order, so no re-sort is needed.
  for (const auto& t : terms_) r.terms_.push_back(Term{t.monomial * m, t.coeff * c});
  return r;
}

Polynomial Polynomial::coefficient_in(std::size_t var, std::uint32_t k) const {
  if (var >= nvars_) throw Error(ErrorCode::IndexOutOfRange, "variable index out of range");
  std::vector<Term> picked;
  for (const auto& t : terms_) {
    if (t.monomial[var] != k) continue;
    Monomial m = t.monomial;
    m[var] = 0;
    picked.push_back(Term{std::move(m), t.coeff});
  }
  return Polynomial(nvars_, std::move(picked));
}

Complex Polynomial::evaluate(std::span<const Complex> point) const {
  if (point.size() != nvars_)
    throw Error(ErrorCode::DimensionMismatch, "evaluation point has wrong length");
  Complex sum(0.0, 0.0);
  for (const auto& t : terms_) {
    Complex v = t.coeff.to_complex();
    for (std::size_t i = 0; i < nvars_; ++i) v *= int_pow(point[i], t.monomial[i]);
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::embed(std::size_t new_nvars, std::span<const std::size_t> positions) const {
  if (positions.size() != nvars_)
    throw Error(ErrorCode::DimensionMismatch, "embedding needs one position per variable");
  std::vector<Term> moved;
  moved.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(new_nvars);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (positions[i] >= new_nvars) throw Error(ErrorCode::IndexOutOfRange, "embedding position out of range");
      m[positions[i]] += t.monomial[i];
    }
    moved.push_back(Term{std::move(m), t.coeff});
  }
  return Polynomial(new_nvars, std::move(moved));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].monomial != b.terms_[i].monomial || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

Polynomial add(const Polynomial& p, const Polynomial& q) { return p + q; }

Polynomial mul(const Polynomial& p, const Polynomial& q) { return p * q; }

std::optional<Polynomial> try_exact_divide(const Polynomial& p, const Polynomial& q) {
  if (p.nvars() != q.nvars()) throw Error(ErrorCode::DimensionMismatch, "exact_divide: ring mismatch");
  if (q.is_zero()) throw Error(ErrorCode::ZeroInput, "exact_divide: division by the zero polynomial");
  const Term& lead = q.leading_term();
  const GaussianRational inv = GaussianRational(1) / lead.coeff;
  Polynomial rem = p;
  std::vector<Term> quotient;
  while (!rem.is_zero()) {
    const Term& lt = rem.leading_term();
    if (!lead.monomial.divides(lt.monomial)) return std::nullopt;
    Monomial m = lt.monomial / lead.monomial;
    GaussianRational c = lt.coeff * inv;
    rem -= q.mul_monomial(m, c);
    quotient.push_back(Term{std::move(m), std::move(c)});
  }
  return Polynomial(p.nvars(), std::move(quotient));
}

Polynomial exact_divide(const Polynomial& p, const Polynomial& q) {
  auto r = try_exact_divide(p, q);
  if (!r) throw Error(ErrorCode::NotDivisible, "divisor is not a factor");
  return std::move(*r);
}

Polynomial partial_derivative(const Polynomial& p, std::size_t var) {
  if (var >= p.nvars()) throw Error(ErrorCode::IndexOutOfRange, "partial_derivative: variable index out of range");
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    const auto e = t.monomial[var];
    if (e == 0) continue;
    Monomial m = t.monomial;
    m[var] = e - 1;
    out.push_back(Term{std::move(m), t.coeff * GaussianRational(static_cast<long>(e))});
  }
  return Polynomial(p.nvars(), std::move(out));
}

Complex evaluate(const Polynomial& p, std::span<const Complex> point) { return p.evaluate(point); }

Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images) {
  if (images.size() != p.nvars())
    throw Error(ErrorCode::DimensionMismatch, "substitute: need one image per variable");
  if (images.empty()) throw Error(ErrorCode::DimensionMismatch, "substitute: no images");
  const std::size_t target = images.front().nvars();
  for (const auto& im : images)
    if (im.nvars() != target) throw Error(ErrorCode::DimensionMismatch, "substitute: images in different rings");

  // Cache powers of each image; exponents are small in practice.
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t j, std::uint32_t e) -> const Polynomial& {
    auto& cache = powers[j];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[j]);
    return cache[e];
  };

  Polynomial result(target);
  for (const auto& t : p.terms()) {
    Polynomial term = Polynomial::constant(target, t.coeff);
    for (std::size_t j = 0; j < images.size(); ++j)
      if (t.monomial[j] > 0) term *= power(j, t.monomial[j]);
    result += term;
  }
  return result;
}

CompiledPolynomial::CompiledPolynomial(const Polynomial& p) : nvars_(p.nvars()) {
  coeffs_.reserve(p.term_count());
  exps_.reserve(p.term_count() * nvars_);
  for (const auto& t : p.terms()) {
    coeffs_.push_back(t.coeff.to_complex());
    for (std::size_t i = 0; i < nvars_; ++i) exps_.push_back(t.monomial[i]);
  }
}

Complex CompiledPolynomial::operator()(std::span<const Complex> point) const {
  Complex sum(0.0, 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    Complex v = coeffs_[k];
    const std::uint32_t* row = exps_.data() + k * nvars_;
    for (std::size_t i = 0; i < nvars_; ++i) v *= int_pow(point[i], row[i]);
    sum += v;
  }
  return sum;
}

}  // namespace locimage
