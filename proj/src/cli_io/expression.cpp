#include "locimage/expression.hpp"

#include <algorithm>
#include <cctype>

namespace locimage {
namespace {

constexpr std::uint32_t kMaxExponent = 1000;

bool is_identifier_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_identifier_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_identifier(std::string_view s) {
  return !s.empty() && is_identifier_start(s.front()) && std::all_of(s.begin(), s.end(), is_identifier_char);
}

void check_variables(const std::vector<std::string>& vars) {
  if (vars.empty()) throw Error(ErrorCode::Precondition, "at least one variable is required");
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (!is_identifier(vars[k])) throw Error(ErrorCode::SyntaxError, "invalid variable name '" + vars[k] + "'");
    if (vars[k] == "i") throw Error(ErrorCode::SyntaxError, "'i' is the imaginary unit and cannot be a variable");
    if (std::find(vars.begin(), vars.begin() + static_cast<long>(k), vars[k]) != vars.begin() + static_cast<long>(k))
      throw Error(ErrorCode::SyntaxError, "variable '" + vars[k] + "' declared twice");
  }
}

class Parser {
public:
  Parser(const std::vector<std::string>& vars, std::size_t nvars, std::string_view text)
      : vars_(vars), nvars_(nvars), text_(text) {}

  Polynomial parse() {
    Polynomial p = expression();
    skip_space();
    if (pos_ < text_.size()) fail(ErrorCode::SyntaxError, std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

private:
  Polynomial expression() {
    bool negate = false;
    if (peek('+') || peek('-')) negate = text_[pos_++] == '-';
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (peek('*')) {
      ++pos_;
      acc *= factor();
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial b = base();
    if (!peek('^')) return b;
    ++pos_;
    skip_space();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail(ErrorCode::SyntaxError, "expected a positive integer exponent");
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const mpz_class e(std::string(text_.substr(start, pos_ - start)));
    if (e == 0) fail_at(start, ErrorCode::SyntaxError, "exponent must be positive");
    if (e > kMaxExponent) fail_at(start, ErrorCode::SyntaxError, "exponent exceeds " + std::to_string(kMaxExponent));
    return b.pow(static_cast<unsigned>(e.get_ui()));
  }

  Polynomial base() {
    skip_space();
    if (pos_ >= text_.size()) fail(ErrorCode::SyntaxError, "unexpected end of input");
    const std::size_t start = pos_;
    const char c = text_[pos_];
    const std::size_t n = nvars_;
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (!peek(')')) fail(ErrorCode::SyntaxError, "expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const mpz_class value(std::string(text_.substr(start, pos_ - start)));
      return Polynomial::constant(n, GaussianRational(Rational(value)));
    }
    if (is_identifier_start(c)) {
      while (pos_ < text_.size() && is_identifier_char(text_[pos_])) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "i") return Polynomial::constant(n, GaussianRational::i());
      const auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) fail_at(start, ErrorCode::UnknownVariable, "unknown variable '" + std::string(name) + "'");
      return Polynomial::variable(n, static_cast<std::size_t>(it - vars_.begin()));
    }
    fail(ErrorCode::SyntaxError, std::string("unexpected '") + c + "'");
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(ErrorCode code, const std::string& message) const { fail_at(pos_, code, message); }

  [[noreturn]] void fail_at(std::size_t at, ErrorCode code, const std::string& message) const {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t k = 0; k < at && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(code, line, column, message);
  }

  const std::vector<std::string>& vars_;
  std::size_t nvars_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string rational_text(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return "(" + q.get_num().get_str() + "/" + q.get_den().get_str() + ")";
}

std::string monomial_text(const Monomial& m, const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t k = 0; k < m.nvars(); ++k) {
    if (m[k] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[k];
    if (m[k] > 1) out += "^" + std::to_string(m[k]);
  }
  return out;
}

// Sign and magnitude text of a coefficient; the magnitude never starts with
// a sign unless it is parenthesized.
std::pair<bool, std::string> coefficient_text(const GaussianRational& c) {
  if (c.is_real()) return {c.re() < 0, rational_text(abs(c.re()))};
  if (c.re() == 0) {
    const Rational m = abs(c.im());
    return {c.im() < 0, m == 1 ? "i" : rational_text(m) + "*i"};
  }
  const Rational m = abs(c.im());
  std::string inner = (c.re() < 0 ? "-" : "") + rational_text(abs(c.re()));
  inner += c.im() < 0 ? "-" : "+";
  inner += m == 1 ? "i" : rational_text(m) + "*i";
  return {false, "(" + inner + ")"};
}

}  // namespace

ParseError::ParseError(ErrorCode code, std::size_t line, std::size_t column, const std::string& message)
    : Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

Polynomial parse_polynomial(const std::vector<std::string>& vars, std::string_view text) {
  check_variables(vars);
  return Parser(vars, vars.size(), text).parse();
}

GaussianRational parse_gaussian(std::string_view text) {
  static const std::vector<std::string> none;
  return Parser(none, 1, text).parse().constant_term();
}

MapGerm parse_map_germ(const std::vector<std::string>& vars, std::string_view f_text, std::string_view g_text) {
  return MapGerm(parse_polynomial(vars, f_text), parse_polynomial(vars, g_text));
}

std::string to_string(const Polynomial& p, const std::vector<std::string>& vars) {
  if (vars.size() != p.nvars()) throw Error(ErrorCode::DimensionMismatch, "variable names do not match the ring");
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& t : p.terms()) {
    auto [negative, magnitude] = coefficient_text(t.coeff);
    const std::string mono = monomial_text(t.monomial, vars);
    std::string body;
    if (mono.empty()) body = magnitude;
    else if (magnitude == "1") body = mono;
    else body = magnitude + "*" + mono;
    if (out.empty()) out = (negative ? "-" : "") + body;
    else out += (negative ? " - " : " + ") + body;
  }
  return out;
}

std::vector<std::string> parse_variable_list(std::string_view text) {
  std::vector<std::string> vars;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    vars.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  check_variables(vars);
  return vars;
}

}  // namespace locimage
