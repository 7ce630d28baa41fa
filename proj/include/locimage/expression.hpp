#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "locimage/error.hpp"
#include "locimage/map_germ.hpp"
#include "locimage/polynomial.hpp"

namespace locimage {

/// Syntax error at a 1-based line and column of the input text.
class ParseError : public Error {
public:
  ParseError(ErrorCode code, std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// Grammar:
///   expression := sign? term (('+' | '-') term)*
///   term       := factor ('*' factor)*
///   factor     := base ('^' positive-integer)?
///   base       := variable | integer | 'i' | '(' expression ')'
/// Variables come from `vars` (position = variable index); 'i' is the
/// imaginary unit and cannot be declared as a variable. Multiplication needs
/// an explicit '*'.
Polynomial parse_polynomial(const std::vector<std::string>& vars, std::string_view text);

/// Throws ParseError on bad syntax or an undeclared name, Error(NotThroughOrigin)
/// for a nonzero constant term, Error(ConstantMap) for f = g = 0.
MapGerm parse_map_germ(const std::vector<std::string>& vars, std::string_view f_text, std::string_view g_text);

/// Canonical text in the grammar above. Coefficients outside Z[i] print as
/// "(p/q)" or "(p/q+r/s*i)"; that form is for display and does not parse.
std::string to_string(const Polynomial& p, const std::vector<std::string>& vars);

/// A constant in the same grammar with no variables, e.g. "-1", "2*i",
/// "(1+i)*3".
GaussianRational parse_gaussian(std::string_view text);

/// Comma-separated identifiers, e.g. "x,y,z".
std::vector<std::string> parse_variable_list(std::string_view text);

}  // namespace locimage
