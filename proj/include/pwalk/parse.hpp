#pragma once

#include "pwalk/mpoly.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace pwalk {

/// Syntax or identifier error with the byte offset where it was detected.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/**
 * Parses a polynomial expression over the declared variables.
 *
 *   expr   := term (("+"|"-") term)*
 *   term   := factor (("*" factor) | ("/" nonneg-int))*
 *   factor := "-" factor | base ("^" nonneg-int)?
 *   base   := nonneg-int | identifier | "(" expr ")"
 *
 * Division is by integer literals only. "-x^2" is -(x^2).
 */
MPoly parse_poly(std::string_view text, const std::vector<std::string>& vars);

/// Identifiers in order of first appearance; used when no universe is declared.
std::vector<std::string> collect_identifiers(std::string_view text);

/// Comma-separated expressions over one universe (a PolyVector on the wire).
PolyVector parse_poly_list(std::string_view text, const std::vector<std::string>& vars);

/// Splits on a separator, trimming whitespace, honouring parentheses and brackets.
std::vector<std::string> split_top_level(std::string_view text, char sep);

std::string trim(std::string_view s);

}  // namespace pwalk
