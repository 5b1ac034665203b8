#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "tautres/multipoly.hpp"

namespace tautres {

struct ParseError : std::runtime_error {
  std::size_t offset;
  ParseError(const std::string& msg, std::size_t off)
      : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

struct ExprNode {
  enum class Kind { Number, Symbol, Add, Sub, Mul, Pow, Neg } kind;
  Rational value;      // Number
  std::string prefix;  // Symbol: letters, e.g. "c" or "z"
  int index = 0;       // Symbol: trailing integer
  unsigned exponent = 0;
  std::vector<std::shared_ptr<const ExprNode>> kids;
};

using ExprPtr = std::shared_ptr<const ExprNode>;

// expr := ['-'] term (('+'|'-') term)*
// term := factor ('*' factor)*
// factor := atom ('^' posint)*
// atom := rational | symbol | '(' expr ')'       symbol := letters integer
// Only symbols whose letter prefix is in `prefixes` are accepted.
ExprPtr parse_expression(const std::string& source, const std::vector<std::string>& prefixes);

MultiPoly evaluate_expression(const ExprNode& node,
                              const std::function<MultiPoly(const std::string& prefix, int index)>& symbol);

void collect_symbols(const ExprNode& node, std::vector<std::pair<std::string, int>>& out);

}  // namespace tautres
