#pragma once

// Group files: a JSON description of a field, indeterminates and generator
// matrices whose entries are rational-function expressions.
//
//   {"p": 2, "k": 2, "defining_poly": [1, 1, 1], "vars": ["X"],
//    "generators": [[["1", "t*X"], ["0", "1"]]]}
//
// defining_poly is optional (coefficients low to high); without it the
// smallest irreducible polynomial of degree k is used.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "matfin/funcfield.hpp"
#include "matfin/gf.hpp"

namespace matfin {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}
  // 1-based; 0 when no position applies.
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct GroupInput {
  FieldRef field = nullptr;
  std::vector<std::string> vars;
  std::vector<FuncMat> generators;

  std::size_t degree() const { return generators.empty() ? 0 : generators.front().rows(); }
};

// Parses one entry. Identifiers are the given variable names and, for
// non-prime fields, `t`. Positions in errors are 1-based columns of `text`.
RatFunc parse_expression(std::string_view text, FieldRef field, std::span<const std::string> vars);

GroupInput parse_group_file(std::string_view text);
GroupInput load_group_file(const std::string& path);

std::string serialize_group_file(const GroupInput& group);

}  // namespace matfin
