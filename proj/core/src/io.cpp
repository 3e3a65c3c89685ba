#include "matfin/io.hpp"

#include <cctype>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

namespace matfin {

namespace {

using json = nlohmann::json;

constexpr std::uint64_t kMaxExponent = 1u << 16;

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, FieldRef field, std::span<const std::string> vars)
      : text_(text), field_(field), vars_(vars) {}

  RatFunc parse() {
    RatFunc r = sum();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, pos_ + 1); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc constant(std::int64_t v) const { return RatFunc::constant(field_->from_int(v), vars_.size()); }

  RatFunc sum() {
    RatFunc acc = product();
    for (;;) {
      if (accept('+')) {
        acc = acc + product();
      } else if (accept('-')) {
        acc = acc - product();
      } else {
        return acc;
      }
    }
  }

  RatFunc product() {
    RatFunc acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        RatFunc d = unary();
        if (d.is_zero()) {
          pos_ = at;
          skip_space();
          fail("division by zero");
        }
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  RatFunc unary() {
    if (accept('-')) return -unary();
    return power();
  }

  RatFunc power() {
    RatFunc base = primary();
    if (!accept('^')) return base;
    std::uint64_t e = exponent();
    RatFunc acc = base.one();
    while (e > 0) {
      if (e & 1) acc = acc * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return acc;
  }

  // Right-associative: 2^3^2 = 2^9.
  std::uint64_t exponent() {
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("exponent must be a nonnegative integer");
    std::uint64_t base = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      base = base * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0');
      if (base > kMaxExponent) fail("exponent too large");
    }
    if (!accept('^')) return base;
    const std::uint64_t e = exponent();
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
      r *= base;
      if (r > kMaxExponent) fail("exponent too large");
      if (base <= 1) break;
    }
    return e == 0 ? 1 : r;
  }

  RatFunc primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc r = sum();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::uint32_t p = field_->characteristic();
      std::uint64_t v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        v = (v * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0')) % p;
      return constant(static_cast<std::int64_t>(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return RatFunc::variable(field_, vars_.size(), i);
      if (name == "t" && !field_->is_prime_field()) return RatFunc::constant(field_->generator(), vars_.size());
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  FieldRef field_;
  std::span<const std::string> vars_;
  std::size_t pos_ = 0;
};

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void schema_error(const std::string& msg) { throw ParseError(msg, 0, 0); }

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

std::uint32_t small_uint(const json& j, const char* name, std::uint32_t max) {
  if (!j.is_number_integer()) schema_error(std::string("'") + name + "' must be an integer");
  const auto v = j.get<std::int64_t>();
  if (v < 0 || v > static_cast<std::int64_t>(max)) schema_error(std::string("'") + name + "' out of range");
  return static_cast<std::uint32_t>(v);
}

FieldRef parse_field(const json& doc) {
  if (!doc.contains("p")) schema_error("missing field 'p'");
  const std::uint32_t p = small_uint(doc["p"], "p", 1u << 20);
  const std::uint32_t k = doc.contains("k") ? small_uint(doc["k"], "k", FieldCtx::kMaxDegree) : 1;
  if (k == 0) schema_error("'k' must be positive");
  try {
    FieldCtx::prime(p);
    if (doc.contains("defining_poly") && !doc["defining_poly"].is_null()) {
      const json& dp = doc["defining_poly"];
      if (!dp.is_array()) schema_error("'defining_poly' must be a list of coefficients");
      PrimePoly poly;
      for (const auto& c : dp) poly.push_back(small_uint(c, "defining_poly", UINT32_MAX) % p);
      while (!poly.empty() && poly.back() == 0) poly.pop_back();
      if (poly.size() != k + 1) schema_error("'defining_poly' must have degree k");
      return FieldCtx::make(p, poly);
    }
    return k == 1 ? FieldCtx::prime(p) : FieldCtx::make(p, find_irreducible(p, k));
  } catch (const std::invalid_argument& e) {
    schema_error(e.what());
  }
}

}  // namespace

RatFunc parse_expression(std::string_view text, FieldRef field, std::span<const std::string> vars) {
  return ExpressionParser(text, field, vars).parse();
}

GroupInput parse_group_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    auto [line, col] = line_column(text, offset);
    throw ParseError("invalid JSON: " + std::string(e.what()), line, col);
  }
  if (!doc.is_object()) schema_error("group file must be a JSON object");

  GroupInput g;
  g.field = parse_field(doc);

  if (!doc.contains("vars") || !doc["vars"].is_array()) schema_error("missing list 'vars'");
  for (const auto& v : doc["vars"]) {
    if (!v.is_string()) schema_error("variable names must be strings");
    std::string name = v.get<std::string>();
    if (!valid_identifier(name)) schema_error("invalid variable name '" + name + "'");
    if (name == "t" && !g.field->is_prime_field()) schema_error("'t' is reserved for the field generator");
    if (std::find(g.vars.begin(), g.vars.end(), name) != g.vars.end()) schema_error("duplicate variable '" + name + "'");
    g.vars.push_back(std::move(name));
  }

  if (!doc.contains("generators") || !doc["generators"].is_array()) schema_error("missing list 'generators'");
  const json& gens = doc["generators"];
  if (gens.empty()) schema_error("at least one generator is required");

  const RatFunc like = RatFunc::constant(g.field->zero(), g.vars.size());
  std::size_t cursor = 0;
  std::size_t n = 0;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    const json& grid = gens[gi];
    const std::string where = "generator " + std::to_string(gi + 1);
    if (!grid.is_array() || grid.empty()) schema_error(where + ": expected a nonempty list of rows");
    if (gi == 0) n = grid.size();
    if (grid.size() != n) schema_error(where + ": wrong dimensions");
    FuncMat m(n, n, like);
    for (std::size_t r = 0; r < n; ++r) {
      if (!grid[r].is_array() || grid[r].size() != n) schema_error(where + ": wrong dimensions (matrices must be square)");
      for (std::size_t c = 0; c < n; ++c) {
        const json& entry = grid[r][c];
        std::string expr;
        if (entry.is_string()) {
          expr = entry.get<std::string>();
        } else if (entry.is_number_integer()) {
          expr = entry.dump();
        } else {
          schema_error(where + ": entries must be strings or integers");
        }
        // Locate the entry in the source to report file positions.
        const std::size_t found = text.find(expr, cursor);
        if (found != std::string_view::npos) cursor = found;
        try {
          m(r, c) = parse_expression(expr, g.field, g.vars);
        } catch (const ParseError& e) {
          auto [line, col] = found == std::string_view::npos ? std::pair<std::size_t, std::size_t>{0, 0}
                                                             : line_column(text, found + e.column() - 1);
          throw ParseError(where + ", entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                               "): " + e.what() + " at column " + std::to_string(e.column()) + " of \"" + expr + "\"",
                           line, col);
        }
        if (found != std::string_view::npos) cursor = found + expr.size();
      }
    }
    if (!is_invertible(m)) schema_error(where + ": matrix is singular");
    g.generators.push_back(std::move(m));
  }
  return g;
}

GroupInput load_group_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_group_file(ss.str());
}

std::string serialize_group_file(const GroupInput& group) {
  json doc = json::object();
  doc["p"] = group.field->characteristic();
  doc["k"] = group.field->degree();
  if (!group.field->is_prime_field()) doc["defining_poly"] = group.field->defining_poly();
  doc["vars"] = group.vars;
  json gens = json::array();
  for (const auto& m : group.generators) {
    json grid = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string(group.vars));
      grid.push_back(std::move(row));
    }
    gens.push_back(std::move(grid));
  }
  doc["generators"] = std::move(gens);
  return doc.dump(2);
}

}  // namespace matfin
