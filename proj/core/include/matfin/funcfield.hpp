#pragma once

// Sparse multivariate polynomials over a finite field and the rational
// function field F_q(X_1, ..., X_m) built on them.
//
// Terms are kept sorted by graded-lex order, largest first; X_1 > X_2 > ...
// A RatFunc is always reduced with a monic denominator, so structural
// equality coincides with equality of fractions.

#include <boost/container/small_vector.hpp>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "matfin/gf.hpp"
#include "matfin/matrix.hpp"

namespace matfin {

using Exponents = boost::container::small_vector<std::uint32_t, 3>;

struct Term {
  Exponents exp;
  FieldElement coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

// Graded-lex comparison: true when a > b.
bool grlex_greater(const Exponents& a, const Exponents& b);

class MultiPoly {
 public:
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  MultiPoly() = default;
  MultiPoly(FieldRef field, std::size_t nvars) : field_(field), nvars_(nvars) {}

  static MultiPoly constant(const FieldElement& c, std::size_t nvars);
  static MultiPoly variable(FieldRef field, std::size_t nvars, std::size_t index);
  static MultiPoly monomial(const FieldElement& c, Exponents exp);
  // Builds from unsorted terms, merging duplicates and dropping zeros.
  static MultiPoly from_terms(FieldRef field, std::size_t nvars, std::vector<Term> terms);

  FieldRef field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  // kZeroDegree for the zero polynomial.
  int total_degree() const;
  int degree_in(std::size_t var) const;

  const Term& leading_term() const;
  const FieldElement& leading_coeff() const { return leading_term().coeff; }
  MultiPoly monic() const;

  // Coefficient of var^d, as a polynomial in the remaining variables.
  MultiPoly coefficient_in(std::size_t var, std::uint32_t d) const;
  MultiPoly shifted(std::size_t var, std::uint32_t d) const;  // times var^d

  MultiPoly zero() const { return {field_, nvars_}; }
  MultiPoly one() const { return constant(field_->one(), nvars_); }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const FieldElement& c, const MultiPoly& a);
  MultiPoly operator-() const;
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  // Value at a point whose coordinates lie in an extension of field().
  FieldElement evaluate(std::span<const FieldElement> point) const;

  std::string to_string(std::span<const std::string> names) const;
  std::size_t hash() const;

 private:
  void check_compatible(const MultiPoly& o) const;

  FieldRef field_ = nullptr;
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

// Exact quotient a / b, or nullopt if b does not divide a.
std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b);

// Monic greatest common divisor (zero only when both inputs are zero).
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);
MultiPoly lcm(const MultiPoly& a, const MultiPoly& b);

// Raised when a denominator vanishes at the evaluation point.
class NotAdmissible : public std::domain_error {
 public:
  explicit NotAdmissible(MultiPoly denominator)
      : std::domain_error("denominator vanishes at evaluation point"), denominator_(std::move(denominator)) {}
  const MultiPoly& denominator() const { return denominator_; }

 private:
  MultiPoly denominator_;
};

class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(MultiPoly num);
  RatFunc(MultiPoly num, MultiPoly den);

  static RatFunc constant(const FieldElement& c, std::size_t nvars) {
    return RatFunc(MultiPoly::constant(c, nvars));
  }
  static RatFunc variable(FieldRef field, std::size_t nvars, std::size_t index) {
    return RatFunc(MultiPoly::variable(field, nvars, index));
  }

  const MultiPoly& numerator() const { return num_; }
  const MultiPoly& denominator() const { return den_; }
  FieldRef field() const { return num_.field(); }
  std::size_t nvars() const { return num_.nvars(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }
  RatFunc zero() const { return RatFunc(num_.zero()); }
  RatFunc one() const { return RatFunc(num_.one()); }

  RatFunc inverse() const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
  RatFunc operator-() const;
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  // Throws NotAdmissible when the denominator vanishes.
  FieldElement evaluate(std::span<const FieldElement> point) const;

  std::string to_string(std::span<const std::string> names) const;
  std::size_t hash() const;

 private:
  struct Reduced {};
  RatFunc(MultiPoly num, MultiPoly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}
  static RatFunc normalized(MultiPoly num, MultiPoly den);

  MultiPoly num_;
  MultiPoly den_;
};

using FuncMat = Mat<RatFunc>;
using FFMat = Mat<FieldElement>;

// Least common multiple of the denominators of all entries.
MultiPoly denominator_lcm(std::span<const FuncMat> mats);

}  // namespace matfin

template <>
struct std::hash<matfin::RatFunc> {
  std::size_t operator()(const matfin::RatFunc& r) const noexcept { return r.hash(); }
};
