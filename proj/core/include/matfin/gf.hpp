#pragma once

// Finite fields F_{p^k} as F_p[t]/(f) with dense coefficient vectors.
//
// Contexts are interned and never destroyed, so a FieldRef is a stable
// pointer that can be compared for identity and shared across threads.
// An element packs its k coefficients (low to high) as a base-p integer.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace matfin {

class FieldCtx;
class FieldElement;
using FieldRef = const FieldCtx*;

// Univariate polynomial over F_p, coefficients low to high.
using PrimePoly = std::vector<std::uint32_t>;

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

class FieldCtx {
 public:
  static constexpr unsigned kMaxDegree = 32;

  static FieldRef prime(std::uint32_t p);

  // F_p[t]/(poly). `poly` must be monic and irreducible of degree >= 1
  // (degree 1 yields the prime field).
  static FieldRef make(std::uint32_t p, const PrimePoly& poly);

  // The field of size |base|^degree, with a deterministic defining
  // polynomial and a recorded embedding of `base`.
  static FieldRef extend(FieldRef base, unsigned degree);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  std::uint64_t size() const { return size_; }
  const PrimePoly& defining_poly() const { return poly_; }
  bool is_prime_field() const { return k_ == 1; }

  // Subfield this field was built over (null for fields built by make()).
  FieldRef base() const { return base_; }
  // Image of the base field's generator t inside this field.
  FieldElement base_generator_image() const;

  FieldElement zero() const;
  FieldElement one() const;
  // Root t of the defining polynomial (for the prime field, the root of t - c).
  FieldElement generator() const;
  FieldElement from_int(std::int64_t v) const;
  FieldElement from_code(std::uint32_t code) const;
  FieldElement from_coeffs(std::span<const std::uint32_t> coeffs) const;

  // Degree of this field over `sub`, or nullopt if sizes are incompatible.
  std::optional<unsigned> degree_over(FieldRef sub) const;

  std::string describe() const;

  // Raw arithmetic on packed codes.
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  std::uint32_t inv(std::uint32_t a) const;

  void unpack(std::uint32_t code, std::uint32_t* digits) const;
  std::uint32_t pack(const std::uint32_t* digits) const;

 private:
  FieldCtx(std::uint32_t p, PrimePoly poly, FieldRef base, std::uint32_t base_image);
  friend class FieldRegistry;

  std::uint32_t p_;
  unsigned k_;
  std::uint64_t size_;
  PrimePoly poly_;
  FieldRef base_;
  std::uint32_t base_image_;
  std::vector<std::uint32_t> pow_p_;  // p^i
};

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldRef ctx, std::uint32_t code) : ctx_(ctx), code_(code) {}

  FieldRef field() const { return ctx_; }
  std::uint32_t code() const { return code_; }
  std::vector<std::uint32_t> coeffs() const;

  bool is_zero() const { return code_ == 0; }
  bool is_one() const { return code_ == 1; }
  FieldElement zero() const { return {ctx_, 0}; }
  FieldElement one() const { return {ctx_, 1}; }

  FieldElement inverse() const;
  std::optional<FieldElement> try_inverse() const;
  FieldElement pow(std::uint64_t e) const { return {ctx_, ctx_->pow(code_, e)}; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return {a.ctx_, a.ctx_->add(a.code_, b.code_)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return {a.ctx_, a.ctx_->sub(a.code_, b.code_)};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return {a.ctx_, a.ctx_->mul(a.code_, b.code_)};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return a * b.inverse();
  }
  FieldElement operator-() const { return {ctx_, ctx_->neg(code_)}; }
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.ctx_ == b.ctx_ && a.code_ == b.code_;
  }

  // Polynomial form in t, e.g. "t^2 + 2*t + 1".
  std::string to_string() const;

 private:
  static void check(const FieldElement& a, const FieldElement& b) {
    if (a.ctx_ != b.ctx_) throw std::invalid_argument("field elements from different contexts");
  }

  FieldRef ctx_ = nullptr;
  std::uint32_t code_ = 0;
};

// σ(a) = a^q.
FieldElement frobenius(const FieldElement& a, std::uint64_t q);

// a + σ(a) + ... + σ^{ν-1}(a) with σ(x) = x^q; the result stays in a's field
// but lies in its subfield of size q.
FieldElement trace_to_base(const FieldElement& a, std::uint64_t q, unsigned nu);

// True when a lies in the subfield of a.field() of size q.
bool in_subfield(const FieldElement& a, std::uint64_t q);

// Irreducibility over F_p: gcd(f, t^{p^i} - t mod f) = 1 for i <= deg/2.
bool is_irreducible(std::uint32_t p, const PrimePoly& f);

// Monic irreducible polynomial of degree d over F_p. Without a seed this is
// the smallest one when coefficient lists are read as base-p integers
// (constant term least significant); with a seed it is random.
PrimePoly find_irreducible(std::uint32_t p, unsigned d, std::optional<std::uint64_t> seed = std::nullopt);

// Field homomorphism source -> target determined by the image of the source
// generator. Embeddings between fields linked by base() chains are composed
// along the chain; otherwise a root of the source polynomial is located in
// the target, choosing one compatible with the source's own base embedding.
class Embedding {
 public:
  Embedding(FieldRef source, FieldRef target, FieldElement generator_image);

  FieldRef source() const { return source_; }
  FieldRef target() const { return target_; }
  const FieldElement& generator_image() const { return gen_image_; }

  FieldElement apply(const FieldElement& a) const;
  // Inverse image of b, or nullopt when b is outside the embedded subfield.
  std::optional<FieldElement> preimage(const FieldElement& b) const;

 private:
  FieldRef source_;
  FieldRef target_;
  FieldElement gen_image_;
  std::vector<FieldElement> basis_images_;  // images of t^i
  // F_p solve data for preimage: pivot digit rows and the inverse of the
  // square submatrix they select.
  std::vector<std::size_t> pivot_rows_;
  std::vector<std::vector<std::uint32_t>> pivot_inverse_;
};

// Cached; throws std::invalid_argument if source is not a subfield of target.
const Embedding& embedding(FieldRef source, FieldRef target);

FieldElement embed(const FieldElement& a, FieldRef target);

// Coordinates of target-field elements over a subfield `sub`, with respect
// to the power basis 1, t, ..., t^{e-1} of the target generator t.
class SubfieldCoordinates {
 public:
  SubfieldCoordinates(FieldRef sub, FieldRef target);

  FieldRef sub() const { return sub_; }
  FieldRef target() const { return target_; }
  unsigned relative_degree() const { return e_; }

  std::vector<FieldElement> coordinates(const FieldElement& x) const;

 private:
  FieldRef sub_;
  FieldRef target_;
  unsigned e_;
  std::vector<std::vector<std::uint32_t>> inverse_;  // kL x kL over F_p
};

// Enumerates the elements of a.field()'s subfield of the given size
// (ascending by code).
std::vector<FieldElement> subfield_elements(FieldRef field, std::uint64_t sub_size);

}  // namespace matfin

template <>
struct std::hash<matfin::FieldElement> {
  std::size_t operator()(const matfin::FieldElement& a) const noexcept {
    return std::hash<std::uint64_t>{}((reinterpret_cast<std::uintptr_t>(a.field()) << 20) ^ a.code());
  }
};
