#include "matfin/gf.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <utility>

#include "matfin/matrix.hpp"

namespace matfin {

namespace {

using Digits = std::array<std::uint32_t, FieldCtx::kMaxDegree>;

// --- univariate arithmetic over F_p -------------------------------------

void trim(PrimePoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

PrimePoly poly_mod(PrimePoly a, const PrimePoly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lc_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const std::uint64_t c = a.back() * lc_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * m[i] % p) % p);
    trim(a);
  }
  return a;
}

PrimePoly poly_mulmod(const PrimePoly& a, const PrimePoly& b, const PrimePoly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  PrimePoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = static_cast<std::uint32_t>((c[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  }
  return poly_mod(std::move(c), m, p);
}

PrimePoly poly_powmod(PrimePoly base, std::uint64_t e, const PrimePoly& m, std::uint32_t p) {
  PrimePoly acc{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) acc = poly_mulmod(acc, base, m, p);
    e >>= 1;
    if (e) base = poly_mulmod(base, base, m, p);
  }
  return acc;
}

PrimePoly poly_gcd(PrimePoly a, PrimePoly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PrimePoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// --- F_p matrices via the generic linear algebra ------------------------

Mat<FieldElement> prime_matrix(FieldRef fp, const std::vector<std::vector<std::uint32_t>>& rows) {
  Mat<FieldElement> m(rows.size(), rows.empty() ? 0 : rows.front().size(), fp->zero());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = fp->from_int(rows[i][j]);
  return m;
}

std::vector<std::vector<std::uint32_t>> to_codes(const Mat<FieldElement>& m) {
  std::vector<std::vector<std::uint32_t>> out(m.rows(), std::vector<std::uint32_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).code();
  return out;
}

std::vector<std::uint32_t> digits_of(const FieldElement& a) {
  std::vector<std::uint32_t> d(a.field()->degree());
  a.field()->unpack(a.code(), d.data());
  return d;
}

FieldElement eval_prime_poly(const PrimePoly& f, const FieldElement& x) {
  FieldElement acc = x.zero();
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + x.field()->from_int(f[i]);
  return acc;
}

}  // namespace

// --- registry -----------------------------------------------------------

class FieldRegistry {
 public:
  static FieldRegistry& instance() {
    static FieldRegistry r;
    return r;
  }

  FieldRef intern(const std::string& key, std::uint32_t p, PrimePoly poly, FieldRef base,
                  std::uint32_t base_image) {
    std::lock_guard lock(mu_);
    if (auto it = by_key_.find(key); it != by_key_.end()) return it->second;
    fields_.push_back(std::unique_ptr<FieldCtx>(new FieldCtx(p, std::move(poly), base, base_image)));
    FieldRef f = fields_.back().get();
    by_key_.emplace(key, f);
    return f;
  }

  FieldRef find(const std::string& key) {
    std::lock_guard lock(mu_);
    auto it = by_key_.find(key);
    return it == by_key_.end() ? nullptr : it->second;
  }

  const Embedding* find_embedding(FieldRef s, FieldRef t) {
    std::lock_guard lock(mu_);
    auto it = embeddings_.find({s, t});
    return it == embeddings_.end() ? nullptr : it->second.get();
  }

  const Embedding& add_embedding(std::unique_ptr<Embedding> e) {
    std::lock_guard lock(mu_);
    auto key = std::make_pair(e->source(), e->target());
    auto it = embeddings_.find(key);
    if (it != embeddings_.end()) return *it->second;
    return *embeddings_.emplace(key, std::move(e)).first->second;
  }

 private:
  std::mutex mu_;
  std::vector<std::unique_ptr<FieldCtx>> fields_;
  std::map<std::string, FieldRef> by_key_;
  std::map<std::pair<FieldRef, FieldRef>, std::unique_ptr<Embedding>> embeddings_;
};

// --- FieldCtx -----------------------------------------------------------

FieldCtx::FieldCtx(std::uint32_t p, PrimePoly poly, FieldRef base, std::uint32_t base_image)
    : p_(p), k_(static_cast<unsigned>(poly.size() - 1)), poly_(std::move(poly)), base_(base),
      base_image_(base_image) {
  size_ = ipow(p_, k_);
  pow_p_.resize(k_ + 1);
  pow_p_[0] = 1;
  for (unsigned i = 1; i <= k_; ++i) pow_p_[i] = static_cast<std::uint32_t>(pow_p_[i - 1] * std::uint64_t{p_});
}

static bool is_prime_number(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; std::uint64_t{d} * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

FieldRef FieldCtx::prime(std::uint32_t p) {
  if (!is_prime_number(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  if (p > (1U << 20)) throw std::invalid_argument("prime too large for desk-scale arithmetic");
  return FieldRegistry::instance().intern("prime:" + std::to_string(p), p, PrimePoly{0, 1}, nullptr, 0);
}

FieldRef FieldCtx::make(std::uint32_t p, const PrimePoly& poly_in) {
  FieldRef fp = prime(p);
  PrimePoly poly = poly_in;
  for (auto& c : poly) c %= p;
  trim(poly);
  if (poly.size() < 2 || poly.back() != 1) throw std::invalid_argument("defining polynomial must be monic of degree >= 1");
  if (poly.size() == 2) return fp;
  if (poly.size() - 1 > kMaxDegree || ipow(p, static_cast<unsigned>(poly.size() - 1)) > (std::uint64_t{1} << 31))
    throw std::invalid_argument("field too large");
  if (!is_irreducible(p, poly)) throw std::invalid_argument("defining polynomial is reducible");
  std::ostringstream key;
  key << "poly:" << p;
  for (auto c : poly) key << ',' << c;
  return FieldRegistry::instance().intern(key.str(), p, poly, nullptr, 0);
}

FieldRef FieldCtx::extend(FieldRef base, unsigned degree) {
  if (degree == 0) throw std::invalid_argument("extension degree must be positive");
  if (degree == 1) return base;
  std::ostringstream key;
  key << "ext:" << static_cast<const void*>(base) << ':' << degree;
  auto& reg = FieldRegistry::instance();
  if (FieldRef f = reg.find(key.str())) return f;
  const unsigned k = base->degree() * degree;
  if (k > kMaxDegree || ipow(base->characteristic(), k) > (std::uint64_t{1} << 31))
    throw std::invalid_argument("extension field too large");
  PrimePoly poly = find_irreducible(base->characteristic(), k);
  // Temporary context (no base link) to locate a root of the base polynomial.
  FieldRef bare = make(base->characteristic(), poly);
  std::uint32_t image = 0;
  if (!base->is_prime_field()) {
    bool found = false;
    for (const auto& x : subfield_elements(bare, base->size())) {
      if (eval_prime_poly(base->defining_poly(), x).is_zero()) {
        image = x.code();
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("no root of base polynomial in extension");
  } else {
    image = bare->from_int(static_cast<std::int64_t>(base->characteristic()) - base->defining_poly()[0]).code();
  }
  return reg.intern(key.str(), base->characteristic(), poly, base, image);
}

FieldElement FieldCtx::base_generator_image() const {
  if (!base_) throw std::logic_error("field has no base link");
  return {this, base_image_};
}

FieldElement FieldCtx::zero() const { return {this, 0}; }
FieldElement FieldCtx::one() const { return {this, 1}; }

FieldElement FieldCtx::generator() const {
  if (k_ == 1) return from_int(static_cast<std::int64_t>(p_) - poly_[0]);
  return {this, p_};
}

FieldElement FieldCtx::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {this, static_cast<std::uint32_t>(r)};
}

FieldElement FieldCtx::from_code(std::uint32_t code) const {
  if (code >= size_) throw std::out_of_range("field element code out of range");
  return {this, code};
}

FieldElement FieldCtx::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > k_) throw std::invalid_argument("too many coefficients for field degree");
  Digits d{};
  for (std::size_t i = 0; i < coeffs.size(); ++i) d[i] = coeffs[i] % p_;
  return {this, pack(d.data())};
}

std::optional<unsigned> FieldCtx::degree_over(FieldRef sub) const {
  if (sub->p_ != p_ || k_ % sub->k_ != 0) return std::nullopt;
  return k_ / sub->k_;
}

std::string FieldCtx::describe() const {
  std::ostringstream os;
  os << "GF(" << p_;
  if (k_ > 1) os << '^' << k_;
  os << ')';
  return os.str();
}

void FieldCtx::unpack(std::uint32_t code, std::uint32_t* digits) const {
  for (unsigned i = 0; i < k_; ++i) {
    digits[i] = code % p_;
    code /= p_;
  }
}

std::uint32_t FieldCtx::pack(const std::uint32_t* digits) const {
  std::uint32_t code = 0;
  for (unsigned i = k_; i-- > 0;) code = code * p_ + digits[i];
  return code;
}

std::uint32_t FieldCtx::add(std::uint32_t a, std::uint32_t b) const {
  if (k_ == 1) return static_cast<std::uint32_t>((std::uint64_t{a} + b) % p_);
  if (p_ == 2) return a ^ b;
  Digits x, y;
  unpack(a, x.data());
  unpack(b, y.data());
  for (unsigned i = 0; i < k_; ++i) x[i] = (x[i] + y[i]) % p_;
  return pack(x.data());
}

std::uint32_t FieldCtx::neg(std::uint32_t a) const {
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  if (p_ == 2) return a;
  Digits x;
  unpack(a, x.data());
  for (unsigned i = 0; i < k_; ++i) x[i] = x[i] == 0 ? 0 : p_ - x[i];
  return pack(x.data());
}

std::uint32_t FieldCtx::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t FieldCtx::mul(std::uint32_t a, std::uint32_t b) const {
  if (k_ == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
  if (a == 0 || b == 0) return 0;
  Digits x, y;
  unpack(a, x.data());
  unpack(b, y.data());
  std::array<std::uint64_t, 2 * kMaxDegree> prod{};
  for (unsigned i = 0; i < k_; ++i) {
    if (!x[i]) continue;
    for (unsigned j = 0; j < k_; ++j) prod[i + j] += std::uint64_t{x[i]} * y[j];
  }
  for (unsigned i = 0; i + 1 < 2 * k_; ++i) prod[i] %= p_;
  // Reduce by the monic defining polynomial, highest degree first.
  for (unsigned deg = 2 * k_ - 2; deg >= k_; --deg) {
    const std::uint64_t c = prod[deg] % p_;
    if (c) {
      for (unsigned i = 0; i < k_; ++i)
        prod[deg - k_ + i] = (prod[deg - k_ + i] + (p_ - c) * poly_[i]) % p_;
    }
    prod[deg] = 0;
  }
  Digits r;
  for (unsigned i = 0; i < k_; ++i) r[i] = static_cast<std::uint32_t>(prod[i] % p_);
  return pack(r.data());
}

std::uint32_t FieldCtx::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t acc = 1;
  while (e) {
    if (e & 1) acc = mul(acc, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return acc;
}

std::uint32_t FieldCtx::inv(std::uint32_t a) const {
  if (a == 0) throw DivisionByZero();
  return pow(a, size_ - 2);
}

// --- FieldElement -------------------------------------------------------

std::vector<std::uint32_t> FieldElement::coeffs() const { return digits_of(*this); }

FieldElement FieldElement::inverse() const { return {ctx_, ctx_->inv(code_)}; }

std::optional<FieldElement> FieldElement::try_inverse() const {
  if (is_zero()) return std::nullopt;
  return inverse();
}

std::string FieldElement::to_string() const {
  auto d = coeffs();
  if (ctx_->degree() == 1) return std::to_string(d[0]);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (!d[i]) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << d[i];
    } else {
      if (d[i] != 1) os << d[i] << '*';
      os << 't';
      if (i > 1) os << '^' << i;
    }
  }
  if (first) os << '0';
  return os.str();
}

// --- Frobenius, trace, irreducibility -----------------------------------

FieldElement frobenius(const FieldElement& a, std::uint64_t q) { return a.pow(q); }

FieldElement trace_to_base(const FieldElement& a, std::uint64_t q, unsigned nu) {
  FieldElement acc = a.zero();
  FieldElement x = a;
  for (unsigned i = 0; i < nu; ++i) {
    acc += x;
    x = frobenius(x, q);
  }
  return acc;
}

bool in_subfield(const FieldElement& a, std::uint64_t q) { return frobenius(a, q) == a; }

bool is_irreducible(std::uint32_t p, const PrimePoly& f_in) {
  PrimePoly f = f_in;
  for (auto& c : f) c %= p;
  trim(f);
  if (f.size() < 2) return false;
  const unsigned d = static_cast<unsigned>(f.size() - 1);
  if (d == 1) return true;
  PrimePoly h{0, 1};
  for (unsigned i = 1; i <= d / 2; ++i) {
    h = poly_powmod(h, p, f, p);  // t^{p^i} mod f
    PrimePoly g = h;
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = (g[1] + p - 1) % p;
    if (poly_gcd(f, g, p).size() != 1) return false;
  }
  return true;
}

PrimePoly find_irreducible(std::uint32_t p, unsigned d, std::optional<std::uint64_t> seed) {
  if (d == 0) throw std::invalid_argument("degree must be positive");
  PrimePoly f(d + 1, 0);
  f[d] = 1;
  if (seed) {
    std::mt19937_64 rng(*seed);
    std::uniform_int_distribution<std::uint32_t> coeff(0, p - 1);
    for (;;) {
      for (unsigned i = 0; i < d; ++i) f[i] = coeff(rng);
      if (is_irreducible(p, f)) return f;
    }
  }
  for (std::uint64_t code = 0;; ++code) {
    std::uint64_t c = code;
    for (unsigned i = 0; i < d; ++i) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    if (is_irreducible(p, f)) return f;
  }
}

// --- subfields and embeddings --------------------------------------------

std::vector<FieldElement> subfield_elements(FieldRef field, std::uint64_t sub_size) {
  const std::uint32_t p = field->characteristic();
  unsigned s = 0;
  for (std::uint64_t x = 1; x < sub_size; x *= p) ++s;
  if (ipow(p, s) != sub_size || s == 0 || field->degree() % s != 0)
    throw std::invalid_argument("no subfield of size " + std::to_string(sub_size) + " in " + field->describe());
  FieldRef fp = FieldCtx::prime(p);
  const unsigned k = field->degree();
  if (s == k) {
    std::vector<FieldElement> all;
    all.reserve(field->size());
    for (std::uint64_t c = 0; c < field->size(); ++c) all.push_back(field->from_code(static_cast<std::uint32_t>(c)));
    return all;
  }
  // Fixed points of x -> x^{sub_size}: kernel of an F_p-linear map.
  Mat<FieldElement> frob(k, k, fp->zero());
  for (unsigned i = 0; i < k; ++i) {
    std::vector<std::uint32_t> e(k, 0);
    e[i] = 1;
    auto img = digits_of(frobenius(field->from_coeffs(e), sub_size));
    for (unsigned r = 0; r < k; ++r) frob(r, i) = fp->from_int(img[r]) - (r == i ? fp->one() : fp->zero());
  }
  auto ker = nullspace(frob);
  if (ker.dim() != s) throw std::logic_error("subfield dimension mismatch");
  std::vector<FieldElement> basis;
  for (std::size_t i = 0; i < ker.dim(); ++i) {
    std::vector<std::uint32_t> c(k);
    for (unsigned r = 0; r < k; ++r) c[r] = ker.basis()(i, r).code();
    basis.push_back(field->from_coeffs(c));
  }
  std::vector<FieldElement> out;
  out.reserve(sub_size);
  for (std::uint64_t idx = 0; idx < sub_size; ++idx) {
    FieldElement acc = field->zero();
    std::uint64_t c = idx;
    for (unsigned i = 0; i < s; ++i) {
      acc += field->from_int(static_cast<std::int64_t>(c % p)) * basis[i];
      c /= p;
    }
    out.push_back(acc);
  }
  std::sort(out.begin(), out.end(), [](const FieldElement& a, const FieldElement& b) { return a.code() < b.code(); });
  return out;
}

Embedding::Embedding(FieldRef source, FieldRef target, FieldElement generator_image)
    : source_(source), target_(target), gen_image_(generator_image) {
  const unsigned ks = source->degree();
  const unsigned kt = target->degree();
  FieldElement x = target->one();
  for (unsigned i = 0; i < ks; ++i) {
    basis_images_.push_back(x);
    x = x * gen_image_;
  }
  FieldRef fp = FieldCtx::prime(source->characteristic());
  // Rows of m^T are the digit vectors of the basis images; its pivot columns
  // pick kt-rows of m that form an invertible ks x ks block.
  std::vector<std::vector<std::uint32_t>> mt(ks);
  for (unsigned i = 0; i < ks; ++i) mt[i] = digits_of(basis_images_[i]);
  auto ech = rref(prime_matrix(fp, mt));
  if (ech.rank != ks) throw std::logic_error("embedding is not injective");
  pivot_rows_ = ech.pivots;
  Mat<FieldElement> block(ks, ks, fp->zero());
  for (unsigned r = 0; r < ks; ++r)
    for (unsigned c = 0; c < ks; ++c) block(r, c) = fp->from_int(mt[c][pivot_rows_[r]]);
  pivot_inverse_ = to_codes(inverse(block));
  (void)kt;
}

FieldElement Embedding::apply(const FieldElement& a) const {
  if (a.field() != source_) throw std::invalid_argument("embedding applied to element of another field");
  if (source_ == target_) return a;
  if (source_->is_prime_field()) return target_->from_int(a.code());
  auto d = digits_of(a);
  FieldElement acc = target_->zero();
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i]) acc += target_->from_int(d[i]) * basis_images_[i];
  return acc;
}

std::optional<FieldElement> Embedding::preimage(const FieldElement& b) const {
  if (b.field() != target_) throw std::invalid_argument("preimage of element of another field");
  if (source_ == target_) return b;
  const std::uint32_t p = source_->characteristic();
  auto d = digits_of(b);
  const std::size_t ks = source_->degree();
  std::vector<std::uint32_t> x(ks, 0);
  for (std::size_t r = 0; r < ks; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < ks; ++c) acc += std::uint64_t{pivot_inverse_[r][c]} * d[pivot_rows_[c]];
    x[r] = static_cast<std::uint32_t>(acc % p);
  }
  FieldElement cand = source_->from_coeffs(x);
  if (apply(cand) != b) return std::nullopt;
  return cand;
}

namespace {

FieldElement locate_generator_image(FieldRef source, FieldRef target) {
  if (source->is_prime_field()) return target->from_int(source->generator().code());
  // Route through the target's base whenever it contains the source, so
  // embeddings compose along towers.
  if (FieldRef b = target->base()) {
    if (b == source) return target->base_generator_image();
    if (b->degree_over(source)) {
      const auto& inner = embedding(source, b);
      return embedding(b, target).apply(inner.generator_image());
    }
  }
  // Roots of the source polynomial lie in the target's subfield of size |source|.
  std::optional<FieldElement> want;  // required image of source->base()'s generator
  FieldRef sb = source->base();
  if (sb && !sb->is_prime_field()) want = embedding(sb, target).generator_image();
  for (const auto& x : subfield_elements(target, source->size())) {
    if (!eval_prime_poly(source->defining_poly(), x).is_zero()) continue;
    if (want) {
      Embedding trial(source, target, x);
      if (trial.apply(source->base_generator_image()) != *want) continue;
    }
    return x;
  }
  throw std::logic_error("no compatible root found for embedding " + source->describe() + " -> " + target->describe());
}

}  // namespace

const Embedding& embedding(FieldRef source, FieldRef target) {
  auto& reg = FieldRegistry::instance();
  if (const Embedding* e = reg.find_embedding(source, target)) return *e;
  if (!target->degree_over(source))
    throw std::invalid_argument(source->describe() + " is not a subfield of " + target->describe());
  FieldElement img = source == target ? target->generator() : locate_generator_image(source, target);
  return reg.add_embedding(std::make_unique<Embedding>(source, target, img));
}

FieldElement embed(const FieldElement& a, FieldRef target) {
  if (a.field() == target) return a;
  return embedding(a.field(), target).apply(a);
}

SubfieldCoordinates::SubfieldCoordinates(FieldRef sub, FieldRef target) : sub_(sub), target_(target) {
  auto e = target->degree_over(sub);
  if (!e) throw std::invalid_argument(sub->describe() + " is not a subfield of " + target->describe());
  e_ = *e;
  const unsigned ks = sub->degree();
  const unsigned kt = target->degree();
  const auto& emb = embedding(sub, target);
  FieldRef fp = FieldCtx::prime(target->characteristic());
  // Column j*ks + i holds the digits of emb(s^i) * t^j.
  Mat<FieldElement> b(kt, kt, fp->zero());
  FieldElement tj = target->one();
  const FieldElement t = target->generator();
  for (unsigned j = 0; j < e_; ++j) {
    FieldElement si = target->one();
    for (unsigned i = 0; i < ks; ++i) {
      auto d = digits_of(si * tj);
      for (unsigned r = 0; r < kt; ++r) b(r, j * ks + i) = fp->from_int(d[r]);
      si = si * emb.generator_image();
    }
    tj = tj * t;
  }
  inverse_ = to_codes(inverse(b));
}

std::vector<FieldElement> SubfieldCoordinates::coordinates(const FieldElement& x) const {
  if (x.field() != target_) throw std::invalid_argument("coordinates of element of another field");
  const std::uint32_t p = target_->characteristic();
  const unsigned ks = sub_->degree();
  const unsigned kt = target_->degree();
  auto d = digits_of(x);
  std::vector<std::uint32_t> y(kt);
  for (unsigned r = 0; r < kt; ++r) {
    std::uint64_t acc = 0;
    for (unsigned c = 0; c < kt; ++c) acc += std::uint64_t{inverse_[r][c]} * d[c];
    y[r] = static_cast<std::uint32_t>(acc % p);
  }
  std::vector<FieldElement> out;
  out.reserve(e_);
  for (unsigned j = 0; j < e_; ++j)
    out.push_back(sub_->from_coeffs(std::span<const std::uint32_t>(y).subspan(j * ks, ks)));
  return out;
}

}  // namespace matfin
