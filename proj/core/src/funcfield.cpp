#include "matfin/funcfield.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace matfin {

bool grlex_greater(const Exponents& a, const Exponents& b) {
  std::uint64_t da = 0, db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da > db;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

namespace {

Exponents add_exponents(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

// Merges two grlex-descending term lists, scaling b by `sign`.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && grlex_greater(a[i].exp, b[j].exp))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || grlex_greater(b[j].exp, a[i].exp)) {
      Term t = b[j++];
      if (subtract) t.coeff = -t.coeff;
      out.push_back(std::move(t));
    } else {
      FieldElement c = subtract ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!c.is_zero()) out.push_back({a[i].exp, c});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

// --- MultiPoly -----------------------------------------------------------

MultiPoly MultiPoly::constant(const FieldElement& c, std::size_t nvars) {
  MultiPoly p(c.field(), nvars);
  if (!c.is_zero()) p.terms_.push_back({Exponents(nvars, 0), c});
  return p;
}

MultiPoly MultiPoly::variable(FieldRef field, std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("variable index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  return monomial(field->one(), std::move(e));
}

MultiPoly MultiPoly::monomial(const FieldElement& c, Exponents exp) {
  MultiPoly p(c.field(), exp.size());
  if (!c.is_zero()) p.terms_.push_back({std::move(exp), c});
  return p;
}

MultiPoly MultiPoly::from_terms(FieldRef field, std::size_t nvars, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return grlex_greater(a.exp, b.exp); });
  MultiPoly p(field, nvars);
  for (auto& t : terms) {
    if (t.exp.size() != nvars) throw std::invalid_argument("exponent vector length mismatch");
    if (t.coeff.field() != field) throw std::invalid_argument("coefficient from another field");
    if (!p.terms_.empty() && p.terms_.back().exp == t.exp) {
      p.terms_.back().coeff += t.coeff;
    } else {
      p.terms_.push_back(std::move(t));
    }
  }
  std::erase_if(p.terms_, [](const Term& t) { return t.coeff.is_zero(); });
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  return std::all_of(terms_[0].exp.begin(), terms_[0].exp.end(), [](auto e) { return e == 0; });
}

bool MultiPoly::is_one() const { return terms_.size() == 1 && is_constant() && terms_[0].coeff.is_one(); }

int MultiPoly::total_degree() const {
  if (terms_.empty()) return kZeroDegree;
  int d = 0;
  for (auto e : terms_.front().exp) d += static_cast<int>(e);
  return d;
}

int MultiPoly::degree_in(std::size_t var) const {
  if (terms_.empty()) return kZeroDegree;
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.exp[var]));
  return d;
}

const Term& MultiPoly::leading_term() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return terms_.front();
}

MultiPoly MultiPoly::monic() const {
  if (terms_.empty() || terms_.front().coeff.is_one()) return *this;
  return leading_coeff().inverse() * *this;
}

MultiPoly MultiPoly::coefficient_in(std::size_t var, std::uint32_t d) const {
  MultiPoly out(field_, nvars_);
  for (const auto& t : terms_) {
    if (t.exp[var] != d) continue;
    Term s = t;
    s.exp[var] = 0;
    out.terms_.push_back(std::move(s));
  }
  // Removing one variable's exponent (all equal to d) preserves grlex order.
  return out;
}

MultiPoly MultiPoly::shifted(std::size_t var, std::uint32_t d) const {
  MultiPoly out = *this;
  for (auto& t : out.terms_) t.exp[var] += d;
  return out;
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
  if (field_ != o.field_ || nvars_ != o.nvars_)
    throw std::invalid_argument("polynomials over different rings");
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  MultiPoly r(a.field_, a.nvars_);
  r.terms_ = merge_terms(a.terms_, b.terms_, false);
  return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  MultiPoly r(a.field_, a.nvars_);
  r.terms_ = merge_terms(a.terms_, b.terms_, true);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

MultiPoly operator*(const FieldElement& c, const MultiPoly& a) {
  if (c.field() != a.field_) throw std::invalid_argument("scalar from another field");
  MultiPoly r(a.field_, a.nvars_);
  if (c.is_zero()) return r;
  r.terms_ = a.terms_;
  for (auto& t : r.terms_) t.coeff = c * t.coeff;
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  if (a.is_zero() || b.is_zero()) return MultiPoly(a.field_, a.nvars_);
  if (a.terms_.size() == 1 || b.terms_.size() == 1) {
    const auto& mono = a.terms_.size() == 1 ? a : b;
    const auto& other = a.terms_.size() == 1 ? b : a;
    MultiPoly r(a.field_, a.nvars_);
    r.terms_.reserve(other.terms_.size());
    // Multiplying by a monomial preserves the term order.
    for (const auto& t : other.terms_)
      r.terms_.push_back({add_exponents(t.exp, mono.terms_[0].exp), t.coeff * mono.terms_[0].coeff});
    return r;
  }
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) prod.push_back({add_exponents(x.exp, y.exp), x.coeff * y.coeff});
  return MultiPoly::from_terms(a.field_, a.nvars_, std::move(prod));
}

FieldElement MultiPoly::evaluate(std::span<const FieldElement> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong length");
  FieldRef target = field_;
  if (!point.empty()) target = point[0].field();
  for (const auto& a : point)
    if (a.field() != target) throw std::invalid_argument("evaluation point coordinates in different fields");
  const auto& emb = embedding(field_, target);
  // Powers are cached per variable since exponents repeat across terms.
  std::vector<std::vector<FieldElement>> powers(nvars_);
  auto power = [&](std::size_t v, std::uint32_t e) -> const FieldElement& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(target->one());
    while (cache.size() <= e) cache.push_back(cache.back() * point[v]);
    return cache[e];
  };
  FieldElement acc = target->zero();
  for (const auto& t : terms_) {
    FieldElement m = emb.apply(t.coeff);
    for (std::size_t v = 0; v < nvars_ && !m.is_zero(); ++v)
      if (t.exp[v]) m *= power(v, t.exp[v]);
    acc += m;
  }
  return acc;
}

std::string MultiPoly::to_string(std::span<const std::string> names) const {
  if (names.size() < nvars_) throw std::invalid_argument("not enough variable names");
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    std::vector<std::string> factors;
    bool is_unit_monomial = std::all_of(t.exp.begin(), t.exp.end(), [](auto e) { return e == 0; });
    std::string c = t.coeff.to_string();
    if (!t.coeff.is_one() || is_unit_monomial) {
      if (c.find('+') != std::string::npos && !is_unit_monomial) c = "(" + c + ")";
      factors.push_back(c);
    }
    for (std::size_t v = 0; v < nvars_; ++v) {
      if (!t.exp[v]) continue;
      std::string f = names[v];
      if (t.exp[v] > 1) f += "^" + std::to_string(t.exp[v]);
      factors.push_back(f);
    }
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
  }
  return os.str();
}

std::size_t MultiPoly::hash() const {
  std::size_t h = std::hash<std::size_t>{}(terms_.size());
  for (const auto& t : terms_) {
    h ^= std::hash<std::uint32_t>{}(t.coeff.code()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    for (auto e : t.exp) h ^= std::hash<std::uint32_t>{}(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// --- division and gcd ------------------------------------------------------

std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (b.is_one()) return a;
  MultiPoly q = a.zero();
  MultiPoly r = a;
  const Term& lb = b.leading_term();
  const FieldElement lb_inv = lb.coeff.inverse();
  while (!r.is_zero()) {
    const Term& lr = r.leading_term();
    Exponents e(lr.exp.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (lr.exp[i] < lb.exp[i]) return std::nullopt;
      e[i] = lr.exp[i] - lb.exp[i];
    }
    MultiPoly t = MultiPoly::monomial(lr.coeff * lb_inv, std::move(e));
    q = q + t;
    r = r - t * b;
  }
  return q;
}

namespace {

MultiPoly exact(const MultiPoly& a, const MultiPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("inexact division in gcd");
  return *q;
}

MultiPoly gcd_rec(const MultiPoly& a, const MultiPoly& b, std::size_t v);

// gcd of the coefficients of a as a polynomial in x = X_{v-1}.
MultiPoly content(const MultiPoly& a, std::size_t v) {
  const std::size_t x = v - 1;
  MultiPoly g = a.zero();
  const int d = a.degree_in(x);
  for (int i = d; i >= 0; --i) {
    MultiPoly c = a.coefficient_in(x, static_cast<std::uint32_t>(i));
    if (c.is_zero()) continue;
    g = gcd_rec(g, c, v - 1);
    if (g.is_constant()) break;
  }
  return g.monic();
}

// Pseudo-remainder of a by b in x, without tracking the scaling power.
MultiPoly prem(MultiPoly a, const MultiPoly& b, std::size_t x) {
  const int db = b.degree_in(x);
  const MultiPoly lb = b.coefficient_in(x, static_cast<std::uint32_t>(db));
  while (!a.is_zero() && a.degree_in(x) >= db) {
    const int da = a.degree_in(x);
    const MultiPoly la = a.coefficient_in(x, static_cast<std::uint32_t>(da));
    a = lb * a - la * b.shifted(x, static_cast<std::uint32_t>(da - db));
  }
  return a;
}

MultiPoly gcd_rec(const MultiPoly& a, const MultiPoly& b, std::size_t v) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return a.one();
  const std::size_t x = v - 1;
  if (a.degree_in(x) == 0 && b.degree_in(x) == 0) return gcd_rec(a, b, v - 1);

  const MultiPoly ca = content(a, v);
  const MultiPoly cb = content(b, v);
  const MultiPoly c = gcd_rec(ca, cb, v - 1);
  MultiPoly pa = exact(a, ca);
  MultiPoly pb = exact(b, cb);
  if (pa.degree_in(x) < pb.degree_in(x)) std::swap(pa, pb);

  MultiPoly g;
  for (;;) {
    if (pb.degree_in(x) == 0) {
      g = pa.one();
      break;
    }
    MultiPoly r = prem(pa, pb, x);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    pa = std::move(pb);
    pb = exact(r, content(r, v));
  }
  return (c * g).monic();
}

}  // namespace

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.field() != b.field() || a.nvars() != b.nvars())
    throw std::invalid_argument("gcd of polynomials over different rings");
  return gcd_rec(a, b, a.nvars());
}

MultiPoly lcm(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.zero();
  return (exact(a, gcd(a, b)) * b).monic();
}

// --- RatFunc ----------------------------------------------------------------

RatFunc::RatFunc(MultiPoly num) : num_(std::move(num)), den_(num_.one()) {}

RatFunc::RatFunc(MultiPoly num, MultiPoly den) {
  *this = normalized(std::move(num), std::move(den));
}

RatFunc RatFunc::normalized(MultiPoly num, MultiPoly den) {
  if (den.is_zero()) throw DivisionByZero();
  if (num.field() != den.field() || num.nvars() != den.nvars())
    throw std::invalid_argument("numerator and denominator over different rings");
  if (num.is_zero()) return RatFunc(num, den.one(), Reduced{});
  if (!den.is_constant()) {
    MultiPoly g = gcd(num, den);
    if (!g.is_one()) {
      num = exact(num, g);
      den = exact(den, g);
    }
  }
  const FieldElement lc = den.leading_coeff();
  if (!lc.is_one()) {
    const FieldElement inv = lc.inverse();
    num = inv * num;
    den = inv * den;
  }
  return RatFunc(std::move(num), std::move(den), Reduced{});
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return normalized(den_, num_);
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Reduced{}); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_.is_one() && b.den_.is_one()) return RatFunc(a.num_ + b.num_, a.den_, RatFunc::Reduced{});
  if (a.den_ == b.den_) return RatFunc::normalized(a.num_ + b.num_, a.den_);
  const MultiPoly g = gcd(a.den_, b.den_);
  const MultiPoly ad = exact(a.den_, g);
  const MultiPoly bd = exact(b.den_, g);
  return RatFunc::normalized(a.num_ * bd + b.num_ * ad, ad * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  if (a.den_.is_one() && b.den_.is_one()) return RatFunc(a.num_ * b.num_, a.den_, RatFunc::Reduced{});
  // Cross-cancel so the product is already reduced.
  MultiPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  if (!bd.is_one()) {
    MultiPoly g = gcd(an, bd);
    if (!g.is_one()) {
      an = exact(an, g);
      bd = exact(bd, g);
    }
  }
  if (!ad.is_one()) {
    MultiPoly g = gcd(bn, ad);
    if (!g.is_one()) {
      bn = exact(bn, g);
      ad = exact(ad, g);
    }
  }
  MultiPoly num = an * bn;
  MultiPoly den = ad * bd;
  const FieldElement lc = den.leading_coeff();
  if (!lc.is_one()) {
    const FieldElement inv = lc.inverse();
    num = inv * num;
    den = inv * den;
  }
  return RatFunc(std::move(num), std::move(den), RatFunc::Reduced{});
}

FieldElement RatFunc::evaluate(std::span<const FieldElement> point) const {
  const FieldElement d = den_.evaluate(point);
  if (d.is_zero()) throw NotAdmissible(den_);
  return num_.evaluate(point) / d;
}

std::string RatFunc::to_string(std::span<const std::string> names) const {
  if (den_.is_one()) return num_.to_string(names);
  auto wrap = [&](const MultiPoly& p) {
    std::string s = p.to_string(names);
    return p.terms().size() > 1 || s.find('*') != std::string::npos ? "(" + s + ")" : s;
  };
  return wrap(num_) + "/" + wrap(den_);
}

std::size_t RatFunc::hash() const { return num_.hash() * 31 + den_.hash(); }

MultiPoly denominator_lcm(std::span<const FuncMat> mats) {
  if (mats.empty()) throw std::invalid_argument("denominator_lcm of an empty set");
  MultiPoly f = mats.front().like().one().denominator();
  for (const auto& m : mats)
    for (const auto& e : m.entries())
      if (!e.is_zero() && !e.denominator().is_one()) f = lcm(f, e.denominator());
  return f;
}

}  // namespace matfin
