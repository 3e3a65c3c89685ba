#include <algorithm>
#include <deque>
#include <map>
#include <unordered_set>

#include "matfin/matrix.hpp"
#include "testkit.hpp"

namespace matfin::testkit {

namespace {

struct KeyHash {
  std::size_t operator()(const std::string& s) const { return std::hash<std::string>{}(s); }
};

// Canonical text of a reduced matrix; equality of keys is equality of matrices.
std::string key(const FuncMat& m) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m.like().nvars(); ++i) names.push_back("x" + std::to_string(i));
  std::string k;
  for (const auto& e : m.entries()) k += e.to_string(names) + ";";
  return k;
}

FuncMat word_matrix(const std::vector<FuncMat>& gens, const std::vector<FuncMat>& invs, const std::vector<int>& w) {
  FuncMat acc = FuncMat::identity(gens.front().rows(), gens.front().like());
  for (int l : w) acc = acc * (l > 0 ? gens[l - 1] : invs[-l - 1]);
  return acc;
}

RatFunc trace(const FuncMat& m) {
  RatFunc t = m.like();
  for (std::size_t i = 0; i < m.rows(); ++i) t = t + m(i, i);
  return t;
}

RatFunc determinant(FuncMat m) {
  const std::size_t n = m.rows();
  RatFunc det = m.like().one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return m.like();
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det = det * m(c, c);
    const RatFunc inv = m(c, c).inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      const RatFunc f = m(r, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(r, j) = m(r, j) - f * m(c, j);
    }
  }
  return det;
}

}  // namespace

std::optional<std::vector<FuncMat>> closure_elements(const std::vector<FuncMat>& gens, std::size_t cap) {
  std::vector<FuncMat> elems{FuncMat::identity(gens.front().rows(), gens.front().like())};
  std::unordered_set<std::string, KeyHash> seen{key(elems.front())};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      FuncMat x = elems[i] * g;
      if (!seen.insert(key(x)).second) continue;
      elems.push_back(std::move(x));
      if (elems.size() > cap) return std::nullopt;
    }
  }
  return elems;
}

std::optional<InfiniteWitness> infinite_order_witness(const std::vector<FuncMat>& gens) {
  std::vector<FuncMat> invs;
  for (const auto& g : gens) invs.push_back(inverse(g));
  const int r = static_cast<int>(gens.size());
  std::vector<int> letters;
  for (int i = 1; i <= r; ++i) {
    letters.push_back(i);
    letters.push_back(-i);
  }
  std::deque<std::vector<int>> words;
  for (int l : letters) words.push_back({l});
  while (!words.empty()) {
    std::vector<int> w = words.front();
    words.pop_front();
    const FuncMat m = word_matrix(gens, invs, w);
    if (!determinant(m).is_constant()) return InfiniteWitness{w, 1, "det"};
    FuncMat pw = m;
    for (unsigned k = 1; k <= m.rows(); ++k, pw = pw * m)
      if (!trace(pw).is_constant()) return InfiniteWitness{w, k, "trace"};
    if (w.size() < 3)
      for (int l : letters) {
        if (l == -w.back()) continue;
        auto v = w;
        v.push_back(l);
        words.push_back(std::move(v));
      }
  }
  return std::nullopt;
}

std::size_t span_dimension(const std::vector<FuncMat>& elements, FieldRef k) {
  if (elements.empty()) return 0;
  MultiPoly d = elements.front().like().one().numerator();
  for (const auto& m : elements)
    for (const auto& e : m.entries()) d = lcm(d, e.denominator());

  // Column index for each (entry position, monomial).
  std::map<std::pair<std::size_t, std::vector<std::uint32_t>>, std::size_t> columns;
  std::vector<std::vector<std::pair<std::size_t, FieldElement>>> rows;
  for (const auto& m : elements) {
    std::vector<std::pair<std::size_t, FieldElement>> row;
    auto entries = m.entries();
    for (std::size_t pos = 0; pos < entries.size(); ++pos) {
      const RatFunc& e = entries[pos];
      if (e.is_zero()) continue;
      MultiPoly scaled = *divide_exact(d, e.denominator()) * e.numerator();
      for (const auto& t : scaled.terms()) {
        auto [it, fresh] = columns.emplace(std::make_pair(pos, std::vector<std::uint32_t>(t.exp.begin(), t.exp.end())),
                                           columns.size());
        row.emplace_back(it->second, embed(t.coeff, k));
      }
    }
    rows.push_back(std::move(row));
  }
  Mat<FieldElement> a(rows.size(), columns.size(), k->zero());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [c, v] : rows[i]) a(i, c) = a(i, c) + v;
  return rank(a);
}

std::uint64_t element_order(const FuncMat& g, std::uint64_t bound) {
  FuncMat x = g;
  for (std::uint64_t e = 1; e <= bound; ++e, x = x * g)
    if (x.is_identity()) return e;
  return 0;
}

bool is_power_of(std::uint64_t x, std::uint64_t p) {
  if (x == 0) return false;
  while (x % p == 0) x /= p;
  return x == 1;
}

}  // namespace matfin::testkit
