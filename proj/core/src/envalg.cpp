#include "matfin/envalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace matfin {

AlgebraBasis::AlgebraBasis(FieldRef big, FieldRef sub, std::size_t n) : big_(big), sub_(sub), n_(n) {
  if (sub != big) coords_.emplace(sub, big);
}

std::vector<std::size_t> AlgebraBasis::word(std::size_t j) const {
  std::vector<std::size_t> w;
  for (std::size_t k = j; k != 0; k = parent_[k]) w.push_back(letter_[k]);
  std::reverse(w.begin(), w.end());
  return w;
}

std::optional<std::size_t> AlgebraBasis::accepted_product(std::size_t i, std::size_t j) const {
  if (i >= products_.size() || j >= products_[i].size() || products_[i][j] == kRoot) return std::nullopt;
  return products_[i][j];
}

std::vector<FieldElement> AlgebraBasis::expand(const FFMat& m) const {
  std::vector<FieldElement> v;
  const std::size_t e = coords_ ? coords_->relative_degree() : 1;
  v.reserve(m.rows() * m.cols() * e);
  for (const auto& x : m.entries()) {
    if (x.field() != big_) throw std::invalid_argument("matrix entry outside the algebra's field");
    if (!coords_) {
      v.push_back(x);
    } else if (x.is_zero()) {
      for (std::size_t i = 0; i < e; ++i) v.push_back(sub_->zero());
    } else {
      auto c = coords_->coordinates(x);
      v.insert(v.end(), c.begin(), c.end());
    }
  }
  return v;
}

std::vector<FieldElement> AlgebraBasis::reduce(std::vector<FieldElement>& v) const {
  std::vector<FieldElement> mult(rows_.size(), sub_->zero());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const FieldElement f = v[pivots_[i]];
    if (f.is_zero()) continue;
    mult[i] = f;
    const auto& row = rows_[i];
    for (std::size_t c = pivots_[i]; c < v.size(); ++c)
      if (!row[c].is_zero()) v[c] -= f * row[c];
  }
  return mult;
}

bool AlgebraBasis::try_insert(const FFMat& m, std::size_t parent, std::size_t letter) {
  auto v = expand(m);
  auto mult = reduce(v);
  auto it = std::find_if(v.begin(), v.end(), [](const FieldElement& x) { return !x.is_zero(); });
  if (it == v.end()) return false;

  const std::size_t d = elements_.size();
  if (d + 1 > v.size()) throw std::logic_error("enveloping algebra dimension exceeds n^2 [L:K]");
  const std::size_t pivot = static_cast<std::size_t>(it - v.begin());
  const FieldElement inv = v[pivot].inverse();
  for (auto& x : v) x *= inv;

  // residual = A_new - Σ mult_i row_i, with row_i = Σ_k combos_[i][k] A_k.
  std::vector<FieldElement> combo(d + 1, sub_->zero());
  combo[d] = sub_->one();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (mult[i].is_zero()) continue;
    for (std::size_t k = 0; k < combos_[i].size(); ++k) combo[k] -= mult[i] * combos_[i][k];
  }
  for (auto& x : combo) x *= inv;
  for (auto& c : combos_) c.push_back(sub_->zero());

  rows_.push_back(std::move(v));
  pivots_.push_back(pivot);
  combos_.push_back(std::move(combo));
  elements_.push_back(m);
  parent_.push_back(parent);
  letter_.push_back(letter);
  products_.emplace_back();
  return true;
}

std::optional<std::vector<FieldElement>> AlgebraBasis::coordinates(const FFMat& m) const {
  if (m.rows() != n_ || m.cols() != n_) throw std::invalid_argument("coordinates: wrong matrix shape");
  auto v = expand(m);
  auto mult = reduce(v);
  if (std::any_of(v.begin(), v.end(), [](const FieldElement& x) { return !x.is_zero(); })) return std::nullopt;
  std::vector<FieldElement> a(elements_.size(), sub_->zero());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (mult[i].is_zero()) continue;
    for (std::size_t k = 0; k < combos_[i].size(); ++k) a[k] += mult[i] * combos_[i][k];
  }
  return a;
}

AlgebraBasis basis_env_algebra(std::span<const FFMat> gens, FieldRef subfield) {
  if (gens.empty()) throw std::invalid_argument("basis_env_algebra: no generators");
  const std::size_t n = gens.front().rows();
  FieldRef big = gens.front().like().field();
  for (const auto& g : gens) {
    if (g.rows() != n || g.cols() != n) throw std::invalid_argument("basis_env_algebra: generators must be n x n");
    if (g.like().field() != big) throw std::invalid_argument("basis_env_algebra: generators over different fields");
  }
  if (!big->degree_over(subfield)) throw std::invalid_argument("basis_env_algebra: K is not a subfield of L");

  AlgebraBasis basis(big, subfield, n);
  basis.try_insert(FFMat::identity(n, big->zero()), AlgebraBasis::kRoot, AlgebraBasis::kRoot);
  for (std::size_t i = 0; i < basis.elements_.size(); ++i) {
    basis.products_[i].assign(gens.size(), AlgebraBasis::kRoot);
    for (std::size_t j = 0; j < gens.size(); ++j) {
      FFMat cand = basis.elements_[i] * gens[j];
      if (basis.try_insert(cand, i, j)) basis.products_[i][j] = basis.elements_.size() - 1;
    }
  }
  return basis;
}

PreimageCache::PreimageCache(const AlgebraBasis& basis, std::span<const FuncMat> gens)
    : basis_(basis), gens_(gens.begin(), gens.end()), cache_(basis.dim()) {
  if (gens_.empty()) throw std::invalid_argument("PreimageCache: no generators");
}

const FuncMat& PreimageCache::get(std::size_t j) {
  if (j >= cache_.size()) throw std::out_of_range("PreimageCache: index out of range");
  if (cache_[j]) return *cache_[j];
  if (j == 0) {
    cache_[0] = FuncMat::identity(gens_.front().rows(), gens_.front().like());
  } else {
    const FuncMat& parent = get(basis_.parent(j));
    const std::size_t letter = basis_.letter(j);
    if (letter >= gens_.size()) throw std::out_of_range("PreimageCache: word letter out of range");
    cache_[j] = parent * gens_[letter];
    ++multiplications_;
  }
  return *cache_[j];
}

}  // namespace matfin
