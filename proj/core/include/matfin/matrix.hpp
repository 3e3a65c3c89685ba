#pragma once

// Dense exact linear algebra over an abstract field.
//
// Every routine here is written against the ExactField concept, so the same
// code runs over finite fields (FieldElement) and over rational function
// fields (RatFunc). Vectors are column vectors and matrices act on the left;
// a Subspace stores a row basis in reduced row-echelon form.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace matfin {

template <class K>
concept ExactField = std::regular<K> && requires(const K a, const K b) {
  { a + b } -> std::convertible_to<K>;
  { a - b } -> std::convertible_to<K>;
  { a * b } -> std::convertible_to<K>;
  { a / b } -> std::convertible_to<K>;
  { -a } -> std::convertible_to<K>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.zero() } -> std::convertible_to<K>;
  { a.one() } -> std::convertible_to<K>;
};

class SingularMatrix : public std::domain_error {
 public:
  SingularMatrix() : std::domain_error("matrix is singular") {}
};

template <ExactField K>
using Vec = std::vector<K>;

template <ExactField K>
class Mat {
 public:
  Mat() = default;

  // `like` supplies the field context; it is kept so that empty matrices
  // still know which field they live over.
  Mat(std::size_t rows, std::size_t cols, const K& like)
      : rows_(rows), cols_(cols), zero_(like.zero()), data_(rows * cols, like.zero()) {}

  static Mat zero(std::size_t rows, std::size_t cols, const K& like) {
    return Mat(rows, cols, like);
  }

  static Mat identity(std::size_t n, const K& like) {
    Mat m(n, n, like);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = like.one();
    return m;
  }

  static Mat from_rows(const std::vector<std::vector<K>>& rows, const K& like) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    Mat m(r, c, like);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const K& like() const { return zero_; }

  K& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const K& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const K> row(std::size_t r) const {
    return std::span<const K>(data_).subspan(r * cols_, cols_);
  }
  std::span<const K> entries() const { return data_; }

  Vec<K> row_vector(std::size_t r) const {
    auto s = row(r);
    return Vec<K>(s.begin(), s.end());
  }

  Vec<K> column_vector(std::size_t c) const {
    Vec<K> v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
    return v;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const K& x) { return x.is_zero(); });
  }

  bool is_identity() const {
    if (!is_square()) return false;
    const K one = zero_.one();
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? one : zero_)) return false;
    return true;
  }

  Mat transpose() const {
    Mat t(cols_, rows_, zero_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat& operator+=(const Mat& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = data_[i] + o.data_[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = data_[i] - o.data_[i];
    return *this;
  }

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    Mat c(a.rows_, b.cols_, a.zero_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const K& x = a(i, l);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const K& y = b(l, j);
          if (!y.is_zero()) c(i, j) = c(i, j) + x * y;
        }
      }
    }
    return c;
  }

  friend Mat operator*(const K& s, Mat a) {
    for (auto& x : a.data_) x = s * x;
    return a;
  }

  friend Vec<K> operator*(const Mat& a, const Vec<K>& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
    Vec<K> out(a.rows_, a.zero_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        if (!a(i, j).is_zero() && !v[j].is_zero()) out[i] = out[i] + a(i, j) * v[j];
    return out;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  // Applies `f` to every entry, producing a matrix over another field.
  template <class F>
  auto map(F&& f, const std::invoke_result_t<F, const K&>& like) const {
    using R = std::invoke_result_t<F, const K&>;
    Mat<R> out(rows_, cols_, like);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

 private:
  void check_same_shape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("matrix sum: dimension mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  K zero_{};
  std::vector<K> data_;
};

template <ExactField K>
Mat<K> kronecker(const Mat<K>& a, const Mat<K>& b) {
  Mat<K> out(a.rows() * b.rows(), a.cols() * b.cols(), a.like());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

template <ExactField K>
Mat<K> block_diagonal(const Mat<K>& a, const Mat<K>& b) {
  Mat<K> out(a.rows() + b.rows(), a.cols() + b.cols(), a.like());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

template <ExactField K>
Mat<K> power(Mat<K> base, unsigned long long e) {
  Mat<K> acc = Mat<K>::identity(base.rows(), base.like());
  while (e > 0) {
    if (e & 1ULL) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return acc;
}

// Result of Gauss-Jordan elimination: transform * input == rref.
template <ExactField K>
struct Echelon {
  Mat<K> rref;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  Mat<K> transform;
};

template <ExactField K>
Echelon<K> rref(const Mat<K>& a) {
  Echelon<K> e{a, 0, {}, Mat<K>::identity(a.rows(), a.like())};
  Mat<K>& r = e.rref;
  Mat<K>& t = e.transform;
  const std::size_t m = r.rows();
  const std::size_t n = r.cols();
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t piv = row;
    while (piv < m && r(piv, col).is_zero()) ++piv;
    if (piv == m) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < n; ++j) std::swap(r(piv, j), r(row, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(t(piv, j), t(row, j));
    }
    const K inv = r(row, col).one() / r(row, col);
    for (std::size_t j = 0; j < n; ++j) r(row, j) = r(row, j) * inv;
    for (std::size_t j = 0; j < m; ++j) t(row, j) = t(row, j) * inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || r(i, col).is_zero()) continue;
      const K f = r(i, col);
      for (std::size_t j = col; j < n; ++j)
        if (!r(row, j).is_zero()) r(i, j) = r(i, j) - f * r(row, j);
      for (std::size_t j = 0; j < m; ++j)
        if (!t(row, j).is_zero()) t(i, j) = t(i, j) - f * t(row, j);
    }
    e.pivots.push_back(col);
    ++row;
  }
  e.rank = row;
  return e;
}

template <ExactField K>
std::size_t rank(const Mat<K>& a) {
  return rref(a).rank;
}

template <ExactField K>
Mat<K> inverse(const Mat<K>& a) {
  if (!a.is_square()) throw std::invalid_argument("inverse of a non-square matrix");
  auto e = rref(a);
  if (e.rank != a.rows()) throw SingularMatrix();
  return e.transform;
}

template <ExactField K>
bool is_invertible(const Mat<K>& a) {
  return a.is_square() && rref(a).rank == a.rows();
}

// A subspace of K^n, stored as the nonzero rows of an RREF matrix.
template <ExactField K>
class Subspace {
 public:
  Subspace() = default;
  Subspace(std::size_t ambient, const K& like) : ambient_(ambient), basis_(0, ambient, like) {}

  static Subspace full(std::size_t ambient, const K& like) {
    Subspace s(ambient, like);
    s.basis_ = Mat<K>::identity(ambient, like);
    for (std::size_t i = 0; i < ambient; ++i) s.pivots_.push_back(i);
    return s;
  }

  // Row span of `rows` (each row one vector).
  static Subspace span(const Mat<K>& rows) {
    Subspace s(rows.cols(), rows.like());
    auto e = rref(rows);
    s.basis_ = Mat<K>(e.rank, rows.cols(), rows.like());
    for (std::size_t i = 0; i < e.rank; ++i)
      for (std::size_t j = 0; j < rows.cols(); ++j) s.basis_(i, j) = e.rref(i, j);
    s.pivots_ = e.pivots;
    return s;
  }

  static Subspace span(const std::vector<Vec<K>>& vectors, std::size_t ambient, const K& like) {
    Mat<K> m(vectors.size(), ambient, like);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].size() != ambient) throw std::invalid_argument("vector length mismatch");
      for (std::size_t j = 0; j < ambient; ++j) m(i, j) = vectors[i][j];
    }
    return span(m);
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  const Mat<K>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vec<K> vector(std::size_t i) const { return basis_.row_vector(i); }

  bool contains(const Vec<K>& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("vector length mismatch");
    Vec<K> w = v;
    for (std::size_t i = 0; i < dim(); ++i) {
      const K f = w[pivots_[i]];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < ambient_; ++j)
        if (!basis_(i, j).is_zero()) w[j] = w[j] - f * basis_(i, j);
    }
    return std::all_of(w.begin(), w.end(), [](const K& x) { return x.is_zero(); });
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  Mat<K> basis_;
  std::vector<std::size_t> pivots_;
};

// {v : E v = 0}; dimension is cols(E) - rank(E).
template <ExactField K>
Subspace<K> nullspace(const Mat<K>& e) {
  auto ech = rref(e);
  const std::size_t n = e.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  std::vector<Vec<K>> vecs;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec<K> v(n, e.like().zero());
    v[free] = e.like().one();
    for (std::size_t i = 0; i < ech.rank; ++i) v[ech.pivots[i]] = -ech.rref(i, free);
    vecs.push_back(std::move(v));
  }
  return Subspace<K>::span(vecs, n, e.like());
}

template <ExactField K>
Subspace<K> sum(const Subspace<K>& u, const Subspace<K>& w) {
  if (u.ambient() != w.ambient()) throw std::invalid_argument("subspace sum: ambient mismatch");
  Mat<K> m(u.dim() + w.dim(), u.ambient(), u.basis().like());
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < u.ambient(); ++j) m(i, j) = u.basis()(i, j);
  for (std::size_t i = 0; i < w.dim(); ++i)
    for (std::size_t j = 0; j < w.ambient(); ++j) m(u.dim() + i, j) = w.basis()(i, j);
  return Subspace<K>::span(m);
}

// Zassenhaus: echelonize [[U, U], [W, 0]]; rows whose left half vanishes span U ∩ W.
template <ExactField K>
Subspace<K> intersect(const Subspace<K>& u, const Subspace<K>& w) {
  if (u.ambient() != w.ambient())
    throw std::invalid_argument("subspace intersection: ambient mismatch");
  const std::size_t n = u.ambient();
  const K& like = u.basis().like();
  Mat<K> z(u.dim() + w.dim(), 2 * n, like);
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      z(i, j) = u.basis()(i, j);
      z(i, n + j) = u.basis()(i, j);
    }
  for (std::size_t i = 0; i < w.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) z(u.dim() + i, j) = w.basis()(i, j);
  auto e = rref(z);
  std::vector<Vec<K>> vecs;
  for (std::size_t i = 0; i < e.rank; ++i) {
    if (e.pivots[i] < n) continue;
    Vec<K> v(n, like.zero());
    for (std::size_t j = 0; j < n; ++j) v[j] = e.rref(i, n + j);
    vecs.push_back(std::move(v));
  }
  return Subspace<K>::span(vecs, n, like);
}

// S·U as a subspace.
template <ExactField K>
Subspace<K> image(const Mat<K>& s, const Subspace<K>& u) {
  std::vector<Vec<K>> vecs;
  vecs.reserve(u.dim());
  for (std::size_t i = 0; i < u.dim(); ++i) vecs.push_back(s * u.vector(i));
  return Subspace<K>::span(vecs, u.ambient(), u.basis().like());
}

template <ExactField K>
bool is_invariant(const Mat<K>& s, const Subspace<K>& u) {
  for (std::size_t i = 0; i < u.dim(); ++i)
    if (!u.contains(s * u.vector(i))) return false;
  return true;
}

// Flattens each matrix row-major into one row of the returned matrix.
template <ExactField K>
Mat<K> flatten_rows(std::span<const Mat<K>> mats) {
  if (mats.empty()) throw std::invalid_argument("flatten_rows: empty sequence");
  const std::size_t w = mats.front().rows() * mats.front().cols();
  Mat<K> out(mats.size(), w, mats.front().like());
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (mats[i].rows() * mats[i].cols() != w) throw std::invalid_argument("flatten_rows: shape mismatch");
    auto e = mats[i].entries();
    for (std::size_t j = 0; j < w; ++j) out(i, j) = e[j];
  }
  return out;
}

// Coefficients a with target = Σ a_k basis_k, or nullopt when target is not in the span.
template <ExactField K>
std::optional<Vec<K>> coordinates(const Mat<K>& target, std::span<const Mat<K>> basis) {
  if (basis.empty()) {
    if (target.is_zero()) return Vec<K>{};
    return std::nullopt;
  }
  const std::size_t d = basis.size();
  const std::size_t w = target.rows() * target.cols();
  // Columns are the flattened basis matrices, augmented by the target.
  Mat<K> sys(w, d + 1, target.like());
  for (std::size_t k = 0; k < d; ++k) {
    if (basis[k].rows() != target.rows() || basis[k].cols() != target.cols())
      throw std::invalid_argument("coordinates: shape mismatch");
    auto e = basis[k].entries();
    for (std::size_t j = 0; j < w; ++j) sys(j, k) = e[j];
  }
  auto te = target.entries();
  for (std::size_t j = 0; j < w; ++j) sys(j, d) = te[j];
  auto e = rref(sys);
  std::size_t basis_rank = 0;
  for (auto p : e.pivots) {
    if (p == d) return std::nullopt;
    ++basis_rank;
  }
  if (basis_rank != d) throw std::invalid_argument("coordinates: basis is linearly dependent");
  Vec<K> a(d, target.like().zero());
  for (std::size_t i = 0; i < d; ++i) a[e.pivots[i]] = e.rref(i, d);
  return a;
}

// Block-triangular form of a set of matrices with respect to an invariant
// subspace U: the basis of U is extended by standard vectors at the non-pivot
// positions (lowest index first). With P = [u_1 .. u_d | e_j ...] (columns),
// P^{-1} M P = [[M|_U, *], [0, M on V/U]].
template <ExactField K>
struct InducedActions {
  std::vector<Mat<K>> on_submodule;
  std::vector<Mat<K>> on_quotient;
  std::vector<Mat<K>> off_diagonal;
  Mat<K> change_of_basis;  // P
  Mat<K> change_of_basis_inverse;
};

template <ExactField K>
InducedActions<K> induced_actions(std::span<const Mat<K>> mats, const Subspace<K>& u) {
  const std::size_t n = u.ambient();
  const std::size_t d = u.dim();
  const K& like = u.basis().like();
  Mat<K> p(n, n, like);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t r = 0; r < n; ++r) p(r, i) = u.basis()(i, r);
  std::vector<bool> is_pivot(n, false);
  for (auto c : u.pivots()) is_pivot[c] = true;
  std::size_t col = d;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) p(j, col++) = like.one();

  InducedActions<K> out;
  out.change_of_basis = p;
  out.change_of_basis_inverse = inverse(p);
  for (const auto& m : mats) {
    if (m.rows() != n || m.cols() != n) throw std::invalid_argument("induced_actions: shape mismatch");
    if (!is_invariant(m, u)) throw std::invalid_argument("induced_actions: subspace is not invariant");
    Mat<K> c = out.change_of_basis_inverse * m * p;
    for (std::size_t i = d; i < n; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (!c(i, j).is_zero()) throw std::logic_error("induced_actions: conjugate is not block triangular");
    Mat<K> a(d, d, like), b(n - d, n - d, like), x(d, n - d, like);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) a(i, j) = c(i, j);
    for (std::size_t i = d; i < n; ++i)
      for (std::size_t j = d; j < n; ++j) b(i - d, j - d) = c(i, j);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = d; j < n; ++j) x(i, j - d) = c(i, j);
    out.on_submodule.push_back(std::move(a));
    out.on_quotient.push_back(std::move(b));
    out.off_diagonal.push_back(std::move(x));
  }
  return out;
}

// Reassembles [[a, x], [0, b]].
template <ExactField K>
Mat<K> assemble_block_triangular(const Mat<K>& a, const Mat<K>& x, const Mat<K>& b) {
  const std::size_t d = a.rows();
  const std::size_t n = d + b.rows();
  const K& like = a.rows() ? a.like() : b.like();
  Mat<K> out(n, n, like);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = d; j < n; ++j) out(i, j) = x(i, j - d);
  for (std::size_t i = d; i < n; ++i)
    for (std::size_t j = d; j < n; ++j) out(i, j) = b(i - d, j - d);
  return out;
}

}  // namespace matfin
