#pragma once

// Bases of enveloping algebras <T>_K for matrices T over a finite field L
// and a subfield K, built from words in T so that every basis element has a
// canonical pre-image over the function field.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "matfin/funcfield.hpp"
#include "matfin/gf.hpp"
#include "matfin/matrix.hpp"

namespace matfin {

class AlgebraBasis {
 public:
  static constexpr std::size_t kRoot = static_cast<std::size_t>(-1);

  FieldRef big_field() const { return big_; }
  FieldRef subfield() const { return sub_; }
  std::size_t dim() const { return elements_.size(); }
  std::size_t degree() const { return n_; }

  const std::vector<FFMat>& elements() const { return elements_; }
  const FFMat& element(std::size_t j) const { return elements_[j]; }

  // elements[j] == elements[parent(j)] * T[letter(j)]; element 0 is I_n.
  std::size_t parent(std::size_t j) const { return parent_[j]; }
  std::size_t letter(std::size_t j) const { return letter_[j]; }
  std::vector<std::size_t> word(std::size_t j) const;

  // Index k with elements[k] accepted as elements[i] * T[j], if any.
  std::optional<std::size_t> accepted_product(std::size_t i, std::size_t j) const;

  // K-coordinates of m with respect to the basis, or nullopt if m lies
  // outside the K-span.
  std::optional<std::vector<FieldElement>> coordinates(const FFMat& m) const;

  friend AlgebraBasis basis_env_algebra(std::span<const FFMat> gens, FieldRef subfield);

 private:
  AlgebraBasis(FieldRef big, FieldRef sub, std::size_t n);

  std::vector<FieldElement> expand(const FFMat& m) const;
  // Reduces v against the echelon rows; returns the multipliers used.
  std::vector<FieldElement> reduce(std::vector<FieldElement>& v) const;
  bool try_insert(const FFMat& m, std::size_t parent, std::size_t letter);

  FieldRef big_;
  FieldRef sub_;
  std::size_t n_;
  std::optional<SubfieldCoordinates> coords_;
  std::vector<FFMat> elements_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> letter_;
  std::vector<std::vector<std::size_t>> products_;  // products_[i][j] -> element index or kRoot

  // Semi-echelon rows over K (each row vanishes at earlier pivots), with the
  // combination of elements each row equals.
  std::vector<std::vector<FieldElement>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<FieldElement>> combos_;
};

// Breadth-first closure: starts from {I}, appends A*T_j whenever it leaves
// the current K-span, scanning elements in insertion order and generators in
// input order. All gens must be square matrices over one finite field that
// contains `subfield`.
AlgebraBasis basis_env_algebra(std::span<const FFMat> gens, FieldRef subfield);

// Function-field products spelled by basis words, memoized so each element
// costs one multiplication beyond its parent.
class PreimageCache {
 public:
  PreimageCache(const AlgebraBasis& basis, std::span<const FuncMat> gens);

  const FuncMat& get(std::size_t j);
  std::size_t multiplications() const { return multiplications_; }

 private:
  const AlgebraBasis& basis_;
  std::vector<FuncMat> gens_;
  std::vector<std::optional<FuncMat>> cache_;
  std::size_t multiplications_ = 0;
};

}  // namespace matfin
