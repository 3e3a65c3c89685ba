#pragma once

// Finiteness for nilpotent groups and for single elements.

#include <cstddef>
#include <cstdint>
#include <span>

#include "matfin/finiteness.hpp"
#include "matfin/funcfield.hpp"

namespace matfin {

// Smallest γ >= 0 with n <= p^γ.
unsigned gamma_exponent(std::size_t n, std::uint32_t p);

struct NilpotentVerdict {
  bool finite = false;
  unsigned gamma = 0;
  Verdict powered;  // completely reducible test on the p^γ-th powers
};

// Valid only for nilpotent groups: the p^γ-th powers generate a completely
// reducible group that is finite exactly when the original one is.
NilpotentVerdict is_finite_nilpotent(std::span<const FuncMat> gens, const DecisionOptions& options);

// Whether the cyclic group generated by g is finite.
NilpotentVerdict has_finite_order(const FuncMat& g, const DecisionOptions& options);

}  // namespace matfin
