#include "matfin/nilpotent.hpp"

#include <stdexcept>
#include <vector>

namespace matfin {

unsigned gamma_exponent(std::size_t n, std::uint32_t p) {
  if (n == 0) throw std::invalid_argument("gamma_exponent: n must be positive");
  if (p < 2) throw std::invalid_argument("gamma_exponent: p must be at least 2");
  unsigned g = 0;
  for (std::uint64_t pw = 1; pw < n; pw *= p) ++g;
  return g;
}

NilpotentVerdict is_finite_nilpotent(std::span<const FuncMat> gens, const DecisionOptions& options) {
  FieldRef fq = base_field(gens);
  NilpotentVerdict out;
  out.gamma = gamma_exponent(gens.front().rows(), fq->characteristic());
  std::uint64_t e = 1;
  for (unsigned i = 0; i < out.gamma; ++i) e *= fq->characteristic();
  std::vector<FuncMat> powered;
  powered.reserve(gens.size());
  for (const auto& g : gens) powered.push_back(power(g, e));
  out.powered = is_finite_cr(powered, options);
  out.finite = out.powered.finite;
  return out;
}

NilpotentVerdict has_finite_order(const FuncMat& g, const DecisionOptions& options) {
  return is_finite_nilpotent(std::span<const FuncMat>(&g, 1), options);
}

}  // namespace matfin
