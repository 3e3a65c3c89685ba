#pragma once

// Orders of finite matrix groups: stabilizer chains over finite fields and
// the specialization loop that transfers them to F_q(X_1..X_m).

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "matfin/finiteness.hpp"
#include "matfin/funcfield.hpp"
#include "matfin/gf.hpp"
#include "matfin/matrix.hpp"

namespace matfin {

using BigInt = boost::multiprecision::cpp_int;

class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OrderEngine { StabilizerChain, Closure };

struct FiniteFieldOrder {
  BigInt order;
  OrderEngine engine = OrderEngine::StabilizerChain;
  std::vector<std::size_t> orbit_lengths;  // basic orbits along e_1, ..., e_n
  std::size_t strong_generators = 0;
};

// StabilizerChain: deterministic Schreier-Sims with base e_1, ..., e_n
// acting on column vectors. Closure: Dimino enumeration. Throws
// ResourceLimit when a basic orbit (or, for Closure, the group) exceeds
// `limit`.
FiniteFieldOrder group_order_ff(std::span<const FFMat> gens, OrderEngine engine = OrderEngine::StabilizerChain,
                                std::size_t limit = std::size_t{1} << 22);

template <class M>
struct MatrixHash {
  std::size_t operator()(const M& m) const noexcept {
    std::size_t h = m.rows() * 1000003u + m.cols();
    for (const auto& x : m.entries()) h = h * 0x9E3779B97F4A7C15ULL + std::hash<std::decay_t<decltype(x)>>{}(x);
    return h;
  }
};

// Element enumeration by Dimino's algorithm; nullopt once more than `cap`
// elements have been produced.
template <ExactField K>
std::optional<std::uint64_t> closure_order(std::span<const Mat<K>> gens, std::uint64_t cap) {
  using M = Mat<K>;
  std::vector<M> gs;
  for (const auto& g : gens)
    if (!g.is_identity() && std::find(gs.begin(), gs.end(), g) == gs.end()) gs.push_back(g);
  if (gs.empty()) return 1;
  const std::size_t n = gs.front().rows();
  std::vector<M> elems{M::identity(n, gs.front().like())};
  std::unordered_set<M, MatrixHash<M>> seen(elems.begin(), elems.end());
  auto add = [&](M x) {
    if (!seen.insert(x).second) return true;
    elems.push_back(std::move(x));
    return elems.size() <= cap;
  };

  for (M x = gs[0]; !x.is_identity(); x = x * gs[0])
    if (!add(x)) return std::nullopt;

  for (std::size_t i = 1; i < gs.size(); ++i) {
    if (seen.count(gs[i])) continue;
    const std::size_t block = elems.size();
    for (std::size_t h = 0; h < block; ++h)
      if (!add(elems[h] * gs[i])) return std::nullopt;
    for (std::size_t rep = block; rep < elems.size(); rep += block) {
      for (std::size_t s = 0; s <= i; ++s) {
        M c = elems[rep] * gs[s];
        if (seen.count(c)) continue;
        for (std::size_t h = 0; h < block; ++h)
          if (!add(elems[h] * c)) return std::nullopt;
      }
    }
  }
  return elems.size();
}

struct SizeOptions {
  std::uint64_t seed = 1;
  unsigned max_nu = 6;
  std::size_t budget = 200;  // specialization attempts
  // Compare with K = F_{q^ν} instead of F_q; valid for completely reducible groups.
  bool cr_shortcut = false;
  std::uint64_t max_field_size = std::uint64_t{1} << 20;
  TraceSink trace;
};

struct GroupOrder {
  BigInt order;
  AdmissiblePoint point;
  std::size_t attempts = 0;
  std::size_t algebra_dim = 0;
  std::string engine;
  FiniteFieldOrder ff;
};

// Order of a finite group given by generators over F_q(X). The result is
// meaningful only when the group is finite.
GroupOrder size_finite(std::span<const FuncMat> gens, const SizeOptions& options);

}  // namespace matfin
