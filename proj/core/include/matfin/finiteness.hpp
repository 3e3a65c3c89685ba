#pragma once

// Finiteness of finitely generated subgroups of GL(n, F_q(X_1..X_m)).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "matfin/envalg.hpp"
#include "matfin/funcfield.hpp"
#include "matfin/gf.hpp"
#include "matfin/matrix.hpp"

namespace matfin {

using Rng = std::mt19937_64;

// α ∈ F_{q^ν}^m with F_q(α) = F_{q^ν} and every relevant denominator
// nonzero at α.
struct AdmissiblePoint {
  std::vector<FieldElement> alpha;
  unsigned nu = 1;
  FieldRef field = nullptr;  // F_{q^ν}

  friend bool operator==(const AdmissiblePoint&, const AdmissiblePoint&) = default;
};

class AdmissibleSearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AdmissibleOptions {
  unsigned max_nu = 12;
  bool nu_coprime_to_p = false;
  // Fields above this size are never searched.
  std::uint64_t max_field_size = std::uint64_t{1} << 20;
};

// The base field F_q and number of variables shared by all entries.
FieldRef base_field(std::span<const FuncMat> gens);
std::size_t variable_count(std::span<const FuncMat> gens);

// Searches ν = 1, 2, ... (skipping multiples of p when asked); within one
// ν, candidates are enumerated in a seeded random order (exhaustively when
// F_{q^ν}^m is small). Denominators of both S_i and S_i^{-1} are checked.
AdmissiblePoint find_admissible(std::span<const FuncMat> gens, const AdmissibleOptions& options,
                                std::span<const AdmissiblePoint> exclude, Rng& rng);

// Product of the denominators that must not vanish at an admissible point.
MultiPoly admissibility_polynomial(std::span<const FuncMat> gens);

// Whether F_q(α) = F_{q^ν}, with F_q of size q.
bool generates_field(std::span<const FieldElement> alpha, std::uint64_t q, unsigned nu);

// φ_α applied entrywise, landing in point.field.
FFMat specialize(const FuncMat& m, const AdmissiblePoint& point);
std::vector<FFMat> specialize(std::span<const FuncMat> gens, const AdmissiblePoint& point);

// Generators with duplicates (over F) and identities removed, in first
// occurrence order.
std::vector<FuncMat> distinct_nontrivial(std::span<const FuncMat> gens);

enum class EvidenceKind { IsoBasis, DuplicateCollapse, SpanDefect, ZeroInvariantModule, ConstituentChain, Trivial };
std::string to_string(EvidenceKind kind);

struct Evidence {
  EvidenceKind kind = EvidenceKind::Trivial;
  std::optional<AdmissiblePoint> point;
  std::size_t algebra_dim = 0;               // IsoBasis, SpanDefect
  std::size_t first = 0, second = 0;         // duplicate pair, or defect (basis index, generator)
  std::vector<FieldElement> coefficients;    // SpanDefect: coordinates over K
};

// Outcome of comparing <S>_F with the specialized algebra <S(α)>_K.
struct IsoResult {
  bool isomorphic = false;
  Evidence evidence;
  std::optional<AlgebraBasis> basis;
};

// Specialization at `point` with coefficients restricted to K = F_{q^μ};
// μ must be 1 or ν for the result to decide finiteness, but any μ ≥ 1 is
// accepted (the computation then runs in F_{q^lcm(ν,μ)}).
IsoResult is_isomorphism_env_algebras(std::span<const FuncMat> gens, const AdmissiblePoint& point, unsigned mu);

struct TraceEvent {
  using Value = std::variant<std::int64_t, std::string>;
  std::string step;
  std::vector<std::pair<std::string, Value>> fields;
};
using TraceSink = std::function<void(const TraceEvent&)>;

struct DecisionOptions {
  std::uint64_t seed = 1;
  unsigned max_nu = 12;
  TraceSink trace;
};

struct DecisionStats {
  std::size_t worklist_iterations = 0;
  std::size_t module_calls = 0;
  std::size_t max_module_iterations = 0;  // largest loop count of one nullspace refinement
  std::size_t admissible_searches = 0;
};

struct ConstituentRecord {
  std::size_t degree = 0;
  std::size_t depth = 0;
  bool finite = false;
  Evidence evidence;
};

struct Verdict {
  bool finite = false;
  Evidence evidence;
  std::vector<ConstituentRecord> constituents;
  DecisionStats stats;
};

// Finiteness test for groups already known to be completely reducible.
Verdict is_finite_cr(std::span<const FuncMat> gens, const DecisionOptions& options);

// Largest S-invariant subspace of ker E, refined while some U ∩ S_i U ≠ U.
// `iterations` receives the number of strict refinements.
Subspace<RatFunc> module_via_nullspace(std::span<const FuncMat> gens, const FuncMat& e,
                                       std::size_t* iterations = nullptr);

// Radical witness for a completely reducible test that failed: S_i - S_j for
// duplicates, else ν·A_iS_j - Σ tr(a_k) A_k from the first span defect.
// Returns nullopt when the witness vanishes (no submodule can be produced).
// Throws std::invalid_argument when p divides [K : F_q].
std::optional<FuncMat> radical_witness(std::span<const FuncMat> gens, const IsoResult& failed);

// General finiteness test.
Verdict is_finite(std::span<const FuncMat> gens, const DecisionOptions& options);

}  // namespace matfin
