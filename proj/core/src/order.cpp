#include "matfin/order.hpp"

#include <algorithm>
#include <unordered_map>

namespace matfin {

namespace {

using Key = std::vector<std::uint32_t>;

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : k) h = (h ^ x) * 0x100000001b3ULL;
    return h;
  }
};

Key key_of(const Vec<FieldElement>& v) {
  Key k(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) k[i] = v[i].code();
  return k;
}

class StabilizerChain {
 public:
  StabilizerChain(std::vector<FFMat> gens, std::size_t max_orbit)
      : n_(gens.front().rows()), like_(gens.front().like()), max_orbit_(max_orbit), levels_(n_) {
    for (std::size_t l = 0; l < n_; ++l) {
      levels_[l].point = Vec<FieldElement>(n_, like_.zero());
      levels_[l].point[l] = like_.one();
    }
    for (auto& g : gens) add_generator(0, std::move(g));
    for (std::size_t l = 0; l < n_; ++l) build_orbit(l);
  }

  void run() {
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(n_) - 1;
    while (i >= 0) {
      auto jump = check_level(static_cast<std::size_t>(i));
      if (jump) {
        i = static_cast<std::ptrdiff_t>(*jump);
      } else {
        --i;
      }
    }
  }

  FiniteFieldOrder result() const {
    FiniteFieldOrder out;
    out.order = 1;
    for (const auto& lv : levels_) {
      out.orbit_lengths.push_back(lv.orbit.size());
      out.order *= lv.orbit.size();
    }
    std::vector<const FFMat*> all;
    for (const auto& lv : levels_)
      for (const auto& g : lv.gens)
        if (std::find_if(all.begin(), all.end(), [&](const FFMat* p) { return *p == g; }) == all.end()) all.push_back(&g);
    out.strong_generators = all.size();
    return out;
  }

 private:
  struct Level {
    Vec<FieldElement> point;
    std::vector<FFMat> gens, gens_inv;
    std::unordered_map<Key, std::size_t, KeyHash> index;
    std::vector<Vec<FieldElement>> orbit;
    std::vector<FFMat> trans, trans_inv;  // trans[k] * point == orbit[k]
  };

  void add_generator(std::size_t l, FFMat g) {
    levels_[l].gens_inv.push_back(inverse(g));
    levels_[l].gens.push_back(std::move(g));
  }

  void build_orbit(std::size_t l) {
    Level& lv = levels_[l];
    lv.index.clear();
    lv.orbit.assign(1, lv.point);
    lv.trans.assign(1, FFMat::identity(n_, like_));
    lv.trans_inv = lv.trans;
    lv.index.emplace(key_of(lv.point), 0);
    for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
      for (std::size_t s = 0; s < lv.gens.size(); ++s) {
        Vec<FieldElement> y = lv.gens[s] * lv.orbit[k];
        auto [it, fresh] = lv.index.emplace(key_of(y), lv.orbit.size());
        if (!fresh) continue;
        if (lv.orbit.size() >= max_orbit_) throw ResourceLimit("basic orbit exceeds the configured limit");
        lv.orbit.push_back(std::move(y));
        lv.trans.push_back(lv.gens[s] * lv.trans[k]);
        lv.trans_inv.push_back(lv.trans_inv[k] * lv.gens_inv[s]);
      }
    }
  }

  // Strips h through levels start..n-1; returns the residue and the level
  // where stripping stopped (n when it went all the way through).
  std::pair<FFMat, std::size_t> sift(FFMat h, std::size_t start) const {
    for (std::size_t l = start; l < n_; ++l) {
      const Level& lv = levels_[l];
      auto it = lv.index.find(key_of(h * lv.point));
      if (it == lv.index.end()) return {std::move(h), l};
      h = lv.trans_inv[it->second] * h;
    }
    return {std::move(h), n_};
  }

  // Verifies the Schreier generators of level i; on failure extends the
  // chain and returns the level to resume from.
  std::optional<std::size_t> check_level(std::size_t i) {
    const Level& lv = levels_[i];
    for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
      for (std::size_t s = 0; s < lv.gens.size(); ++s) {
        const FFMat sx = lv.gens[s] * lv.trans[k];
        const std::size_t target = lv.index.at(key_of(sx * lv.point));
        FFMat h = lv.trans_inv[target] * sx;
        if (h.is_identity()) continue;
        auto [r, j] = sift(std::move(h), i + 1);
        if (r.is_identity()) continue;
        if (j >= n_) throw std::logic_error("nontrivial matrix fixes every basis vector");
        for (std::size_t l = i + 1; l <= j; ++l) {
          add_generator(l, r);
          build_orbit(l);
        }
        return j;
      }
    }
    return std::nullopt;
  }

  std::size_t n_;
  FieldElement like_;
  std::size_t max_orbit_;
  std::vector<Level> levels_;
};

}  // namespace

FiniteFieldOrder group_order_ff(std::span<const FFMat> gens, OrderEngine engine, std::size_t limit) {
  if (engine == OrderEngine::Closure) {
    auto n = closure_order<FieldElement>(gens, limit);
    if (!n) throw ResourceLimit("group exceeds the closure limit");
    FiniteFieldOrder out;
    out.order = *n;
    out.engine = OrderEngine::Closure;
    return out;
  }
  std::vector<FFMat> gs;
  for (const auto& g : gens) {
    if (!g.is_square()) throw std::invalid_argument("group_order_ff: non-square generator");
    if (!g.is_identity() && std::find(gs.begin(), gs.end(), g) == gs.end()) gs.push_back(g);
  }
  if (gs.empty()) {
    FiniteFieldOrder out;
    out.order = 1;
    out.orbit_lengths.assign(gens.empty() ? 0 : gens.front().rows(), 1);
    return out;
  }
  StabilizerChain chain(std::move(gs), limit);
  chain.run();
  return chain.result();
}

GroupOrder size_finite(std::span<const FuncMat> gens, const SizeOptions& options) {
  FieldRef fq = base_field(gens);
  const std::size_t m = variable_count(gens);
  const std::uint64_t q = fq->size();
  auto s = distinct_nontrivial(gens);

  GroupOrder out;
  out.engine = "schreier-sims";
  if (s.empty()) {
    out.order = 1;
    out.point = AdmissiblePoint{std::vector<FieldElement>(m, fq->zero()), 1, fq};
    out.ff.order = 1;
    return out;
  }

  std::vector<unsigned> nus{1};
  if (m > 0) {
    std::uint64_t size = q;
    for (unsigned nu = 2; nu <= options.max_nu; ++nu) {
      if (size > options.max_field_size / q) break;
      size *= q;
      nus.push_back(nu);
    }
  }

  const MultiPoly f = admissibility_polynomial(s);
  Rng rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick_nu(0, nus.size() - 1);
  std::vector<AdmissiblePoint> tried;

  for (std::size_t attempt = 1; attempt <= options.budget; ++attempt) {
    const unsigned nu = nus[pick_nu(rng)];
    FieldRef field = nu == 1 ? fq : FieldCtx::extend(fq, nu);
    std::uniform_int_distribution<std::uint64_t> pick(0, field->size() - 1);
    AdmissiblePoint pt{{}, nu, field};
    for (std::size_t i = 0; i < m; ++i) pt.alpha.push_back(field->from_code(static_cast<std::uint32_t>(pick(rng))));

    if (!generates_field(pt.alpha, q, nu)) continue;
    if (std::find(tried.begin(), tried.end(), pt) != tried.end()) continue;
    tried.push_back(pt);
    if (f.evaluate(pt.alpha).is_zero()) continue;

    IsoResult r = is_isomorphism_env_algebras(s, pt, options.cr_shortcut ? nu : 1);
    if (options.trace) {
      std::string a;
      for (const auto& x : pt.alpha) a += (a.empty() ? "" : ", ") + x.to_string();
      options.trace(TraceEvent{"order_attempt",
                               {{"attempt", static_cast<std::int64_t>(attempt)},
                                {"nu", static_cast<std::int64_t>(nu)},
                                {"alpha", "(" + a + ")"},
                                {"isomorphic", static_cast<std::int64_t>(r.isomorphic)},
                                {"evidence", to_string(r.evidence.kind)}}});
    }
    if (!r.isomorphic) continue;

    out.ff = group_order_ff(specialize(s, pt));
    out.order = out.ff.order;
    out.point = pt;
    out.attempts = attempt;
    out.algebra_dim = r.evidence.algebra_dim;
    return out;
  }
  throw ResourceLimit("no faithful specialization found within " + std::to_string(options.budget) + " attempts");
}

}  // namespace matfin
