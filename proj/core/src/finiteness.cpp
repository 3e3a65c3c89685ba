#include "matfin/finiteness.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace matfin {

namespace {

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

std::vector<unsigned> prime_divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::string point_string(const AdmissiblePoint& pt) {
  std::string s = "(";
  for (std::size_t i = 0; i < pt.alpha.size(); ++i) {
    if (i) s += ", ";
    s += pt.alpha[i].to_string();
  }
  return s + ")";
}

void emit(const TraceSink& sink, std::string step, std::vector<std::pair<std::string, TraceEvent::Value>> fields) {
  if (sink) sink(TraceEvent{std::move(step), std::move(fields)});
}

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

FuncMat scaled_sum(std::span<const FieldElement> coeffs, PreimageCache& pre, const FuncMat& like_mat) {
  FuncMat acc = FuncMat::zero(like_mat.rows(), like_mat.cols(), like_mat.like());
  const std::size_t nv = like_mat.like().nvars();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    acc += RatFunc::constant(coeffs[k], nv) * pre.get(k);
  }
  return acc;
}

}  // namespace

FieldRef base_field(std::span<const FuncMat> gens) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  FieldRef f = gens.front().like().field();
  for (const auto& g : gens)
    if (g.like().field() != f) throw std::invalid_argument("generators over different fields");
  return f;
}

std::size_t variable_count(std::span<const FuncMat> gens) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  return gens.front().like().nvars();
}

MultiPoly admissibility_polynomial(std::span<const FuncMat> gens) {
  std::vector<FuncMat> all(gens.begin(), gens.end());
  for (const auto& g : gens) all.push_back(inverse(g));
  return denominator_lcm(all);
}

bool generates_field(std::span<const FieldElement> alpha, std::uint64_t q, unsigned nu) {
  if (nu == 1) return true;
  for (unsigned l : prime_divisors(nu)) {
    const std::uint64_t sub = saturating_pow(q, nu / l, UINT64_MAX / 2);
    if (std::all_of(alpha.begin(), alpha.end(), [&](const FieldElement& a) { return in_subfield(a, sub); }))
      return false;
  }
  return true;
}

AdmissiblePoint find_admissible(std::span<const FuncMat> gens, const AdmissibleOptions& options,
                                std::span<const AdmissiblePoint> exclude, Rng& rng) {
  constexpr std::uint64_t kExhaustiveLimit = 4096;
  constexpr std::size_t kRandomTries = 512;

  FieldRef fq = base_field(gens);
  const std::size_t m = variable_count(gens);
  const std::uint64_t q = fq->size();
  const MultiPoly f = admissibility_polynomial(gens);

  for (unsigned nu = 1; nu <= options.max_nu; ++nu) {
    if (options.nu_coprime_to_p && nu % fq->characteristic() == 0) continue;
    if (saturating_pow(q, nu, options.max_field_size) > options.max_field_size) break;
    FieldRef field = nu == 1 ? fq : FieldCtx::extend(fq, nu);
    const std::uint64_t size = field->size();

    auto accept = [&](std::vector<FieldElement> alpha) -> std::optional<AdmissiblePoint> {
      if (!generates_field(alpha, q, nu)) return std::nullopt;
      AdmissiblePoint pt{std::move(alpha), nu, field};
      if (std::find(exclude.begin(), exclude.end(), pt) != exclude.end()) return std::nullopt;
      if (f.evaluate(pt.alpha).is_zero()) return std::nullopt;
      return pt;
    };

    const std::uint64_t total = saturating_pow(size, m, kExhaustiveLimit);
    if (total <= kExhaustiveLimit) {
      std::vector<std::uint64_t> order(total);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      for (std::uint64_t idx : order) {
        std::vector<FieldElement> alpha;
        for (std::size_t i = 0; i < m; ++i, idx /= size)
          alpha.push_back(field->from_code(static_cast<std::uint32_t>(idx % size)));
        if (auto pt = accept(std::move(alpha))) return *pt;
      }
    } else {
      std::uniform_int_distribution<std::uint64_t> dist(0, size - 1);
      for (std::size_t t = 0; t < kRandomTries; ++t) {
        std::vector<FieldElement> alpha;
        for (std::size_t i = 0; i < m; ++i) alpha.push_back(field->from_code(static_cast<std::uint32_t>(dist(rng))));
        if (auto pt = accept(std::move(alpha))) return *pt;
      }
    }
  }
  throw AdmissibleSearchExhausted("no admissible point found with nu <= " + std::to_string(options.max_nu));
}

FFMat specialize(const FuncMat& m, const AdmissiblePoint& point) {
  return m.map([&](const RatFunc& x) { return embed(x.evaluate(point.alpha), point.field); }, point.field->zero());
}

std::vector<FFMat> specialize(std::span<const FuncMat> gens, const AdmissiblePoint& point) {
  std::vector<FFMat> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(specialize(g, point));
  return out;
}

std::vector<FuncMat> distinct_nontrivial(std::span<const FuncMat> gens) {
  std::vector<FuncMat> out;
  for (const auto& g : gens) {
    if (g.is_identity()) continue;
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  }
  return out;
}

std::string to_string(EvidenceKind kind) {
  switch (kind) {
    case EvidenceKind::IsoBasis: return "IsoBasis";
    case EvidenceKind::DuplicateCollapse: return "DuplicateCollapse";
    case EvidenceKind::SpanDefect: return "SpanDefect";
    case EvidenceKind::ZeroInvariantModule: return "ZeroInvariantModule";
    case EvidenceKind::ConstituentChain: return "ConstituentChain";
    case EvidenceKind::Trivial: return "Trivial";
  }
  return "Unknown";
}

IsoResult is_isomorphism_env_algebras(std::span<const FuncMat> gens, const AdmissiblePoint& point, unsigned mu) {
  if (mu == 0) throw std::invalid_argument("mu must be positive");
  FieldRef fq = base_field(gens);
  const unsigned nu = point.nu;
  auto spec = specialize(gens, point);

  IsoResult result;
  result.evidence.point = point;
  for (std::size_t i = 0; i < spec.size(); ++i)
    for (std::size_t j = i + 1; j < spec.size(); ++j)
      if (spec[i] == spec[j]) {
        result.evidence.kind = EvidenceKind::DuplicateCollapse;
        result.evidence.first = i;
        result.evidence.second = j;
        return result;
      }

  FieldRef big = point.field;
  FieldRef sub = point.field;
  if (mu != nu) {
    const unsigned l = std::lcm(mu, nu);
    if (l != nu) big = FieldCtx::extend(point.field, l / nu);
    sub = mu == 1 ? fq : FieldCtx::extend(fq, mu);
    if (big != point.field)
      for (auto& s : spec) s = s.map([&](const FieldElement& x) { return embed(x, big); }, big->zero());
  }

  AlgebraBasis basis = basis_env_algebra(spec, sub);
  PreimageCache pre(basis, gens);
  std::optional<SubfieldCoordinates> over_fq;
  if (sub != fq) over_fq.emplace(fq, sub);
  const unsigned e = over_fq ? over_fq->relative_degree() : 1;
  const std::size_t d = basis.dim();

  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (basis.accepted_product(i, j)) continue;
      auto a = basis.coordinates(basis.element(i) * spec[j]);
      if (!a) throw std::logic_error("algebra basis is not closed under the generators");

      // a_k = Σ_b c_{k,b} β_b with c_{k,b} ∈ F_q; the β_b are F_q(X)-independent.
      std::vector<std::vector<FieldElement>> c(e, std::vector<FieldElement>(d, fq->zero()));
      for (std::size_t k = 0; k < d; ++k) {
        if ((*a)[k].is_zero()) continue;
        if (!over_fq) {
          c[0][k] = (*a)[k];
        } else {
          auto ck = over_fq->coordinates((*a)[k]);
          for (unsigned b = 0; b < e; ++b) c[b][k] = ck[b];
        }
      }
      const FuncMat lhs = pre.get(i) * gens[j];
      bool ok = scaled_sum(c[0], pre, lhs) == lhs;
      for (unsigned b = 1; ok && b < e; ++b) ok = scaled_sum(c[b], pre, lhs).is_zero();
      if (!ok) {
        result.evidence.kind = EvidenceKind::SpanDefect;
        result.evidence.algebra_dim = d;
        result.evidence.first = i;
        result.evidence.second = j;
        result.evidence.coefficients = std::move(*a);
        result.basis.emplace(std::move(basis));
        return result;
      }
    }
  }
  result.isomorphic = true;
  result.evidence.kind = EvidenceKind::IsoBasis;
  result.evidence.algebra_dim = d;
  result.basis.emplace(std::move(basis));
  return result;
}

std::optional<FuncMat> radical_witness(std::span<const FuncMat> gens, const IsoResult& failed) {
  const Evidence& ev = failed.evidence;
  if (ev.kind == EvidenceKind::DuplicateCollapse) {
    FuncMat e = gens[ev.first] - gens[ev.second];
    if (e.is_zero()) return std::nullopt;
    return e;
  }
  if (ev.kind != EvidenceKind::SpanDefect || !failed.basis)
    throw std::invalid_argument("radical_witness: no failed comparison to work from");

  const AlgebraBasis& basis = *failed.basis;
  FieldRef fq = base_field(gens);
  FieldRef sub = basis.subfield();
  const unsigned e = *sub->degree_over(fq);
  if (e % fq->characteristic() == 0)
    throw std::invalid_argument("radical_witness: the characteristic divides the subfield degree");
  const std::uint64_t q = fq->size();
  const std::size_t nv = variable_count(gens);
  PreimageCache pre(basis, gens);

  FuncMat w = RatFunc::constant(fq->from_int(e), nv) * (pre.get(ev.first) * gens[ev.second]);
  const Embedding& down = embedding(fq, sub);
  for (std::size_t k = 0; k < ev.coefficients.size(); ++k) {
    if (ev.coefficients[k].is_zero()) continue;
    auto tr = down.preimage(trace_to_base(ev.coefficients[k], q, e));
    if (!tr) throw std::logic_error("trace left the base field");
    if (!tr->is_zero()) w -= RatFunc::constant(*tr, nv) * pre.get(k);
  }
  if (w.is_zero()) return std::nullopt;
  return w;
}

Subspace<RatFunc> module_via_nullspace(std::span<const FuncMat> gens, const FuncMat& e, std::size_t* iterations) {
  Subspace<RatFunc> u = nullspace(e);
  std::size_t count = 0;
  bool changed = true;
  while (changed && u.dim() > 0) {
    changed = false;
    for (const auto& s : gens) {
      Subspace<RatFunc> w = intersect(u, image(s, u));
      if (w.dim() < u.dim()) {
        u = std::move(w);
        ++count;
        changed = true;
        if (u.dim() == 0) break;
      }
    }
  }
  if (iterations) *iterations = count;
  return u;
}

Verdict is_finite_cr(std::span<const FuncMat> gens, const DecisionOptions& options) {
  Verdict v;
  const std::size_t n = gens.empty() ? 0 : gens.front().rows();
  auto s = distinct_nontrivial(gens);
  if (s.empty()) {
    v.finite = true;
    v.constituents.push_back({n, 0, true, v.evidence});
    emit(options.trace, "verdict", {{"finite", std::int64_t{1}}, {"evidence", std::string("Trivial")}});
    return v;
  }
  Rng rng(options.seed);
  AdmissibleOptions aopt;
  aopt.max_nu = options.max_nu;
  AdmissiblePoint pt = find_admissible(s, aopt, {}, rng);
  ++v.stats.admissible_searches;
  emit(options.trace, "admissible_point", {{"nu", std::int64_t{pt.nu}}, {"alpha", point_string(pt)}});

  IsoResult r = is_isomorphism_env_algebras(s, pt, pt.nu);
  v.finite = r.isomorphic;
  v.evidence = r.evidence;
  v.constituents.push_back({n, 0, v.finite, v.evidence});
  emit(options.trace, "verdict",
       {{"finite", std::int64_t{v.finite}}, {"evidence", to_string(v.evidence.kind)},
        {"algebra_dim", as_int(v.evidence.algebra_dim)}});
  return v;
}

Verdict is_finite(std::span<const FuncMat> gens, const DecisionOptions& options) {
  if (gens.empty()) throw std::invalid_argument("is_finite: no generators");
  struct Item {
    std::vector<FuncMat> gens;
    std::size_t depth;
  };
  Verdict v;
  Rng rng(options.seed);
  AdmissibleOptions aopt;
  aopt.max_nu = options.max_nu;
  aopt.nu_coprime_to_p = true;

  std::optional<AdmissiblePoint> first_point;
  std::deque<Item> work;
  work.push_back({std::vector<FuncMat>(gens.begin(), gens.end()), 0});
  while (!work.empty()) {
    Item item = std::move(work.front());
    work.pop_front();
    ++v.stats.worklist_iterations;
    const std::size_t deg = item.gens.front().rows();
    auto s = distinct_nontrivial(item.gens);
    emit(options.trace, "constituent",
         {{"degree", as_int(deg)}, {"depth", as_int(item.depth)}, {"generators", as_int(s.size())}});
    if (s.empty()) {
      v.constituents.push_back({deg, item.depth, true, Evidence{}});
      continue;
    }

    AdmissiblePoint pt = find_admissible(s, aopt, {}, rng);
    ++v.stats.admissible_searches;
    if (!first_point) first_point = pt;
    emit(options.trace, "admissible_point", {{"nu", std::int64_t{pt.nu}}, {"alpha", point_string(pt)}});

    IsoResult r = is_isomorphism_env_algebras(s, pt, pt.nu);
    emit(options.trace, "env_algebra",
         {{"isomorphic", std::int64_t{r.isomorphic}}, {"evidence", to_string(r.evidence.kind)},
          {"algebra_dim", as_int(r.evidence.algebra_dim)}});
    if (r.isomorphic) {
      v.constituents.push_back({deg, item.depth, true, r.evidence});
      continue;
    }

    auto e = radical_witness(s, r);
    if (!e) {
      v.finite = false;
      v.evidence = r.evidence;
      v.constituents.push_back({deg, item.depth, false, r.evidence});
      emit(options.trace, "verdict", {{"finite", std::int64_t{0}}, {"evidence", to_string(r.evidence.kind)}});
      return v;
    }
    std::size_t iters = 0;
    Subspace<RatFunc> u = module_via_nullspace(s, *e, &iters);
    ++v.stats.module_calls;
    v.stats.max_module_iterations = std::max(v.stats.max_module_iterations, iters);
    emit(options.trace, "invariant_subspace", {{"dim", as_int(u.dim())}, {"iterations", as_int(iters)}});

    if (u.dim() == 0) {
      Evidence ev = r.evidence;
      ev.kind = EvidenceKind::ZeroInvariantModule;
      v.finite = false;
      v.evidence = ev;
      v.constituents.push_back({deg, item.depth, false, ev});
      emit(options.trace, "verdict", {{"finite", std::int64_t{0}}, {"evidence", to_string(ev.kind)}});
      return v;
    }
    if (u.dim() == deg) throw std::logic_error("invariant subspace is the whole space for a nonzero witness");

    auto parts = induced_actions<RatFunc>(s, u);
    work.push_back({std::move(parts.on_submodule), item.depth + 1});
    work.push_back({std::move(parts.on_quotient), item.depth + 1});
  }

  v.finite = true;
  if (v.constituents.size() == 1) {
    v.evidence = v.constituents.front().evidence;
  } else {
    v.evidence.kind = EvidenceKind::ConstituentChain;
    v.evidence.point = first_point;
  }
  emit(options.trace, "verdict",
       {{"finite", std::int64_t{1}}, {"evidence", to_string(v.evidence.kind)},
        {"constituents", as_int(v.constituents.size())}});
  return v;
}

}  // namespace matfin
