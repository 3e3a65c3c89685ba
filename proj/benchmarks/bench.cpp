#include <benchmark/benchmark.h>

#include <random>

#include "matfin/envalg.hpp"
#include "matfin/finiteness.hpp"
#include "matfin/io.hpp"
#include "matfin/order.hpp"

using namespace matfin;

namespace {

GroupInput load(const char* name) { return load_group_file(std::string(MATFIN_DATA_DIR) + "/" + name); }

const char* const kGroups[] = {"unipotent_pair.json", "gl23_conj.json", "monomial_gl35.json", "diag_t_conj.json",
                               "diagX.json"};

FFMat random_matrix(FieldRef f, std::size_t n, std::mt19937_64& rng) {
  std::vector<std::vector<FieldElement>> rows(n);
  for (auto& row : rows)
    for (std::size_t j = 0; j < n; ++j) row.push_back(f->from_code(static_cast<std::uint32_t>(rng() % f->size())));
  return FFMat::from_rows(rows, f->zero());
}

void BM_FieldMultiply(benchmark::State& state) {
  FieldRef f = FieldCtx::extend(FieldCtx::prime(2), static_cast<unsigned>(state.range(0)));
  FieldElement x = f->generator(), acc = f->one();
  for (auto _ : state) {
    acc = acc * x + x;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_FieldMultiply)->Arg(4)->Arg(8)->Arg(16);

void BM_FieldInverse(benchmark::State& state) {
  FieldRef f = FieldCtx::extend(FieldCtx::prime(3), static_cast<unsigned>(state.range(0)));
  FieldElement x = f->generator() + f->one();
  for (auto _ : state) {
    x = x.inverse() + f->one();
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_FieldInverse)->Arg(2)->Arg(6);

void BM_Rref(benchmark::State& state) {
  std::mt19937_64 rng(1);
  FieldRef f = FieldCtx::extend(FieldCtx::prime(2), 4);
  const FFMat m = random_matrix(f, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_Rref)->Arg(8)->Arg(16)->Arg(36);

void BM_BasisEnvAlgebra(benchmark::State& state) {
  const GroupInput g = load(kGroups[state.range(0)]);
  const auto s = distinct_nontrivial(g.generators);
  std::mt19937_64 rng(3);
  const AdmissiblePoint pt = find_admissible(s, {}, {}, rng);
  const auto spec = specialize(s, pt);
  for (auto _ : state) benchmark::DoNotOptimize(basis_env_algebra(spec, g.field).dim());
  state.SetLabel(kGroups[state.range(0)]);
}
BENCHMARK(BM_BasisEnvAlgebra)->DenseRange(0, 4);

void BM_IsFinite(benchmark::State& state) {
  const GroupInput g = load(kGroups[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(is_finite(g.generators, {}).finite);
  state.SetLabel(kGroups[state.range(0)]);
}
BENCHMARK(BM_IsFinite)->DenseRange(0, 4);

void BM_GroupOrder(benchmark::State& state) {
  const GroupInput g = load("monomial_gl35.json");
  const auto s = distinct_nontrivial(g.generators);
  std::mt19937_64 rng(5);
  const auto spec = specialize(s, find_admissible(s, {}, {}, rng));
  const auto engine = state.range(0) == 0 ? OrderEngine::StabilizerChain : OrderEngine::Closure;
  for (auto _ : state) benchmark::DoNotOptimize(group_order_ff(spec, engine).order);
  state.SetLabel(state.range(0) == 0 ? "schreier-sims" : "closure");
}
BENCHMARK(BM_GroupOrder)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
