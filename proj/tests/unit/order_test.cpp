#include <gtest/gtest.h>

#include "matfin/order.hpp"
#include "testkit.hpp"

using namespace matfin;
using testkit::Builder;

namespace {

FFMat ff(FieldRef f, const std::vector<std::vector<std::int64_t>>& rows) {
  std::vector<std::vector<FieldElement>> e;
  for (const auto& r : rows) {
    e.emplace_back();
    for (auto x : r) e.back().push_back(f->from_int(x));
  }
  return FFMat::from_rows(e, f->zero());
}

std::vector<FuncMat> battery_group(const std::string& name) {
  for (auto& g : testkit::decision_battery())
    if (g.name == name) return g.group.generators;
  throw std::out_of_range(name);
}

std::vector<FFMat> monomial_gl35() {
  FieldRef f5 = FieldCtx::prime(5);
  return {ff(f5, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}), ff(f5, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}),
          ff(f5, {{2, 0, 0}, {0, 1, 0}, {0, 0, 1}})};
}

}  // namespace

TEST(GroupOrderFF, Identity) {
  FieldRef f3 = FieldCtx::prime(3);
  std::vector<FFMat> gens{FFMat::identity(3, f3->zero())};
  EXPECT_EQ(group_order_ff(gens).order, 1);
  EXPECT_EQ(group_order_ff(gens, OrderEngine::Closure).order, 1);
}

TEST(GroupOrderFF, GL23) {
  FieldRef f3 = FieldCtx::prime(3);
  std::vector<FFMat> gens{ff(f3, {{2, 0}, {0, 1}}), ff(f3, {{-1, 1}, {-1, 0}})};
  const BigInt expected = (9 - 1) * (9 - 3);
  auto chain = group_order_ff(gens);
  EXPECT_EQ(chain.order, expected);
  EXPECT_EQ(chain.orbit_lengths, (std::vector<std::size_t>{8, 6}));
  EXPECT_EQ(group_order_ff(gens, OrderEngine::Closure).order, expected);
}

TEST(GroupOrderFF, MonomialGL35) {
  const auto gens = monomial_gl35();
  EXPECT_EQ(group_order_ff(gens).order, 4 * 4 * 4 * 6);
  EXPECT_EQ(group_order_ff(gens, OrderEngine::Closure).order, 384);
}

TEST(GroupOrderFF, LargerGroupsMatchFormulas) {
  FieldRef f2 = FieldCtx::prime(2);
  // GL(4,2) from a transvection and a 4-cycle.
  std::vector<FFMat> gl42{ff(f2, {{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}),
                          ff(f2, {{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}})};
  EXPECT_EQ(group_order_ff(gl42).order, 15 * 14 * 12 * 8);
  EXPECT_EQ(group_order_ff(gl42, OrderEngine::Closure).order, 20160);

  FieldRef f4 = FieldCtx::make(2, {1, 1, 1});
  FieldRef f16 = FieldCtx::extend(f4, 2);
  std::vector<FFMat> cyc{FFMat::from_rows({{f16->generator()}}, f16->zero())};
  EXPECT_EQ(group_order_ff(cyc).order, 15);
}

TEST(GroupOrderFF, EnginesAgreeRandomized) {
  std::mt19937_64 rng(4);
  FieldRef fields[] = {FieldCtx::prime(2), FieldCtx::prime(3), FieldCtx::make(2, {1, 1, 1}), FieldCtx::prime(5)};
  int checked = 0;
  for (FieldRef f : fields) {
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(f->size() - 1));
    for (std::size_t n = 1; n <= 3; ++n) {
      for (int rep = 0; rep < 4; ++rep) {
        std::vector<FFMat> gens;
        while (gens.size() < 2) {
          FFMat m(n, n, f->zero());
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = f->from_code(pick(rng));
          if (is_invertible(m)) gens.push_back(std::move(m));
        }
        try {
          auto closure = group_order_ff(gens, OrderEngine::Closure, 60000);
          EXPECT_EQ(group_order_ff(gens).order, closure.order);
          ++checked;
        } catch (const ResourceLimit&) {
        }
      }
    }
  }
  EXPECT_GE(checked, 36);
}

TEST(GroupOrderFF, LimitRaises) {
  const auto gens = monomial_gl35();
  EXPECT_THROW(group_order_ff(gens, OrderEngine::Closure, 100), ResourceLimit);
  EXPECT_THROW(group_order_ff(gens, OrderEngine::StabilizerChain, 2), ResourceLimit);
}

TEST(SizeFinite, Examples) {
  EXPECT_EQ(size_finite(battery_group("unipotent_pair"), {}).order, 4);
  EXPECT_EQ(size_finite(battery_group("gl23_conj"), {}).order, 48);
  EXPECT_EQ(size_finite(battery_group("monomial_gl35_conj"), {}).order, 384);
  EXPECT_EQ(size_finite(battery_group("diag_t_conj"), {}).order, 3);
  EXPECT_EQ(size_finite(battery_group("trivial"), {}).order, 1);
}

TEST(SizeFinite, CertificateIsFaithful) {
  for (const auto& name : {"gl23_conj", "sl24_conj", "kron_u_d_f9_conj", "block_gl23"}) {
    auto gens = battery_group(name);
    auto r = size_finite(gens, {});
    EXPECT_GE(r.attempts, 1u);
    auto spec = specialize(distinct_nontrivial(gens), r.point);
    for (std::size_t i = 0; i < spec.size(); ++i)
      for (std::size_t j = i + 1; j < spec.size(); ++j) EXPECT_NE(spec[i], spec[j]) << name;
    EXPECT_EQ(group_order_ff(spec, OrderEngine::Closure, 100000).order, r.order) << name;
  }
}

TEST(SizeFinite, MatchesClosureOracleOnBattery) {
  for (const auto& g : testkit::decision_battery()) {
    if (g.family == "infinite") continue;
    auto elems = testkit::closure_elements(g.group.generators, 100000);
    ASSERT_TRUE(elems.has_value()) << g.name;
    for (std::uint64_t seed : {1, 2}) {
      SizeOptions opt;
      opt.seed = seed;
      EXPECT_EQ(size_finite(g.group.generators, opt).order, elems->size()) << g.name;
    }
  }
}

TEST(SizeFinite, SpecializationConsistency) {
  // |G(α)| = |G| for all but finitely many α; sample 20 points of
  // increasing ν and expect at least 15 successes.
  auto gens = battery_group("gl23_conj");
  auto s = distinct_nontrivial(gens);
  const MultiPoly f = admissibility_polynomial(s);
  FieldRef f3 = base_field(s);
  std::vector<AdmissiblePoint> seen;
  int successes = 0;
  Rng rng(9);
  for (unsigned nu = 1; seen.size() < 20; ++nu) {
    FieldRef field = nu == 1 ? f3 : FieldCtx::extend(f3, nu);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(field->size() - 1));
    for (int k = 0; k < 4 && seen.size() < 20; ++k) {
      AdmissiblePoint pt{{field->from_code(pick(rng))}, nu, field};
      if (!generates_field(pt.alpha, 3, nu) || f.evaluate(pt.alpha).is_zero()) continue;
      if (std::find(seen.begin(), seen.end(), pt) != seen.end()) continue;
      seen.push_back(pt);
      if (group_order_ff(specialize(s, pt)).order == 48) ++successes;
    }
  }
  EXPECT_GE(successes, 15);
}

TEST(SizeFinite, ShortcutAndSeedsAgreeOnCompletelyReducible) {
  // SL(2,5) acts irreducibly, so the shortcut is allowed.
  auto gens = battery_group("sl25_conj");
  SizeOptions plain;
  SizeOptions shortcut;
  shortcut.cr_shortcut = true;
  EXPECT_EQ(size_finite(gens, plain).order, 120);
  EXPECT_EQ(size_finite(gens, shortcut).order, 120);
  auto d = battery_group("diag_t_conj");
  EXPECT_EQ(size_finite(d, shortcut).order, 3);
}

TEST(SizeFinite, BudgetExhaustedForInfiniteGroup) {
  SizeOptions opt;
  opt.budget = 30;
  EXPECT_THROW(size_finite(battery_group("diagX_f3"), opt), ResourceLimit);
}

TEST(SizeFinite, TraceReportsAttempts) {
  SizeOptions opt;
  std::vector<std::string> steps;
  opt.trace = [&](const TraceEvent& e) { steps.push_back(e.step); };
  auto r = size_finite(battery_group("unipotent_pair"), opt);
  EXPECT_LE(steps.size(), r.attempts);
  ASSERT_FALSE(steps.empty());
  EXPECT_EQ(steps.front(), "order_attempt");
}
