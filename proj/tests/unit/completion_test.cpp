#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "latcomp/completion.hpp"
#include "latcomp/errors.hpp"
#include "latcomp/generators.hpp"
#include "support/figures.hpp"

namespace latcomp {
namespace {

std::vector<double> low_rank(int m, int n, int r, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> u(static_cast<std::size_t>(m * r)), v(static_cast<std::size_t>(n * r));
  for (auto& x : u) x = g(rng);
  for (auto& x : v) x = g(rng);
  std::vector<double> a(static_cast<std::size_t>(m * n), 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < r; ++k) a[static_cast<std::size_t>(i * n + j)] += u[static_cast<std::size_t>(i * r + k)] * v[static_cast<std::size_t>(j * r + k)];
  return a;
}

double rel_error(const Completion& c, const std::vector<double>& truth) {
  double num = 0, den = 0;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    num += (c.matrix[k] - truth[k]) * (c.matrix[k] - truth[k]);
    den += truth[k] * truth[k];
  }
  return std::sqrt(num / den);
}

Mask all_but(int m, int n, std::vector<LatticePoint> missing) {
  Mask mask(m, n);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j) mask.insert({i, j});
  for (auto p : missing) mask.erase(p);
  return mask;
}

TEST(SolveMinor, RankOneCrossRatio) {
  const PartialMatrix pm(all_but(2, 2, {{2, 2}}), 1, {1, 2, 3, 0});
  const auto sol = solve_minor_one_unknown(pm, {{1, 2}, {1, 2}, {2, 2}});
  EXPECT_DOUBLE_EQ(sol.value, 6.0);
  EXPECT_EQ(sol.step.kind, StepKind::one_unknown);
  EXPECT_EQ(sol.step.target, (LatticePoint{2, 2}));
}

TEST(SolveMinor, RankTwo) {
  const PartialMatrix pm(all_but(3, 3, {{3, 3}}), 2, {1, 1, 1, 1, 2, 3, 1, 3, 0});
  const auto sol = solve_minor_one_unknown(pm, {{1, 2, 3}, {1, 2, 3}, {3, 3}});
  EXPECT_NEAR(sol.value, 5.0, 1e-12);
  EXPECT_EQ(sol.step.degree, 3);
}

TEST(SolveMinor, SingularComplement) {
  const PartialMatrix pm(all_but(3, 3, {{3, 3}}), 2, {1, 2, 3, 1, 2, 3, 4, 5, 0});
  try {
    (void)solve_minor_one_unknown(pm, {{1, 2, 3}, {1, 2, 3}, {3, 3}});
    FAIL() << "expected GenericityViolation";
  } catch (const GenericityViolation& e) {
    EXPECT_EQ(e.entry(), (LatticePoint{3, 3}));
  }
}

TEST(SolveMinor, RejectsSecondUnknown) {
  const PartialMatrix pm(all_but(3, 3, {{3, 3}, {3, 2}}), 2, std::vector<double>(9, 1.0));
  EXPECT_THROW((void)solve_minor_one_unknown(pm, {{1, 2, 3}, {1, 2, 3}, {3, 3}}), PreconditionViolation);
}

TEST(Eliminate, MatchesSubstitution) {
  std::mt19937_64 rng(3);
  const auto truth = low_rank(3, 4, 2, rng);
  const Mask mask = all_but(3, 4, {{3, 2}, {3, 3}});
  const PartialMatrix pm(mask, 2, truth);
  const auto first = solve_minor_one_unknown(pm, {{1, 2, 3}, {1, 2, 4}, {3, 2}});
  EXPECT_NEAR(first.value, truth[9], 1e-9);

  const auto elim = eliminate_second_unknown(pm, {{1, 2, 3}, {1, 2, 3}, {3, 3}}, first.step);
  EXPECT_EQ(elim.step.kind, StepKind::elimination);
  EXPECT_NEAR(elim.value, truth[10], 1e-9);

  Mask filled = mask;
  filled.insert({3, 2});
  auto dense = truth;
  dense[9] = first.value;
  const auto direct = solve_minor_one_unknown(PartialMatrix(filled, 2, dense), {{1, 2, 3}, {1, 2, 3}, {3, 3}});
  EXPECT_NEAR(elim.value, direct.value, 1e-12);
  EXPECT_NEAR(-elim.beta / elim.alpha, elim.value, 1e-12);
}

TEST(Eliminate, NoFirstUnknownTerms) {
  // columns 1 and 3 of rows 1, 2 are proportional, so the minor ignores x1
  const Mask mask = all_but(3, 4, {{3, 2}, {3, 3}});
  const PartialMatrix pm(mask, 2, {1, 5, 2, 7, 2, 3, 4, 1, 3, 0, 0, 9});
  const auto first = solve_minor_one_unknown(pm, {{1, 2, 3}, {1, 2, 4}, {3, 2}});
  const auto elim = eliminate_second_unknown(pm, {{1, 2, 3}, {1, 2, 3}, {3, 3}}, first.step);
  EXPECT_EQ(elim.step.C1(), 0);
  EXPECT_EQ(elim.step.C2(), 0);
  Mask filled = mask;
  filled.insert({3, 2});
  const auto direct = solve_minor_one_unknown(PartialMatrix(filled, 2, {1, 5, 2, 7, 2, 3, 4, 1, 3, 123.0, 0, 9}),
                                              {{1, 2, 3}, {1, 2, 3}, {3, 3}});
  EXPECT_NEAR(elim.value, direct.value, 1e-12);
}

TEST(Eliminate, DegenerateComplementInOneColumn) {
  const Mask mask = all_but(4, 3, {{2, 3}, {3, 3}});
  const PartialMatrix pm(mask, 2, {1, 2, 3, 2, 4, 0, 5, 1, 0, 1, 1, 1});
  const auto first = solve_minor_one_unknown(pm, {{1, 2, 4}, {1, 2, 3}, {2, 3}});
  EXPECT_THROW((void)eliminate_second_unknown(pm, {{1, 2, 3}, {1, 2, 3}, {3, 3}}, first.step), GenericityViolation);
}

TEST(Rank2Engine, BoundaryRing) {
  std::mt19937_64 rng(5);
  const auto inst = gen_boundary_cycle(6, 6);
  const auto rep = removability_analysis(inst.circuit, inst.mask);
  for (int t = 0; t < 10; ++t) {
    const auto truth = low_rank(6, 6, 2, rng);
    const auto c = complete_rank2(PartialMatrix(inst.mask, 2, truth), rep, inst.circuit);
    ASSERT_EQ(c.status, CompletionStatus::complete);
    for (std::size_t k = 0; k < truth.size(); ++k) EXPECT_NEAR(c.matrix[k], truth[k], 1e-9);
  }
}

TEST(Rank2Engine, Staircase) {
  std::mt19937_64 rng(6);
  const auto inst = gen_staircase_cycle(10, 10, {{4, 4}, {4, 4}, {4, 4}});
  const auto rep = removability_analysis(inst.circuit, inst.mask);
  for (int t = 0; t < 10; ++t) {
    const auto truth = low_rank(10, 10, 2, rng);
    const auto c = complete_rank2(PartialMatrix(inst.mask, 2, truth), rep, inst.circuit);
    ASSERT_EQ(c.status, CompletionStatus::complete);
    EXPECT_LT(rel_error(c, truth), 1e-8);
  }
}

TEST(Rank2Engine, RefusesNonRemovableCircuit) {
  const auto f = testing::right_panel();
  std::mt19937_64 rng(8);
  const PartialMatrix pm(f.mask, 2, low_rank(7, 7, 2, rng));
  const auto rep = removability_analysis(f.circuit, f.mask);
  try {
    (void)complete_rank2(pm, rep, f.circuit);
    FAIL() << "expected ScheduleGap";
  } catch (const ScheduleGap& e) {
    EXPECT_EQ(e.entries(), rep.not_removable());
  }
}

TEST(Rank2Engine, NonGenericInstance) {
  const auto inst = gen_boundary_cycle(6, 6);
  const auto rep = removability_analysis(inst.circuit, inst.mask);
  // rank one data seen as rank two: every 2x2 cofactor vanishes
  EXPECT_THROW((void)complete_rank2(PartialMatrix(inst.mask, 2, std::vector<double>(36, 1.0)), rep, inst.circuit),
               GenericityViolation);
}

TEST(RankREngine, NestedFamily) {
  std::mt19937_64 rng(9);
  const auto fam = gen_nested_staircase_family(20, 20, 3, 4);
  const auto rep = verify_c_graph(fam.mask, 3, fam.walks, fam.auxiliary);
  ASSERT_TRUE(rep.is_c_graph);
  for (int t = 0; t < 5; ++t) {
    const auto truth = low_rank(20, 20, 3, rng);
    const auto c = complete_rank_r(PartialMatrix(fam.mask, 3, truth), rep);
    ASSERT_EQ(c.status, CompletionStatus::complete);
    EXPECT_LT(rel_error(c, truth), 1e-6);
  }
}

TEST(RankREngine, RankTwoFamilyAgreesWithGreedy) {
  std::mt19937_64 rng(10);
  const auto fam = gen_nested_staircase_family(10, 10, 2, 3);
  const auto rep = verify_c_graph(fam.mask, 2, fam.walks, fam.auxiliary);
  ASSERT_TRUE(rep.is_c_graph);
  const auto truth = low_rank(10, 10, 2, rng);
  const PartialMatrix pm(fam.mask, 2, truth);
  const auto a = complete_rank_r(pm, rep);
  const auto b = propagate_greedy(pm, 2);
  ASSERT_EQ(a.status, CompletionStatus::complete);
  ASSERT_EQ(b.status, CompletionStatus::complete);
  for (std::size_t k = 0; k < truth.size(); ++k) EXPECT_NEAR(a.matrix[k], b.matrix[k], 1e-10 * (1 + std::abs(truth[k])));
}

TEST(RankREngine, RefusesNonCGraph) {
  const auto inst = gen_boundary_cycle(8, 8);
  const Walk open = walk_from_corners({{1, 1}, {8, 1}, {8, 8}, {1, 8}, {1, 2}}, false);
  const auto rep = verify_c_graph(inst.mask, 3, {open}, {});
  ASSERT_FALSE(rep.is_c_graph);
  EXPECT_THROW((void)complete_rank_r(PartialMatrix(inst.mask, 3), rep), PreconditionViolation);
}

TEST(Greedy, AgreesWithRank2Engine) {
  std::mt19937_64 rng(12);
  for (const auto& inst : {gen_boundary_cycle(6, 6), gen_staircase_cycle(10, 10, {{4, 4}, {4, 4}, {4, 4}})}) {
    const auto rep = removability_analysis(inst.circuit, inst.mask);
    const int m = inst.mask.rows(), n = inst.mask.cols();
    const auto truth = low_rank(m, n, 2, rng);
    const PartialMatrix pm(inst.mask, 2, truth);
    const auto a = complete_rank2(pm, rep, inst.circuit);
    const auto b = propagate_greedy(pm, 2);
    ASSERT_EQ(b.status, CompletionStatus::complete);
    for (std::size_t k = 0; k < truth.size(); ++k)
      EXPECT_LE(std::abs(a.matrix[k] - b.matrix[k]), 1e-8 * std::max(1.0, std::abs(a.matrix[k])));
  }
}

TEST(Greedy, IsolatedRowStaysUnknown) {
  Mask mask = all_but(4, 4, {});
  for (int j = 1; j <= 4; ++j) mask.erase({4, j});
  mask.insert({4, 1});
  std::mt19937_64 rng(13);
  const auto c = propagate_greedy(PartialMatrix(mask, 2, low_rank(4, 4, 2, rng)), 2);
  EXPECT_EQ(c.status, CompletionStatus::partial);
  EXPECT_EQ(c.unfilled, (std::vector<LatticePoint>{{4, 2}, {4, 3}, {4, 4}}));
  EXPECT_TRUE(std::isnan(c.at({4, 2})));
}

TEST(Greedy, FullyObserved) {
  std::mt19937_64 rng(14);
  const auto truth = low_rank(4, 5, 2, rng);
  const auto c = propagate_greedy(PartialMatrix(all_but(4, 5, {}), 2, truth), 2);
  EXPECT_EQ(c.status, CompletionStatus::complete);
  EXPECT_TRUE(c.fill_order.empty());
  EXPECT_EQ(c.matrix, truth);
}

TEST(Properties, ObservedEntriesAreBitIdentical) {
  std::mt19937_64 rng(15);
  const auto fam = gen_nested_staircase_family(20, 20, 3, 4);
  const auto rep = verify_c_graph(fam.mask, 3, fam.walks, fam.auxiliary);
  const auto truth = low_rank(20, 20, 3, rng);
  const PartialMatrix pm(fam.mask, 3, truth);
  for (const auto& c : {complete_rank_r(pm, rep), propagate_greedy(pm, 3)})
    for (auto p : fam.mask.support()) EXPECT_EQ(c.at(p), pm.value(p));
}

TEST(Properties, FillOrderDependsOnMaskOnly) {
  std::mt19937_64 rng(16);
  const auto inst = gen_staircase_cycle(10, 10, {{4, 4}, {4, 4}, {4, 4}});
  const auto rep = removability_analysis(inst.circuit, inst.mask);
  const auto a = complete_rank2(PartialMatrix(inst.mask, 2, low_rank(10, 10, 2, rng)), rep, inst.circuit);
  const auto b = complete_rank2(PartialMatrix(inst.mask, 2, low_rank(10, 10, 2, rng)), rep, inst.circuit);
  EXPECT_EQ(a.fill_order, b.fill_order);
  const auto plan = plan_rank2(inst.mask, rep);
  ASSERT_EQ(plan.steps.size(), a.fill_order.size());
  for (std::size_t k = 0; k < plan.steps.size(); ++k) EXPECT_EQ(plan.steps[k].minor, a.fill_order[k].minor);
}

TEST(Properties, NonFiniteInputIsRejected) {
  const auto inst = gen_boundary_cycle(4, 4);
  PartialMatrix pm(inst.mask, 2, std::vector<double>(16, 1.0));
  pm.set({1, 1}, std::numeric_limits<double>::quiet_NaN());
  EXPECT_FALSE(pm.finite());
  EXPECT_THROW((void)propagate_greedy(pm, 2), InvalidParameter);
}

TEST(Properties, RankOutsideSupportedRange) {
  const auto inst = gen_boundary_cycle(8, 8);
  EXPECT_THROW((void)plan_greedy(inst.mask, 5), InvalidParameter);
  EXPECT_THROW((void)PartialMatrix(inst.mask, 0), InvalidParameter);
}

}  // namespace
}  // namespace latcomp
