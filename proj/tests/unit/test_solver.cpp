#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace drw;

namespace {

ProductPoint replicate(const ConsistentEnsemble& c, std::size_t count) {
  return ProductPoint{std::vector<ConsistentEnsemble>(count, c)};
}

SolverConfig config(int n, int M, int d) {
  SolverConfig c;
  c.n = n;
  c.M = M;
  c.d = d;
  return c;
}

}  // namespace

TEST(SolverConfig, Validation) {
  EXPECT_NO_THROW(config(1, 4, 1).validate());
  EXPECT_THROW(config(1, 5, 1).validate(), ArgumentError);
  EXPECT_THROW(config(1, 2, 1).validate(), ArgumentError);
  EXPECT_THROW(config(0, 4, 1).validate(), ArgumentError);
  EXPECT_THROW(config(1, 4, -1).validate(), ArgumentError);
  auto c = config(1, 4, 1);
  c.eps_stop = 0.0;
  EXPECT_THROW(c.validate(), ArgumentError);
  c = config(1, 4, 1);
  c.max_iter = 0;
  EXPECT_THROW(c.validate(), ArgumentError);
}

TEST(ConstraintSets, OrderAndCount) {
  const auto sets = constraint_sets(config(2, 4, 1));
  ASSERT_EQ(sets.size(), 5u);
  EXPECT_EQ(sets.front().kind(), ConstraintSet::Kind::C1_0);
  for (int ell = 1; ell <= 3; ++ell) {
    EXPECT_EQ(sets[ell].kind(), ConstraintSet::Kind::C1_ell);
    EXPECT_EQ(sets[ell].ell(), ell);
  }
  EXPECT_EQ(sets.back().kind(), ConstraintSet::Kind::C2prime);
}

TEST(RandomEnsemble, SeededAndBounded) {
  std::mt19937_64 a(5);
  std::mt19937_64 b(5);
  const auto x = random_ensemble(2, 6, a);
  EXPECT_EQ(x, random_ensemble(2, 6, b));
  for (const auto& z : x.raw()) {
    EXPECT_LT(std::abs(z.real()), 1.0);
    EXPECT_LT(std::abs(z.imag()), 1.0);
  }
  EXPECT_NE(x, random_ensemble(2, 6, b));
}

TEST(Initialize, ReplicatesAPointOfC10) {
  std::mt19937_64 rng(6);
  const auto cfg = config(1, 6, 2);
  const auto x = initialize(cfg, rng);
  ASSERT_EQ(x.size(), 3u);
  for (const auto& c : x.components) EXPECT_EQ(c, x.components[0]);
  EXPECT_LT(max_abs_diff(project_c1_0(x.components[0]), x.components[0]), 1e-12);
}

TEST(DrStep, MatchesStraightLineFormula) {
  std::mt19937_64 rng(8);
  const auto cfg = config(2, 4, 1);
  const auto sets = constraint_sets(cfg);
  ProductPoint x;
  for (std::size_t i = 0; i < sets.size(); ++i) x.components.push_back(random_ensemble(2, 4, rng));
  const ProductPoint p = project_diagonal(x);

  ProductPoint expected_x = x;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto r = 2.0 * p.components[i] - x.components[i];
    expected_x.components[i] = x.components[i] + sets[i].project(r) - p.components[i];
  }
  ConsistentEnsemble mean = expected_x.components[0];
  for (std::size_t i = 1; i < sets.size(); ++i) mean += expected_x.components[i];
  mean *= 1.0 / static_cast<double>(sets.size());

  const StepResult s = dr_step(x, p, sets);
  EXPECT_LT(distance(s.x, expected_x), 1e-12);
  for (const auto& c : s.p.components) EXPECT_LT(max_abs_diff(c, mean), 1e-12);
  EXPECT_NEAR(s.step_norm, distance(s.x, x), 1e-12);
}

TEST(DrStep, HaarIsAFixedPoint) {
  for (int n : {1, 2}) {
    auto cfg = config(n, 4, 0);
    cfg.include_zero_moment = true;
    const auto sets = constraint_sets(cfg);
    const auto x = replicate(drwtest::ensemble_of(drwtest::haar(n, 4)), sets.size());
    const StepResult s = dr_step(x, project_diagonal(x), sets);
    EXPECT_LT(s.step_norm, 1e-10) << "n = " << n;

    cfg.max_iter = 5;
    const RunResult r = solve(cfg, x);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.iterations, 1);
  }
}

TEST(Solve, DeterministicForAFixedSeed) {
  auto cfg = config(1, 4, 1);
  cfg.seed = 3;
  cfg.max_iter = 200;
  const RunResult a = solve(cfg);
  const RunResult b = solve(cfg);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.solution, b.solution);
  EXPECT_EQ(a.filters, b.filters);
  cfg.seed = 4;
  EXPECT_NE(solve(cfg).solution, a.solution);
}

TEST(Solve, SmallCaseConverges) {
  auto cfg = config(1, 4, 1);
  const RunResult r = solve(cfg);
  ASSERT_TRUE(r.converged);
  EXPECT_LT(r.final_step_norm, cfg.eps_stop);
  EXPECT_LT(r.residuals.unitarity, 10 * cfg.eps_stop);
  EXPECT_LT(r.residuals.regularity, 10 * cfg.eps_stop);
  EXPECT_LT(r.residuals.qmf_grid, 10 * cfg.eps_stop);
  EXPECT_LT(r.residuals.consistency, 1e-8);
  EXPECT_TRUE(r.bownik_pass);
  Complex sum{};
  for (const auto& z : r.filters.g[0]) sum += z;
  EXPECT_NEAR(std::abs(sum), 1.0, 10 * cfg.eps_stop);
  EXPECT_FALSE(r.separability.has_value());
}

TEST(Solve, IterationCapIsReported) {
  auto cfg = config(1, 14, 6);
  cfg.max_iter = 3;
  const RunResult r = solve(cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 3);
}

TEST(Batch, IndependentOfThreadCount) {
  auto cfg = config(1, 4, 1);
  cfg.max_iter = 2000;
  const BatchSummary one = batch(cfg, 4, 1);
  const BatchSummary two = batch(cfg, 4, 2);
  ASSERT_EQ(one.runs.size(), 4u);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(one.runs[i].seed, cfg.seed + i);
    EXPECT_EQ(one.runs[i].iterations, two.runs[i].iterations);
    EXPECT_EQ(one.runs[i].solution, two.runs[i].solution);
  }
  EXPECT_EQ(one.solved, two.solved);

  int solved = 0;
  double sum = 0.0;
  for (const auto& r : one.runs) {
    if (!r.converged) continue;
    ++solved;
    sum += static_cast<double>(r.iterations);
  }
  EXPECT_EQ(one.solved, solved);
  if (solved > 0) EXPECT_DOUBLE_EQ(*one.mean_iterations, sum / solved);
}

TEST(Batch, RejectsBadArguments) {
  EXPECT_THROW(batch(config(1, 4, 1), 0), ArgumentError);
  EXPECT_THROW(batch(config(1, 5, 1), 1), ArgumentError);
}
