#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "krrgc/experiment.hpp"

using namespace krrgc;

namespace {

ExperimentPlan small_plan() {
  ExperimentPlan p;
  p.networks = {NetworkKind::kLinear5};
  p.lengths = {500};
  p.n_sets = 2;
  p.base_seed = 10;
  return p;
}

std::string metrics_of(const ExperimentResult& r) {
  std::ostringstream ss;
  write_metrics_csv(ss, r);
  return ss.str();
}

}  // namespace

TEST(Experiment, TwoSetsOfLinear5) {
  const auto r = run_experiment(small_plan());
  ASSERT_EQ(r.reports.size(), 2u);
  EXPECT_TRUE(r.failures.empty());
  ASSERT_EQ(r.runtimes.size(), 1u);
  EXPECT_GT(r.runtimes[0].wall_seconds, 0.0);
  ASSERT_EQ(r.combinations.size(), 1u);
  EXPECT_TRUE(r.combinations[0].valid);
  EXPECT_EQ(r.reports[0].seed, 10u);
  EXPECT_EQ(r.reports[1].seed, 11u);
  EXPECT_EQ(r.reports[0].lags, r.combinations[0].lags);
  for (const auto& rep : r.reports) EXPECT_EQ(rep.report.gmean_threshold, r.combinations[0].gmean_threshold);
}

TEST(Experiment, RerunAndWorkerCountGiveIdenticalMetrics) {
  auto plan = small_plan();
  plan.n_sets = 3;
  const auto a = metrics_of(run_experiment(plan));
  EXPECT_EQ(a, metrics_of(run_experiment(plan)));
  plan.workers = 4;
  EXPECT_EQ(a, metrics_of(run_experiment(plan)));
  plan.workers = 2;
  EXPECT_EQ(a, metrics_of(run_experiment(plan)));
}

TEST(Experiment, AddingNetworkLeavesOthersUnchanged) {
  auto plan = small_plan();
  plan.config.lags = 2;
  const auto alone = run_experiment(plan);
  plan.networks = {NetworkKind::kNonlinear5, NetworkKind::kLinear5};
  const auto both = run_experiment(plan);
  std::vector<SetReport> lin;
  for (const auto& r : both.reports)
    if (r.network == NetworkKind::kLinear5) lin.push_back(r);
  ASSERT_EQ(lin.size(), alone.reports.size());
  for (std::size_t i = 0; i < lin.size(); ++i) EXPECT_EQ(lin[i].report.auc, alone.reports[i].report.auc);
}

TEST(Experiment, DivergentNetworkFailsEverySetAndIsInvalid) {
  auto plan = small_plan();
  plan.networks = {NetworkKind::kNonlinear9};
  const auto r = run_experiment(plan);
  EXPECT_TRUE(r.reports.empty());
  EXPECT_EQ(r.failures.size(), 2u);
  ASSERT_EQ(r.combinations.size(), 1u);
  EXPECT_FALSE(r.combinations[0].valid);
  EXPECT_TRUE(r.combinations[0].metrics.empty());
  std::ostringstream ss;
  write_summary_json(ss, r);
  EXPECT_NE(ss.str().find("generation"), std::string::npos);
}

TEST(Experiment, PlanValidation) {
  auto plan = small_plan();
  plan.lengths.clear();
  EXPECT_THROW(run_experiment(plan), std::invalid_argument);
  plan = small_plan();
  plan.n_sets = 0;
  EXPECT_THROW(run_experiment(plan), std::invalid_argument);
}

TEST(Summarize, Examples) {
  auto s = summarize_values({3, 1, 5, 2, 4});
  EXPECT_EQ(s.median, 3);
  EXPECT_EQ(s.p25, 2);
  EXPECT_EQ(s.p75, 4);
  EXPECT_EQ(s.min, 1);
  EXPECT_EQ(s.max, 5);
  s = summarize_values({0.7});
  EXPECT_EQ(s.median, 0.7);
  EXPECT_EQ(s.p25, 0.7);
  EXPECT_EQ(s.max, 0.7);
  EXPECT_THROW(summarize_values({}), std::invalid_argument);
}

TEST(Summarize, PermutationInvariant) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u;
  std::vector<NetworkEvalReport> reports(17);
  for (auto& r : reports) {
    r.auc = u(rng);
    r.brier = u(rng);
    r.acc_at_p05 = u(rng);
  }
  const auto a = summarize(reports);
  std::shuffle(reports.begin(), reports.end(), rng);
  const auto b = summarize(reports);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].metric, b[i].metric);
    EXPECT_EQ(a[i].summary.median, b[i].summary.median);
    EXPECT_EQ(a[i].summary.p25, b[i].summary.p25);
    EXPECT_EQ(a[i].summary.p75, b[i].summary.p75);
  }
}
