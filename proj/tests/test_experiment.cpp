#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "nsm/analysis.hpp"
#include "nsm/error.hpp"
#include "nsm/harness/experiment.hpp"
#include "nsm/rng.hpp"

namespace hs = nsm::harness;
using nsm::optimizers::Method;

TEST(Presets, Toy) {
  const auto cfg = hs::toy_preset();
  EXPECT_EQ(cfg.dim, 10u);
  EXPECT_EQ(cfg.radius, 10.0);
  EXPECT_EQ(cfg.gamma0, 200.0);
  EXPECT_EQ(*cfg.x1_value, 5.0);
  const double thr = 1.0 / (1.0 + std::sqrt(10.0));
  ASSERT_EQ(cfg.p_values.size(), 6u);
  EXPECT_EQ(cfg.p_values[0], 0.1);
  EXPECT_EQ(cfg.p_values[1], 0.2);
  EXPECT_NEAR(cfg.p_values[2], thr - 0.01, 1e-15);
  EXPECT_NEAR(cfg.p_values[3], thr, 1e-15);
  EXPECT_NEAR(cfg.p_values[4], thr + 0.01, 1e-15);
  EXPECT_EQ(cfg.p_values[5], 0.4);
}

TEST(Presets, Linreg) {
  const auto full = hs::linreg_preset(true);
  EXPECT_EQ(full.dim, 100u);
  EXPECT_EQ(full.samples, 1000u);
  EXPECT_TRUE(full.p_values.empty());
  EXPECT_EQ(full.schedule, hs::ScheduleRule::Theorem);
  EXPECT_EQ(hs::linreg_preset().dim, 20u);
  EXPECT_EQ(full.methods.size(), 6u);
}

TEST(Presets, Logistic) {
  const auto cfg = hs::logistic_preset();
  EXPECT_EQ(cfg.p_values, std::vector<double>{0.25});
  EXPECT_EQ(cfg.gamma0, 0.1);
  EXPECT_EQ(cfg.adversary_scale, 15.0);
  EXPECT_FALSE(cfg.notes.empty());
}

TEST(Validate, Rejections) {
  auto cfg = hs::toy_preset();
  cfg.p_values = {1.2};
  EXPECT_THROW(hs::validate(cfg), nsm::ConfigError);
  cfg = hs::toy_preset();
  cfg.seeds = {1, 1};
  EXPECT_THROW(hs::validate(cfg), nsm::ConfigError);
  cfg = hs::logistic_preset();
  cfg.schedule = hs::ScheduleRule::Theorem;
  EXPECT_THROW(hs::validate(cfg), nsm::ConfigError);
  cfg = hs::logistic_preset();
  cfg.metrics = {hs::Metric::DistSqOpt};
  EXPECT_THROW(hs::validate(cfg), nsm::ConfigError);
  cfg = hs::linreg_preset();
  cfg.samples = 5;
  EXPECT_THROW(hs::validate(cfg), nsm::ConfigError);
}

TEST(Experiment, TheoremScheduleAboveThresholdFailsBeforeRunning) {
  auto cfg = hs::toy_preset();
  cfg.schedule = hs::ScheduleRule::Theorem;
  cfg.p_values = {0.3};
  EXPECT_THROW(hs::run_experiment(cfg), nsm::ConfigError);
}

TEST(Cadence, Values) {
  EXPECT_EQ(hs::metric_cadence(1), 1u);
  EXPECT_EQ(hs::metric_cadence(10000), 1u);
  EXPECT_EQ(hs::metric_cadence(10001), 2u);
  EXPECT_EQ(hs::metric_cadence(100000), 10u);
}

TEST(Seeds, InjectiveOverGrid) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t base = 1; base <= 200; ++base) {
    EXPECT_TRUE(seen.insert(hs::data_seed(base)).second);
    for (std::size_t p = 0; p < 10; ++p) EXPECT_TRUE(seen.insert(hs::channel_seed(base, p)).second);
  }
}

TEST(Experiment, RowCountContract) {
  auto cfg = hs::toy_preset();
  cfg.iterations = 50;
  cfg.seeds = {1, 2, 3};
  cfg.p_values = {0.1, 0.2};
  cfg.methods = {Method::NSM, Method::GD};
  cfg.metrics = {hs::Metric::DistSqOpt, hs::Metric::CorruptFlag};
  cfg.schedule = hs::ScheduleRule::InverseT;
  cfg.gamma0 = 1.0;
  const auto recs = hs::run_experiment(cfg);
  EXPECT_EQ(recs.size(), 2u * 3u * 2u * 51u * 2u);
}

TEST(Experiment, AddingMethodKeepsOtherRuns) {
  auto cfg = hs::toy_preset();
  cfg.iterations = 300;
  cfg.seeds = {4, 5};
  cfg.p_values = {0.3};
  cfg.methods = {Method::NSM};
  auto a = hs::run_experiment(cfg);
  cfg.methods = {Method::GD, Method::NSM, Method::Adam};
  auto b = hs::run_experiment(cfg);
  std::erase_if(b, [](const hs::RunRecord& r) { return r.method != "nsm"; });
  EXPECT_EQ(a, b);
}

TEST(Experiment, ThreadCountDoesNotChangeResult) {
  auto cfg = hs::linreg_preset();
  cfg.iterations = 200;
  cfg.seeds = {1, 2};
  cfg.threads = 1;
  const auto a = hs::run_experiment(cfg);
  cfg.threads = 4;
  EXPECT_EQ(a, hs::run_experiment(cfg));
}

TEST(Experiment, LinregRuleDerivesPerSeed) {
  auto cfg = hs::linreg_preset();
  cfg.iterations = 10;
  cfg.seeds = {1, 2};
  cfg.methods = {Method::NSM};
  const auto res = hs::run_experiment_detailed(cfg);
  ASSERT_EQ(res.runs.size(), 2u);
  for (const auto& run : res.runs) {
    EXPECT_EQ(run.run_id, "linreg/p=auto");
    ASSERT_TRUE(run.kappa);
    EXPECT_NEAR(run.p, 0.5 / (1.0 + *run.kappa), 1e-15);
    EXPECT_NEAR(*run.q, 0.75 / (1.0 + *run.kappa), 1e-15);
    EXPECT_NEAR(run.gamma0, nsm::analysis::strongly_convex_gamma(20.0, *run.kappa, *run.q), 1e-12);
  }
}

TEST(Experiment, DivergedRunsEmitMarker) {
  auto cfg = hs::logistic_preset();
  cfg.iterations = 3000;
  cfg.seeds = {1};
  cfg.methods = {Method::GD};
  cfg.schedule = hs::ScheduleRule::Constant;
  cfg.gamma0 = 1e150;
  cfg.p_values = {1.0};
  const auto recs = hs::run_experiment(cfg);
  ASSERT_FALSE(recs.empty());
  EXPECT_EQ(recs.back().metric, hs::Metric::Diverged);
  EXPECT_EQ(recs.back().value, 1.0);
}
