#include <benchmark/benchmark.h>

#include "nsm/corruption.hpp"
#include "nsm/feasible_set.hpp"
#include "nsm/optimizers.hpp"
#include "nsm/problems.hpp"

using nsm::FeasibleSet;
using nsm::RealVector;

namespace {

RealVector ramp(std::size_t d) {
  std::vector<double> v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = 0.5 + static_cast<double>(i) * 0.37;
  return RealVector(std::move(v));
}

void BM_ProjectBall(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto set = FeasibleSet::ball(RealVector::zeros(d), 1.0);
  const RealVector x = ramp(d);
  for (auto _ : state) benchmark::DoNotOptimize(set.project(x));
}
BENCHMARK(BM_ProjectBall)->Arg(10)->Arg(100)->Arg(1000);

void BM_ProjectDiagBox(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto set = FeasibleSet::diag_box(10.0, d);
  const RealVector x = ramp(d);
  for (auto _ : state) benchmark::DoNotOptimize(set.project(x));
}
BENCHMARK(BM_ProjectDiagBox)->Arg(10)->Arg(100)->Arg(1000);

void BM_Normalize(benchmark::State& state) {
  const RealVector x = ramp(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nsm::normalize(x));
}
BENCHMARK(BM_Normalize)->Arg(10)->Arg(1000);

void BM_LeastSquaresGradient(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  nsm::Rng rng(1);
  const auto data = nsm::problems::synth_linreg(d, 10 * d, 10.0, 2.5, rng);
  const auto f = nsm::problems::least_squares_objective(data);
  const RealVector x = RealVector::filled(d, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(f.subgradient(x));
}
BENCHMARK(BM_LeastSquaresGradient)->Arg(20)->Arg(100);

void BM_LogisticGradient(benchmark::State& state) {
  nsm::Rng rng(1);
  const auto data = nsm::problems::synth_classes(10, 300, 3, 10.0, 0.1, rng);
  const auto f = nsm::problems::logistic_objective(data);
  const RealVector x = RealVector::filled(data.param_dim(), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(f.subgradient(x));
}
BENCHMARK(BM_LogisticGradient);

void BM_ToyRun(benchmark::State& state) {
  const std::size_t d = 10;
  const auto f = nsm::problems::toy_objective(d);
  const auto set = FeasibleSet::diag_box(10.0, d);
  for (auto _ : state) {
    nsm::corruption::CorruptionChannel ch(
        0.2, nsm::corruption::NegateIterate(RealVector::filled(d, 1.0)), 7);
    nsm::optimizers::RunSpec spec{.objective = f, .set = set, .x1 = RealVector::filled(d, 5.0)};
    spec.schedule = nsm::optimizers::StepSchedule::inverse_t(200.0);
    spec.iterations = static_cast<std::size_t>(state.range(0));
    spec.adversary_radius = 10.0;
    benchmark::DoNotOptimize(nsm::optimizers::run(spec, ch));
  }
}
BENCHMARK(BM_ToyRun)->Arg(10000);

}  // namespace
BENCHMARK_MAIN();
