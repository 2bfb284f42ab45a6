#include <benchmark/benchmark.h>

#include "dsap/harness.hpp"
#include "dsap/strings.hpp"
#include "dsap/superiorize.hpp"

using namespace dsap;

namespace {

Vector ramp(std::size_t dim, double scale) {
  Vector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = scale * (static_cast<double>(i % 7) - 3.0);
  return v;
}

StringPlan plan_for(std::size_t m) {
  return StringPlan::seeded_random(1, m, PlanConstraints{0.5 / static_cast<double>(m), m + 1});
}

}  // namespace

static void BM_ProjectBall(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const ConvexSet ball = ConvexSet::ball(Vector(dim, 0.0), 1.0);
  const Vector x = ramp(dim, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(project(ball, x));
}
BENCHMARK(BM_ProjectBall)->Arg(2)->Arg(16)->Arg(128);

static void BM_ApplyStage(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const SetFamily fam = generate_halfspace_problem(10, m, 3, 0.1);
  const PlanStage stage = plan_for(m).stage_at(0);
  const Vector x = ramp(10, 20.0);
  for (auto _ : state) benchmark::DoNotOptimize(apply_stage(stage, fam, x));
}
BENCHMARK(BM_ApplyStage)->Arg(2)->Arg(8)->Arg(32);

static void BM_DsapRun(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const SetFamily fam = generate_halfspace_problem(10, m, 5, 0.1);
  const StringPlan plan = plan_for(m);
  const Vector x0 = ramp(10, 20.0);
  for (auto _ : state) benchmark::DoNotOptimize(dsap_run(fam, plan, x0, StopRule{1e-8, 100000, 0.0}));
}
BENCHMARK(BM_DsapRun)->Arg(4)->Arg(8);

static void BM_SuperiorizedRun(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const SetFamily fam = generate_halfspace_problem(10, m, 5, 0.1);
  const StringPlan plan = plan_for(m);
  const auto sched = PerturbationSchedule::geometric(1.0, 0.9, InnerLengths::constant(2));
  const Vector x0 = ramp(10, 20.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(superiorized_run(fam, Objective::norm1(), plan, sched, x0, StopRule{1e-8, 100000, 1e-12}));
  }
}
BENCHMARK(BM_SuperiorizedRun)->Arg(4)->Arg(8);

static void BM_ReproduceExample(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reproduce_example(ExampleVariant::A));
}
BENCHMARK(BM_ReproduceExample);

BENCHMARK_MAIN();
