#include <benchmark/benchmark.h>

#include "cm1/parse.hpp"
#include "cm1/verify.hpp"

namespace {

void BM_EnumerateCentered(benchmark::State& state) {
  auto ctx = cm1::make_algebra(static_cast<int>(state.range(0)));
  int d = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto graphs = cm1::enumerate_centered(ctx, d);
    benchmark::DoNotOptimize(graphs.size());
  }
}
BENCHMARK(BM_EnumerateCentered)->Args({3, 2})->Args({4, 2})->Args({4, 3});

void BM_BuildIndex(benchmark::State& state) {
  auto ctx = cm1::make_algebra(4);
  int d_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto idx = cm1::build_index(ctx, d_max);
    benchmark::DoNotOptimize(idx.entries.size());
  }
}
BENCHMARK(BM_BuildIndex)->Arg(2)->Arg(3);

void BM_OperationEval(benchmark::State& state) {
  auto ctx = cm1::make_algebra(4);
  cm1::Evaluator eval(ctx, cm1::build_index(ctx, 3));
  std::vector<cm1::AlgebraElement> inputs;
  for (const char* s :
       {"R2", "R3", "U4", "U3", "U4", "L3", "L2", "U1", "U2", "U1^3"}) {
    inputs.push_back(cm1::parse_element(ctx, s));
  }
  std::vector<int> w(4, 0);
  for (auto _ : state) {
    auto out = eval.mu(w, inputs);
    benchmark::DoNotOptimize(out.is_zero());
  }
}
BENCHMARK(BM_OperationEval);

void BM_RelationInstance(benchmark::State& state) {
  auto ctx = cm1::make_algebra(3);
  cm1::Evaluator eval(ctx, cm1::build_index(ctx, 3));
  cm1::RelationInstance inst;
  inst.m = 3;
  inst.weight = {0, 0, 0};
  for (const char* s :
       {"U1", "R2*L2", "U1^2", "R2", "U3", "L2*R2", "U3", "U3", "L2"}) {
    inst.inputs.push_back(cm1::parse_path(ctx, s));
  }
  for (auto _ : state) {
    auto sum = cm1::ainfty_sum(eval, inst);
    benchmark::DoNotOptimize(sum.is_zero());
  }
}
BENCHMARK(BM_RelationInstance);

void BM_SweepSmall(benchmark::State& state) {
  auto ctx = cm1::make_algebra(3);
  cm1::Evaluator eval(ctx, cm1::build_index(ctx, 2));
  for (auto _ : state) {
    cm1::SweepOptions o;
    o.grading_bound = 6;
    o.weight_bound = 1;
    o.jobs = 1;
    auto s = cm1::sweep(eval, o, [](const cm1::RelationReport&) {});
    benchmark::DoNotOptimize(s.checked);
  }
}
BENCHMARK(BM_SweepSmall)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
