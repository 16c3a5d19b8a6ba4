#include <benchmark/benchmark.h>

#include <random>

#include "dsimb/kernels.hpp"
#include "dsimb/parallel.hpp"
#include "dsimb/pool.hpp"

using namespace dsimb;

namespace {

Dataset synthetic(std::size_t n, std::uint32_t seed) {
  std::vector<AttributeSchema> s;
  for (int a = 0; a < 8; ++a) s.push_back({"x" + std::to_string(a), AttributeKind::numeric, {}, 0, 0});
  s.push_back({"c", AttributeKind::nominal, {"p", "q", "r"}, 0, 0});
  Dataset d("bench", s, {"a", "b", "c"});
  std::mt19937 gen(seed);
  std::normal_distribution<double> g(0, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const int y = static_cast<int>(i % 3);
    std::vector<double> x(9);
    for (int a = 0; a < 8; ++a) x[static_cast<std::size_t>(a)] = g(gen) + 0.7 * y;
    x[8] = static_cast<double>(gen() % 3);
    d.add(x, y);
  }
  d.refresh_ranges();
  return d;
}

const Dataset& train_set() {
  static const Dataset d = synthetic(600, 1);
  return d;
}

const Dataset& query_set() {
  static const Dataset d = synthetic(300, 2);
  return d;
}

const EnsembleModel& model() {
  static const EnsembleModel m = EnsembleModel::train(train_set(), ResamplePlan{}, 50, 7);
  return m;
}

void BM_PredictionMatrix(benchmark::State& state) {
  ScopedThreads threads(static_cast<int>(state.range(0)));
  model();
  for (auto _ : state) benchmark::DoNotOptimize(prediction_matrix(model().trees(), query_set()));
}

void BM_PredictionMatrixReference(benchmark::State& state) {
  model();
  for (auto _ : state) benchmark::DoNotOptimize(reference::prediction_matrix(model().trees(), query_set()));
}

void BM_BatchKnn(benchmark::State& state) {
  ScopedThreads threads(static_cast<int>(state.range(0)));
  const NeighborIndex index(train_set());
  for (auto _ : state) benchmark::DoNotOptimize(batch_knn(index, query_set(), 7));
}

void BM_BatchKnnReference(benchmark::State& state) {
  const NeighborIndex index(train_set());
  for (auto _ : state) benchmark::DoNotOptimize(reference::batch_knn(index, query_set(), 7));
}

void BM_PoolTraining(benchmark::State& state) {
  ScopedThreads threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(EnsembleModel::train(train_set(), plan_by_name("Ba-SM"), 20, 3));
}

}  // namespace

BENCHMARK(BM_PredictionMatrix)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PredictionMatrixReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchKnn)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchKnnReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PoolTraining)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
