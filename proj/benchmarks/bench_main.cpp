#include <benchmark/benchmark.h>

#include <random>

#include "sphc/census.hpp"
#include "sphc/sphericity.hpp"

using namespace sphc;

namespace {

Mat random_element(const GroupSpec& spec, std::mt19937& rng) {
  Mat g = spec.identity();
  const auto gens = spec.group_generators();
  for (int i = 0; i < 64; ++i) g = g * gens[rng() % gens.size()];
  return g;
}

} // namespace

static void BM_Criterion(benchmark::State& state) {
  const auto rows = builtin_tables();
  for (auto _ : state)
    for (const auto& r : rows)
      if (r.spherical) benchmark::DoNotOptimize(criterion_value(row_element(r)));
}
BENCHMARK(BM_Criterion);

static void BM_LongestElementE8(benchmark::State& state) {
  auto rs = RootSystem::build(Series::E, 8);
  for (auto _ : state) benchmark::DoNotOptimize(WeylElement::longest(rs).length());
}
BENCHMARK(BM_LongestElementE8);

static void BM_MatMul(benchmark::State& state) {
  GroupSpec spec(GroupKind::Sp, int(state.range(0)), FiniteField::get(int(state.range(1))));
  std::mt19937 rng(1);
  const Mat a = random_element(spec, rng), b = random_element(spec, rng);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_MatMul)->Args({2, 1})->Args({3, 2})->Args({8, 1})->Args({16, 3});

static void BM_JordanType(benchmark::State& state) {
  GroupSpec spec(GroupKind::Sp, int(state.range(0)), FiniteField::get(1));
  const Mat u = spec.x(spec.positive_roots().front(), 1) * spec.x(spec.positive_roots().back(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(class_label(spec, u));
}
BENCHMARK(BM_JordanType)->Arg(2)->Arg(6)->Arg(12);

static void BM_BruhatCell(benchmark::State& state) {
  GroupSpec spec(GroupKind::Sp, int(state.range(0)), FiniteField::get(2));
  std::mt19937 rng(2);
  const Mat g = random_element(spec, rng);
  for (auto _ : state) benchmark::DoNotOptimize(bruhat_cell(spec, g));
}
BENCHMARK(BM_BruhatCell)->Arg(3)->Arg(6);

static void BM_CensusBfs(benchmark::State& state) {
  GroupSpec spec(GroupKind::Sp, 2, FiniteField::get(int(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_rational_classes(spec, uint64_t(1) << 30).size());
}
BENCHMARK(BM_CensusBfs)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_BOrbits(benchmark::State& state) {
  GroupSpec spec(GroupKind::Sp, 2, FiniteField::get(2));
  const auto classes = enumerate_rational_classes(spec, uint64_t(1) << 30);
  for (auto _ : state)
    for (const auto& c : classes) benchmark::DoNotOptimize(b_orbit_sizes(spec, c.members).size());
}
BENCHMARK(BM_BOrbits)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
