#include <benchmark/benchmark.h>

#include "kapranov/builders.hpp"
#include "kapranov/kapranov.hpp"
#include "kapranov/parallel.hpp"

using namespace kap;

namespace {

Connection sl2_connection() {
  static const LiePairSetup s = lie_pair_setup(builtin::sl2_borel());
  return lie_pair_connection(s, s.delta, {});
}

Connection linear_maps_connection() {
  static const LinearMapSetup s = linear_map_object(builtin::nonabelian_linear_maps());
  return s.connection;
}

void BM_brackets_sl2(benchmark::State& state) {
  Connection nabla = sl2_connection();
  for (auto _ : state) benchmark::DoNotOptimize(kapranov_brackets(nabla, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_brackets_sl2)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_brackets_linear_maps(benchmark::State& state) {
  Connection nabla = linear_maps_connection();
  for (auto _ : state) benchmark::DoNotOptimize(kapranov_brackets(nabla, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_brackets_linear_maps)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_leibniz_sl2(benchmark::State& state) {
  auto fam = kapranov_brackets(sl2_connection(), 5);
  set_thread_count(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(check_leibniz_infinity(fam, static_cast<int>(state.range(0))));
  set_thread_count(1);
}
BENCHMARK(BM_leibniz_sl2)->ArgsProduct({{3, 4, 5}, {1, 4}})->Unit(benchmark::kMillisecond);

void BM_atiyah_class(benchmark::State& state) {
  static const LiePairSetup s = lie_pair_setup(builtin::sl2_borel());
  for (auto _ : state) benchmark::DoNotOptimize(atiyah_class(s.delta, s.B, s.B));
}
BENCHMARK(BM_atiyah_class)->Unit(benchmark::kMillisecond);

void BM_homotopy_iso(benchmark::State& state) {
  static const LiePairSetup s = lie_pair_setup(builtin::sl2_borel());
  auto j2 = builtin::sl2_borel_second_splitting();
  auto d2 = lie_pair_derivation(s, j2);
  auto h = splitting_homotopy(s, builtin::sl2_borel().splitting, j2);
  Connection nabla = lie_pair_connection(s, s.delta, {});
  Connection hat = make_connection(h, s.B);
  for (auto _ : state) benchmark::DoNotOptimize(homotopy_iso(s.delta, d2, h, nabla, hat, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_homotopy_iso)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
