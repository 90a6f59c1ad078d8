#include <benchmark/benchmark.h>

#include <random>

#include "pinball/catalog.hpp"
#include "pinball/dynamics.hpp"
#include "pinball/stability.hpp"

using namespace pinball;

static void BM_CastRay(benchmark::State& state) {
  const Polygon polygon = regular_polygon(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.05, 0.95), angle(-1.4, 1.4);
  std::vector<std::pair<BoundaryPoint, double>> rays;
  for (int k = 0; k < 1024; ++k) {
    const int side = k % static_cast<int>(polygon.size());
    rays.push_back({{side, u(rng) * polygon.side_length(side)}, angle(rng)});
  }
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& [from, theta] = rays[k++ % rays.size()];
    benchmark::DoNotOptimize(cast_ray(polygon, from, theta));
  }
}
BENCHMARK(BM_CastRay)->Arg(3)->Arg(8)->Arg(32);

static void BM_Classify(benchmark::State& state) {
  const CatalogEntry e = known_polygon("tri306090");
  const Itinerary word = Itinerary::parse("1,2,3,2,3,2,1,3,2,3");
  for (auto _ : state) benchmark::DoNotOptimize(classify(e.polygon, word));
}
BENCHMARK(BM_Classify);

static void BM_ClassifySquareWords(benchmark::State& state) {
  const Polygon square = rectangle(1.0);
  const auto words = enumerate_words(4, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    for (const auto& w : words) benchmark::DoNotOptimize(classify(square, w));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * words.size()));
}
BENCHMARK(BM_ClassifySquareWords)->Arg(6)->Arg(8);

static void BM_FindAttractingCycles(benchmark::State& state) {
  const Polygon triangle = regular_polygon(3);
  SearchOptions options;
  options.n_samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_attracting_cycles(triangle, 0.9, options));
}
BENCHMARK(BM_FindAttractingCycles)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
