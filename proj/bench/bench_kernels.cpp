// Parallel kernels against their serial references.
//
//   ./bench_kernels --benchmark_filter=Paradox
//   OMP_NUM_THREADS=4 ./bench_kernels

#include <benchmark/benchmark.h>

#include <map>

#include "netparadox/distributions.hpp"
#include "netparadox/kernels.hpp"
#include "netparadox/synthetic.hpp"

using namespace netparadox;

namespace {

struct Fixture {
  DirectedGraph graph;
  std::vector<double> values;
};

// Heavy-tailed out-degrees; roughly 8 edges per node.
const Fixture& fixture(std::size_t n) {
  static std::map<std::size_t, Fixture> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    auto g = random_out_degree_graph(n, DistributionSpec::pareto(1.5, 3), 1);
    auto v = iid_attribute(n, DistributionSpec::lognormal(0, 2), 2).values;
    it = cache.emplace(n, Fixture{std::move(g), std::move(v)}).first;
  }
  return it->second;
}

template <bool Parallel>
void Paradox(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
  const auto stat = state.range(1) ? ParadoxStat::Median : ParadoxStat::Mean;
  for (auto _ : state) {
    const auto c = Parallel ? kernels::count_paradox(f.graph, f.values, NeighborRelation::Friends, stat)
                            : kernels::serial::count_paradox(f.graph, f.values,
                                                             NeighborRelation::Friends, stat);
    benchmark::DoNotOptimize(c.in_paradox);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.graph.edge_count()));
}

template <bool Parallel>
void EdgePearson(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    const auto r = Parallel ? kernels::edge_pearson(f.graph, f.values, f.values)
                            : kernels::serial::edge_pearson(f.graph, f.values, f.values);
    benchmark::DoNotOptimize(r.r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.graph.edge_count()));
}

template <bool Parallel>
void Pearson(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto xs = sample(DistributionSpec::lognormal(0, 1), n, 3);
  const auto ys = sample(DistributionSpec::lognormal(0, 1), n, 4);
  for (auto _ : state) {
    const auto r = Parallel ? kernels::pearson(xs, ys) : kernels::serial::pearson(xs, ys);
    benchmark::DoNotOptimize(r.r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

template <bool Parallel>
void Scaling(benchmark::State& state) {
  const std::vector<std::size_t> sizes{1, 10, 100, 1000};
  const auto d = DistributionSpec::pareto(1.2, 1);
  const auto trials = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const auto c = Parallel ? mean_median_scaling(d, sizes, trials, 5)
                            : serial::mean_median_scaling(d, sizes, trials, 5);
    benchmark::DoNotOptimize(c.points.back().mean_of_means);
  }
}

}  // namespace

BENCHMARK(Paradox<false>)->Name("Paradox/serial")->ArgsProduct({{100000, 1000000}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(Paradox<true>)->Name("Paradox/omp")->ArgsProduct({{100000, 1000000}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(EdgePearson<false>)->Name("EdgePearson/serial")->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(EdgePearson<true>)->Name("EdgePearson/omp")->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(Pearson<false>)->Name("Pearson/serial")->Arg(1 << 20)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(Pearson<true>)->Name("Pearson/omp")->Arg(1 << 20)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(Scaling<false>)->Name("Scaling/serial")->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(Scaling<true>)->Name("Scaling/omp")->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
