#include <doctest.h>
#include <omp.h>

#include <cmath>
#include <random>

#include "netparadox/distributions.hpp"
#include "netparadox/errors.hpp"
#include "netparadox/kernels.hpp"
#include "netparadox/null_models.hpp"
#include "netparadox/synthetic.hpp"

using namespace netparadox;

namespace {

struct ThreadGuard {
  int saved = omp_get_max_threads();
  ~ThreadGuard() { omp_set_num_threads(saved); }
};

const std::vector<int> kThreadCounts{1, 2, 3, 5, 8};

}  // namespace

TEST_CASE("paradox kernels agree with the serial reference") {
  const auto g = random_out_degree_graph(20000, DistributionSpec::pareto(1.5, 2), 4);
  const auto attr = iid_attribute(g.node_count(), DistributionSpec::lognormal(0, 2), 5, 0.2);
  for (auto rel : {NeighborRelation::Friends, NeighborRelation::Followers}) {
    for (auto stat : {ParadoxStat::Mean, ParadoxStat::Median}) {
      const auto a = kernels::count_paradox(g, attr.values, rel, stat);
      const auto b = kernels::serial::count_paradox(g, attr.values, rel, stat);
      CHECK(a.evaluated == b.evaluated);
      CHECK(a.in_paradox == b.in_paradox);
      CHECK(a.excluded == b.excluded);
      const auto v = kernels::paradox_verdicts(g, attr.values, rel, stat);
      std::size_t ones = 0, none = 0;
      for (auto x : v) {
        ones += x == 1;
        none += x == -1;
      }
      CHECK(ones == a.in_paradox);
      CHECK(none == a.excluded);
    }
  }
}

TEST_CASE("pearson kernels agree with the serial reference") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> z;
  for (std::size_t n : {2u, 3u, 4095u, 4096u, 4097u, 100000u}) {
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = z(rng);
      ys[i] = xs[i] * 0.5 + z(rng);
    }
    const auto a = kernels::pearson(xs, ys);
    const auto b = kernels::serial::pearson(xs, ys);
    CHECK(a.n == b.n);
    CHECK(a.r == doctest::Approx(b.r).epsilon(1e-12));
  }
  const auto g = random_out_degree_graph(5000, DistributionSpec::pareto(1.2, 3), 2);
  const auto x = iid_attribute(g.node_count(), DistributionSpec::exponential(1), 1).values;
  const auto y = iid_attribute(g.node_count(), DistributionSpec::exponential(1), 2).values;
  const auto a = kernels::edge_pearson(g, x, y);
  const auto b = kernels::serial::edge_pearson(g, x, y);
  CHECK(a.n == g.edge_count());
  CHECK(a.n == b.n);
  CHECK(a.r == doctest::Approx(b.r).epsilon(1e-12));

  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(kernels::pearson(one, one), SizeError);
  CHECK_THROWS_AS(kernels::serial::pearson(one, one), SizeError);
  const std::vector<double> short_x{1.0, 2.0};
  CHECK_THROWS_AS(kernels::edge_pearson(g, short_x, y), ReferenceError);
}

TEST_CASE("results are bit-identical for every thread count") {
  ThreadGuard guard;
  const auto g = random_out_degree_graph(30000, DistributionSpec::pareto(1.3, 2), 6);
  const auto attr = iid_attribute(g.node_count(), DistributionSpec::pareto(1.2, 1), 7);
  const std::vector<std::size_t> sizes{1, 10, 100};

  omp_set_num_threads(1);
  const auto count = kernels::count_paradox(g, attr.values, NeighborRelation::Friends,
                                            ParadoxStat::Median);
  const auto wn = within_node_correlation(g, attr).r;
  const auto as = attribute_assortativity(g, attr).r;
  const auto curve = mean_median_scaling(DistributionSpec::pareto(1.2, 1), sizes, 300, 3);
  const auto fc = fully_connected_paradox(20, DistributionSpec::exponential(1), 16, 2);
  IidParadoxConfig icfg;
  icfg.n_nodes = 3000;
  icfg.seed = 9;
  const auto iid = iid_network_paradox(icfg);
  ExperimentConfig ecfg;
  ecfg.runs = 6;
  ecfg.kind = ShuffleKind::Controlled;
  ecfg.seed = 10;
  const auto exp = shuffle_experiment(g, attr, ecfg);

  for (int t : kThreadCounts) {
    CAPTURE(t);
    omp_set_num_threads(t);
    const auto c2 = kernels::count_paradox(g, attr.values, NeighborRelation::Friends,
                                           ParadoxStat::Median);
    CHECK(c2.in_paradox == count.in_paradox);
    CHECK(within_node_correlation(g, attr).r == wn);
    CHECK(attribute_assortativity(g, attr).r == as);
    const auto curve2 = mean_median_scaling(DistributionSpec::pareto(1.2, 1), sizes, 300, 3);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      CHECK(curve2.points[i].mean_of_means == curve.points[i].mean_of_means);
      CHECK(curve2.points[i].mean_of_medians == curve.points[i].mean_of_medians);
    }
    const auto fc2 = fully_connected_paradox(20, DistributionSpec::exponential(1), 16, 2);
    CHECK(fc2.frac_mean == fc.frac_mean);
    CHECK(fc2.frac_median == fc.frac_median);
    const auto iid2 = iid_network_paradox(icfg);
    REQUIRE(iid2.buckets.size() == iid.buckets.size());
    for (std::size_t i = 0; i < iid.buckets.size(); ++i) {
      CHECK(iid2.buckets[i].in_paradox_mean == iid.buckets[i].in_paradox_mean);
      CHECK(iid2.buckets[i].in_paradox_median == iid.buckets[i].in_paradox_median);
    }
    const auto exp2 = shuffle_experiment(g, attr, ecfg);
    for (std::size_t k = 0; k < exp.paradox_aggregates.size(); ++k) {
      CHECK(exp2.paradox_aggregates[k].mean == exp.paradox_aggregates[k].mean);
      CHECK(exp2.paradox_aggregates[k].std_error == exp.paradox_aggregates[k].std_error);
    }
    CHECK(exp2.within_node_aggregate.mean == exp.within_node_aggregate.mean);
    CHECK(exp2.assortativity_aggregate.mean == exp.assortativity_aggregate.mean);
  }
}
