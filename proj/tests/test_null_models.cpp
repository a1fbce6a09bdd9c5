#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "netparadox/errors.hpp"
#include "netparadox/null_models.hpp"
#include "netparadox/synthetic.hpp"
#include "oracles.hpp"

using namespace netparadox;

namespace {

DirectedGraph parse(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Planted network sized for unit tests; the acceptance run uses 1e5 nodes.
const PlantedNetwork& medium_network() {
  static const PlantedNetwork net = [] {
    PlantedNetworkConfig cfg;
    cfg.nodes = 20000;
    cfg.seed = 12;
    return planted_assortative_network(cfg);
  }();
  return net;
}

}  // namespace

TEST_CASE("degree binning") {
  const DegreeBinning ten;
  CHECK(ten.bin_of(0) == 0);
  CHECK(ten.bin_of(1) == 1);
  CHECK(ten.bin_of(9) == 10);
  CHECK(ten.bin_of(10) == 11);
  CHECK(ten.bin_of(100) == 21);
  CHECK(ten.bin_of(1000) == 31);
  const DegreeBinning one{1};
  CHECK(one.bin_of(9) == 1);
  CHECK(one.bin_of(10) == 2);
  CHECK(one.bin_of(99) == 2);
  CHECK(one.degree_range(2) == std::pair<std::size_t, std::size_t>{10, 99});
  CHECK(one.degree_range(0) == std::pair<std::size_t, std::size_t>{0, 0});

  // Bins partition the degrees into contiguous, ordered ranges (low bins
  // may be empty: no integer lies in [10^0.1, 10^0.2)).
  for (int b : {1, 3, 10, 20}) {
    const DegreeBinning bin{b};
    std::size_t prev = 0;
    for (std::size_t d = 0; d <= 20000; ++d) {
      const auto k = bin.bin_of(d);
      CHECK(k >= prev);
      prev = k;
      const auto [lo, hi] = bin.degree_range(k);
      REQUIRE(lo <= d);
      REQUIRE(d <= hi);
    }
  }
  CHECK_THROWS_AS(DegreeBinning{0}.bin_of(3), std::invalid_argument);
}

TEST_CASE("full shuffle permutes the values") {
  AttributeTable flat{"c", std::vector<double>(50, 3.0)};
  CHECK(full_shuffle(flat, 1).table.values == flat.values);

  AttributeTable t{"t", {}};
  for (int i = 0; i < 1000; ++i) t.values.push_back(i % 17 * 1.5);
  const auto s = full_shuffle(t, 9);
  CHECK(s.kind == ShuffleKind::Full);
  CHECK(s.seed == 9);
  CHECK(s.table.name == "t");
  CHECK(sorted(s.table.values) == sorted(t.values));
  CHECK(s.table.values != t.values);
  CHECK(full_shuffle(t, 9).table.values == s.table.values);
  CHECK(full_shuffle(t, 10).table.values != s.table.values);
  CHECK_THROWS_AS(full_shuffle(AttributeTable{"e", {}}, 1), EmptyInputError);
}

TEST_CASE("full shuffle is uniform over permutations") {
  const AttributeTable t{"t", {0, 1, 2}};
  std::map<std::vector<double>, int> freq;
  const int trials = 60000;
  for (int s = 0; s < trials; ++s) ++freq[full_shuffle(t, s).table.values];
  REQUIRE(freq.size() == 6);
  double chi2 = 0;
  for (const auto& [perm, c] : freq) chi2 += std::pow(c - trials / 6.0, 2) / (trials / 6.0);
  CHECK(chi2 < 20.5);  // 0.1% critical value, 5 degrees of freedom
}

TEST_CASE("controlled shuffle keeps values inside their bins") {
  const auto& net = medium_network();
  const auto& g = net.graph;
  const auto before = g.edges();
  const DegreeBinning binning;
  const auto s = controlled_shuffle(g, net.attribute, binning, 5);
  CHECK(g.edges() == before);
  CHECK(s.kind == ShuffleKind::Controlled);
  CHECK(sorted(s.table.values) == sorted(net.attribute.values));

  std::map<std::size_t, std::vector<double>> was, now;
  const auto deg = g.degrees(Direction::Out);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    was[binning.bin_of(deg[u])].push_back(net.attribute.values[u]);
    now[binning.bin_of(deg[u])].push_back(s.table.values[u]);
  }
  for (auto& [bin, vals] : was) CHECK(sorted(vals) == sorted(now[bin]));

  std::size_t occupied = 0;
  for (const auto& b : s.bins) {
    occupied += b.nodes;
    CHECK(b.nodes == was[b.bin].size());
    CHECK(binning.bin_of(b.degree_lo) == b.bin);
    CHECK(binning.bin_of(b.degree_hi) == b.bin);
  }
  CHECK(occupied == g.node_count());
  CHECK(s.bins.size() == was.size());
  CHECK(controlled_shuffle(g, net.attribute, binning, 5).table.values == s.table.values);
}

TEST_CASE("controlled shuffle edge cases") {
  // Every node has its own degree bin: nothing can move.
  const auto chain = parse("a b\na c\na d\nb c\nb d\nc d\n");  // out-degrees 3, 2, 1, 0
  AttributeTable t{"t", {7, 1, 4, 2}};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK(controlled_shuffle(chain, t, DegreeBinning{}, seed).table.values == t.values);
  }
  // A single bin behaves like a full shuffle: one group, same multiset.
  const auto cycle = parse("a b\nb c\nc d\nd e\ne a\n");
  AttributeTable u{"u", {1, 2, 3, 4, 5}};
  const auto s = controlled_shuffle(cycle, u, DegreeBinning{}, 3);
  CHECK(s.bins.size() == 1);
  CHECK(s.bins[0].nodes == 5);
  CHECK(sorted(s.table.values) == u.values);
  bool moved = false;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    moved = moved || controlled_shuffle(cycle, u, DegreeBinning{}, seed).table.values != u.values;
  }
  CHECK(moved);
  CHECK_THROWS_AS(controlled_shuffle(cycle, AttributeTable{"x", {1}}, DegreeBinning{}, 0),
                  ReferenceError);
}

TEST_CASE("controlled shuffle of a degree function keeps the within-node correlation") {
  const auto& g = medium_network().graph;
  AttributeTable sq{"sq", {}};
  for (auto d : g.degrees(Direction::Out)) sq.values.push_back(double(d) * double(d));
  const double before = within_node_correlation(g, sq).r;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto after = within_node_correlation(g, controlled_shuffle(g, sq, {}, seed).table).r;
    CHECK(std::abs(after - before) < 0.01);
  }
}

TEST_CASE("degree as attribute") {
  std::string text;
  for (int i = 0; i < 6; ++i) text += "hub s" + std::to_string(i) + "\n";
  const auto star = parse(text);
  const auto out = degree_as_attribute(star, Direction::Out);
  CHECK(out.name == "friend_count");
  CHECK(out.values[*star.find("hub")] == 6.0);
  const auto in = degree_as_attribute(star, Direction::In);
  CHECK(in.name == "follower_count");
  CHECK(std::accumulate(out.values.begin(), out.values.end(), 0.0) == star.edge_count());
  CHECK(std::accumulate(in.values.begin(), in.values.end(), 0.0) == star.edge_count());
}

TEST_CASE("karate: shuffled friend counts lose the strong paradox") {
  const auto g = karate_club();
  const auto deg = degree_as_attribute(g, Direction::Out);
  double sum = 0;
  const int runs = 100;
  for (int r = 0; r < runs; ++r) {
    const auto s = full_shuffle(deg, run_seed(77, r));
    sum += paradox_fraction(g, s.table, NeighborRelation::Friends, ParadoxStat::Median).fraction;
  }
  const double avg = sum / runs;
  MESSAGE("average shuffled median fraction: " << avg);
  CHECK(avg <= 0.5 + 0.05);
  CHECK(avg < 26.0 / 34.0);
}

TEST_CASE("shuffle experiment report") {
  const auto g = karate_club();
  const auto skill = rank_matched_attribute(g, std::nullopt, 1);
  ExperimentConfig cfg;
  cfg.runs = 4;
  cfg.seed = 123;
  cfg.relations = {NeighborRelation::Friends, NeighborRelation::Followers};
  const auto rep = shuffle_experiment(g, skill, cfg);
  CHECK(rep.attribute == "skill");
  REQUIRE(rep.baseline.paradoxes.size() == 4);
  CHECK(rep.baseline.paradoxes[0].relation == NeighborRelation::Friends);
  CHECK(rep.baseline.paradoxes[1].stat == ParadoxStat::Median);
  CHECK(rep.baseline.paradoxes[2].relation == NeighborRelation::Followers);
  REQUIRE(rep.runs.size() == 4);
  REQUIRE(rep.paradox_aggregates.size() == 4);

  double sum = 0;
  for (const auto& m : rep.runs) sum += m.paradoxes[0].fraction;
  CHECK(rep.paradox_aggregates[0].mean == doctest::Approx(sum / 4));
  CHECK(rep.paradox_aggregates[0].defined_runs == 4);
  CHECK(rep.within_node_aggregate.std_error > 0);

  // Run i equals a standalone shuffle with the same sub-seed.
  const auto s2 = full_shuffle(skill, run_seed(123, 2));
  CHECK(rep.runs[2].within_node.r == within_node_correlation(g, s2.table).r);

  cfg.runs = 2;
  const auto a = shuffle_experiment(g, skill, cfg);
  const auto b = shuffle_experiment(g, skill, cfg);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(a.runs[i].paradoxes[k].nodes_in_paradox == b.runs[i].paradoxes[k].nodes_in_paradox);
    }
    CHECK(a.runs[i].assortativity.r == b.runs[i].assortativity.r);
    CHECK(a.runs[i].within_node.r == b.runs[i].within_node.r);
  }
  cfg.runs = 1;
  CHECK(std::isnan(shuffle_experiment(g, skill, cfg).within_node_aggregate.std_error));
  cfg.runs = 0;
  CHECK_THROWS_AS(shuffle_experiment(g, skill, cfg), SizeError);
}

TEST_CASE("shuffles on a planted assortative network") {
  const auto& net = medium_network();
  const auto& g = net.graph;
  const auto base_w = within_node_correlation(g, net.attribute).r;
  const auto base_a = attribute_assortativity(g, net.attribute).r;
  MESSAGE("planted: N=" << g.node_count() << " E=" << g.edge_count() << " within=" << base_w
                        << " assort=" << base_a);
  CHECK(base_w >= 0.2);
  CHECK(base_a >= 0.15);

  double full_w = 0, full_a = 0, ctrl_w = 0, ctrl_a = 0;
  const int runs = 10;
  for (int r = 0; r < runs; ++r) {
    const auto f = full_shuffle(net.attribute, run_seed(1, r)).table;
    full_w += within_node_correlation(g, f).r / runs;
    full_a += attribute_assortativity(g, f).r / runs;
    const auto c = controlled_shuffle(g, net.attribute, {}, run_seed(2, r)).table;
    ctrl_w += within_node_correlation(g, c).r / runs;
    ctrl_a += attribute_assortativity(g, c).r / runs;
  }
  CHECK(std::abs(full_w) < 0.02);
  CHECK(std::abs(full_a) < 0.02);
  CHECK(std::abs(ctrl_w - base_w) < 0.05);
  CHECK(std::abs(ctrl_a) < 0.5 * std::abs(base_a));
}

TEST_CASE("full shuffle over 50 runs on a 1e5-node network kills both correlations") {
  PlantedNetworkConfig cfg;
  cfg.seed = 50;
  const auto net = planted_assortative_network(cfg);
  double abs_w = 0, abs_a = 0;
  const int runs = 50;
  for (int r = 0; r < runs; ++r) {
    const auto t = full_shuffle(net.attribute, run_seed(3, r)).table;
    abs_w += std::abs(within_node_correlation(net.graph, t).r) / runs;
    abs_a += std::abs(attribute_assortativity(net.graph, t).r) / runs;
  }
  CHECK(abs_w < 0.01);
  CHECK(abs_a < 0.01);
}
