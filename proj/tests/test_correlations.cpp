#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "netparadox/correlations.hpp"
#include "netparadox/errors.hpp"
#include "netparadox/null_models.hpp"
#include "oracles.hpp"

using namespace netparadox;

namespace {

DirectedGraph parse(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

DirectedGraph random_graph(std::size_t n, std::size_t m, std::mt19937_64& rng) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t i = 0; i < m; ++i) {
    edges.emplace_back(static_cast<NodeId>(rng() % n), static_cast<NodeId>(rng() % n));
  }
  return graph_from_indexed_edges(n, edges);
}

}  // namespace

TEST_CASE("pearson examples") {
  const std::vector<double> a{1, 2, 3}, b{3, 2, 1};
  CHECK(pearson(a, a).r == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pearson(a, b).r == doctest::Approx(-1.0).epsilon(1e-15));
  const std::vector<double> x{1, 2, 3, 4}, y{1, 3, 2, 4};
  const auto r = pearson(x, y);
  CHECK(r.defined);
  CHECK(r.n == 4);
  CHECK(r.r == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("pearson degenerate input") {
  const std::vector<double> flat{2, 2, 2}, a{1, 2, 3};
  const auto r = pearson(flat, a);
  CHECK_FALSE(r.defined);
  CHECK(std::isnan(r.r));
  CHECK(r.n == 3);
  CHECK_FALSE(pearson(a, flat).defined);
  const std::vector<double> two{1, 2};
  CHECK_THROWS_AS(pearson(a, two), SizeError);
  const std::vector<double> one{1};
  CHECK_THROWS_AS(pearson(one, one), SizeError);
}

TEST_CASE("pearson affine invariance and oracle agreement") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> coef(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 500;
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = z(rng);
      ys[i] = 0.3 * xs[i] + z(rng);
    }
    const double base = pearson(xs, ys).r;
    CHECK(base == doctest::Approx(oracle::pearson(xs, ys)).epsilon(1e-9));
    double a = coef(rng), c = coef(rng);
    if (std::abs(a) < 1e-3) a = 1;
    if (std::abs(c) < 1e-3) c = -1;
    const double b = coef(rng) * 100, d = coef(rng) * 100;
    std::vector<double> xt(n), yt(n);
    for (std::size_t i = 0; i < n; ++i) {
      xt[i] = a * xs[i] + b;
      yt[i] = c * ys[i] + d;
    }
    const double sign = (a * c > 0) ? 1.0 : -1.0;
    CHECK(std::abs(pearson(xt, yt).r - sign * base) < 1e-9);
    CHECK(std::abs(base) <= 1.0);
  }
}

TEST_CASE("pearson stays stable on large offsets") {
  // The two-pass form survives a mean far from zero.
  std::vector<double> xs, ys;
  for (int i = 0; i < 10000; ++i) {
    xs.push_back(1e9 + i % 7);
    ys.push_back(1e9 + (i % 7) * 2.0 + (i % 3));
  }
  std::vector<double> xc(xs), yc(ys);
  for (auto& v : xc) v -= 1e9;
  for (auto& v : yc) v -= 1e9;
  CHECK(std::abs(pearson(xs, ys).r - pearson(xc, yc).r) < 1e-9);
}

TEST_CASE("within-node correlation") {
  const auto star_plus = parse("a b\na c\na d\nb c\nc a\n");
  const auto deg = degree_as_attribute(star_plus, Direction::Out);
  const auto self = within_node_correlation(star_plus, deg);
  CHECK(self.kind == CorrelationKind::WithinNode);
  CHECK(self.r == doctest::Approx(1.0));
  CHECK(self.n == 4);

  const auto k = karate_club();
  // Evenly spaced quantiles of U[1, 20): the expected sample, rank matched.
  std::vector<double> quantiles;
  for (int i = 0; i < 34; ++i) quantiles.push_back(1.0 + 19.0 * (i + 0.5) / 34);
  const auto r = within_node_correlation(k, rank_matched_attribute(k, quantiles, 0));
  CHECK(r.defined);
  CHECK(r.r > 0.8);
  CHECK(r.attribute == "skill");
  // Random draws scatter around that value.
  double sum = 0, lowest = 1;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const double x = within_node_correlation(k, rank_matched_attribute(k, std::nullopt, seed)).r;
    sum += x;
    lowest = std::min(lowest, x);
  }
  CHECK(sum / 300 == doctest::Approx(0.795).epsilon(0.02));
  CHECK(lowest > 0.6);

  const auto one = graph_from_indexed_edges(1, {});
  CHECK_THROWS_AS(within_node_correlation(one, AttributeTable{"x", {1}}), SizeError);
  CHECK_THROWS_AS(within_node_correlation(k, AttributeTable{"x", {1, 2}}), ReferenceError);
}

TEST_CASE("attribute assortativity") {
  const auto g = parse("a b\nb c\nc a\nx y\ny z\nz x\n");
  AttributeTable flat{"flat", std::vector<double>(6, 1.0)};
  CHECK_FALSE(attribute_assortativity(g, flat).defined);

  // Two communities, edges only inside each.
  AttributeTable side{"side", std::vector<double>(6)};
  for (NodeId u = 0; u < 6; ++u) side.values[u] = g.external_id(u)[0] >= 'x' ? 1.0 : 0.0;
  const auto r = attribute_assortativity(g, side);
  CHECK(r.defined);
  CHECK(r.r == doctest::Approx(1.0));
  CHECK(r.n == 6);

  const auto single = parse("a b\n");
  CHECK_THROWS_AS(attribute_assortativity(single, AttributeTable{"x", {1, 2}}), SizeError);
}

TEST_CASE("assortativity equals pearson on materialized endpoint lists") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0, 10);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 10 + rng() % 990;
    const auto g = random_graph(n, 2 + rng() % 9998, rng);
    AttributeTable a{"a", std::vector<double>(n)};
    for (auto& v : a.values) v = std::floor(u(rng));
    std::vector<double> src, dst;
    for (const auto& [s, d] : g.edges()) {
      src.push_back(a.values[s]);
      dst.push_back(a.values[d]);
    }
    if (src.size() < 2) continue;
    const auto r = attribute_assortativity(g, a);
    CHECK(r.n == src.size());
    CHECK(r.r == doctest::Approx(oracle::pearson(src, dst)).epsilon(1e-9));
  }
}

TEST_CASE("symmetric graphs: reversing every edge leaves assortativity unchanged") {
  const auto k = karate_club();
  std::vector<std::pair<NodeId, NodeId>> reversed;
  for (const auto& [s, d] : k.edges()) reversed.emplace_back(d, s);
  const auto rk = graph_from_indexed_edges(k.node_count(), reversed);
  const auto skill = rank_matched_attribute(k, std::nullopt, 9);
  CHECK(attribute_assortativity(k, skill).r ==
        doctest::Approx(attribute_assortativity(rk, skill).r).epsilon(1e-12));
  const auto d = degree_assortativity(k);
  CHECK(d.r < 0);  // the club is disassortative by degree
  CHECK(d.r == doctest::Approx(degree_assortativity(rk).r).epsilon(1e-12));
}

TEST_CASE("degree assortativity") {
  CHECK_FALSE(degree_assortativity(parse("a b\nb c\nc d\nd a\n")).defined);
  // 2-regular directed graph.
  CHECK_FALSE(degree_assortativity(parse("a b\na c\nb c\nb a\nc a\nc b\n")).defined);

  std::string text;
  for (int i = 0; i < 5; ++i) {
    text += "c s" + std::to_string(i) + "\ns" + std::to_string(i) + " c\n";
  }
  const auto star = parse(text);
  const auto r = degree_assortativity(star, Direction::Out, Direction::Out);
  CHECK(r.defined);
  CHECK(r.r == doctest::Approx(-1.0));
  CHECK(r.attribute == "friend_count");
  CHECK(degree_assortativity(star, Direction::In, Direction::In).attribute == "follower_count");
  const auto mixed = degree_assortativity(star, Direction::Out, Direction::In);
  CHECK(mixed.attribute == "degree_out_in");
  CHECK(mixed.src_dir == Direction::Out);
  CHECK(mixed.dst_dir == Direction::In);

  // Oracle check on a random directed graph with mixed directions.
  std::mt19937_64 rng(3);
  const auto g = random_graph(300, 2000, rng);
  std::vector<double> src, dst;
  for (const auto& [s, d] : g.edges()) {
    src.push_back(double(g.degree(s, Direction::In)));
    dst.push_back(double(g.degree(d, Direction::Out)));
  }
  CHECK(degree_assortativity(g, Direction::In, Direction::Out).r ==
        doctest::Approx(oracle::pearson(src, dst)).epsilon(1e-9));
}
