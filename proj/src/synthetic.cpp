#include "netparadox/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "netparadox/errors.hpp"

namespace netparadox {

namespace {

std::size_t clamp_degree(double x, std::size_t n) {
  const double hi = static_cast<double>(n - 1);
  return static_cast<std::size_t>(std::clamp(std::round(x), 1.0, hi));
}

// Floyd's algorithm: k distinct ids from [0, n) \ {self}, ascending.
std::vector<NodeId> sample_others(std::size_t n, NodeId self, std::size_t k, Engine& eng) {
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(k * 2);
  const std::uint64_t m = n - 1;
  for (std::uint64_t j = m - k; j < m; ++j) {
    const auto t = uniform_index(eng, j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<NodeId> out;
  out.reserve(k);
  for (auto c : chosen) out.push_back(static_cast<NodeId>(c >= self ? c + 1 : c));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

DirectedGraph random_out_degree_graph(std::size_t n, const DistributionSpec& degree_dist,
                                      std::uint64_t seed) {
  if (n < 2) throw SizeError("random graph needs at least 2 nodes");
  auto eng = make_engine(seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < n; ++u) {
    const auto k = clamp_degree(degree_dist.draw(eng), n);
    for (NodeId v : sample_others(n, u, k, eng)) edges.emplace_back(u, v);
  }
  return graph_from_indexed_edges(n, std::move(edges));
}

AttributeTable iid_attribute(std::size_t n, const DistributionSpec& dist, std::uint64_t seed,
                             double zero_fraction, std::string name) {
  if (!(zero_fraction >= 0.0 && zero_fraction < 1.0)) {
    throw SpecError("zero_fraction must be in [0, 1)");
  }
  auto eng = make_engine(seed);
  AttributeTable t{std::move(name), std::vector<double>(n)};
  for (auto& v : t.values) {
    const double x = dist.draw(eng);
    v = uniform_open01(eng) < zero_fraction ? 0.0 : x;
  }
  return t;
}

PlantedNetwork planted_assortative_network(const PlantedNetworkConfig& c) {
  const std::size_t n = c.nodes;
  if (n < 2) throw SizeError("planted network needs at least 2 nodes");
  if (!(c.local_fraction >= 0.0 && c.local_fraction <= 1.0)) {
    throw SpecError("local_fraction must be in [0, 1]");
  }
  const auto degree_dist = DistributionSpec::pareto(c.degree_alpha, c.degree_min);
  auto eng = make_engine(c.seed);

  std::vector<std::size_t> want(n);
  std::vector<double> attr(n);
  for (std::size_t u = 0; u < n; ++u) {
    want[u] = clamp_degree(degree_dist.draw(eng), n);
    attr[u] = std::floor(static_cast<double>(want[u]) *
                         std::exp(c.attribute_noise * standard_normal(eng)));
  }

  // Attribute rank order (ties by id) used to aim local edges.
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return attr[a] < attr[b]; });
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;

  const double nn = static_cast<double>(n);
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<NodeId> picked;
  for (NodeId u = 0; u < n; ++u) {
    picked.clear();
    // Bounded retries keep generation finite when a neighborhood saturates.
    for (std::size_t attempts = 0; picked.size() < want[u] && attempts < 20 * want[u]; ++attempts) {
      NodeId v;
      if (uniform_open01(eng) < c.local_fraction) {
        const double offset = (c.local_width * standard_normal(eng) + c.upward_drift) * nn;
        const double r = std::clamp(static_cast<double>(rank[u]) + std::round(offset), 0.0, nn - 1.0);
        v = order[static_cast<std::size_t>(r)];
      } else {
        v = static_cast<NodeId>(uniform_index(eng, n));
      }
      if (v == u || std::find(picked.begin(), picked.end(), v) != picked.end()) continue;
      picked.push_back(v);
    }
    for (NodeId v : picked) edges.emplace_back(u, v);
  }
  return {graph_from_indexed_edges(n, std::move(edges)), AttributeTable{"planted", std::move(attr)}};
}

}  // namespace netparadox
