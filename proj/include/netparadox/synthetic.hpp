#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "netparadox/attributes.hpp"
#include "netparadox/distributions.hpp"
#include "netparadox/graph.hpp"

namespace netparadox {

/// Directed graph on n nodes where node u follows round(d_u) others chosen
/// uniformly without replacement, d_u ~ degree_dist clamped to [1, n-1].
DirectedGraph random_out_degree_graph(std::size_t n, const DistributionSpec& degree_dist,
                                      std::uint64_t seed);

/// n iid draws from dist; each value is replaced by 0 with probability
/// zero_fraction.
AttributeTable iid_attribute(std::size_t n, const DistributionSpec& dist, std::uint64_t seed,
                             double zero_fraction = 0.0, std::string name = "iid");

/// Knobs for planted_assortative_network(). The defaults give roughly 1.7M
/// edges on 1e5 nodes with attribute assortativity near 0.3 and within-node
/// correlation between 0.4 and 0.5, most of the assortativity coming from
/// the noise term rather than from degree.
struct PlantedNetworkConfig {
  std::size_t nodes = 100000;
  /// Intended friend counts: round(degree_min * U^(-1/degree_alpha)).
  double degree_alpha = 2.5;
  double degree_min = 10.0;
  /// Attribute = floor(friend_count * exp(attribute_noise * Z)), Z ~ N(0,1).
  double attribute_noise = 1.0;
  /// Share of follow edges aimed at nodes of similar attribute rank; the
  /// rest go to uniformly random nodes.
  double local_fraction = 0.9;
  /// Std-dev of the rank offset for local edges, as a fraction of N.
  double local_width = 0.002;
  /// Mean rank offset for local edges, as a fraction of N. Positive values
  /// make friends tend to rank above the follower.
  double upward_drift = 0.0;
  std::uint64_t seed = 0;
};

struct PlantedNetwork {
  DirectedGraph graph;
  AttributeTable attribute;  ///< named "planted"
};

/// Heavy-tailed network with an integer attribute that is both correlated
/// with friend count and assortative along edges.
PlantedNetwork planted_assortative_network(const PlantedNetworkConfig& config);

}  // namespace netparadox
