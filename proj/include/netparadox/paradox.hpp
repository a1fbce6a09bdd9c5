#pragma once

#include <span>
#include <string>
#include <vector>

#include "netparadox/attributes.hpp"
#include "netparadox/graph.hpp"
#include "netparadox/types.hpp"

namespace netparadox {

/// Mean, or median with even-length samples taking the midpoint of the
/// central pair. Throws EmptyInputError on an empty sample.
double neighbor_summary(std::span<const double> values, ParadoxStat stat);

/// True iff the neighbor summary strictly exceeds `own`; ties are not paradoxical.
bool node_in_paradox(double own, std::span<const double> neighbor_values, ParadoxStat stat);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// Wilson score interval for a binomial proportion.
/// Throws EmptyInputError for n == 0, std::invalid_argument for bad input.
Interval proportion_ci(std::size_t successes, std::size_t n, double level = 0.95);

struct ParadoxReport {
  std::string attribute;
  NeighborRelation relation = NeighborRelation::Friends;
  ParadoxStat stat = ParadoxStat::Mean;
  std::size_t nodes_evaluated = 0;
  std::size_t nodes_in_paradox = 0;
  std::size_t nodes_excluded = 0;
  double fraction = 0.0;  ///< NaN when no node was evaluated
  double ci_low = 0.0;
  double ci_high = 0.0;
};

/// Fraction of nodes (with at least one neighbor under `relation`) whose
/// neighbors' summary of attr exceeds their own value.
/// Throws ReferenceError when attr does not cover the graph.
ParadoxReport paradox_fraction(const DirectedGraph& g, const AttributeTable& attr,
                               NeighborRelation relation, ParadoxStat stat, double level = 0.95);

/// The directed friendship paradoxes: {friend_count, follower_count} as the
/// compared value, traversed over {Friends, Followers}, each under Mean and
/// Median. Order: attribute-major, then relation, then stat.
std::vector<ParadoxReport> friendship_paradox_suite(const DirectedGraph& g, double level = 0.95);

}  // namespace netparadox
