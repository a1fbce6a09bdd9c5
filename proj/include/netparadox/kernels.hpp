#pragma once

// Hot loops behind the public metrics. The default versions run under
// OpenMP; the `serial` namespace holds straightforward single-threaded
// reference implementations used by the tests and the benchmark.
//
// Parallel floating-point reductions use a fixed block decomposition that
// does not depend on the thread count, so results are bit-identical for any
// --threads setting.

#include <span>

#include "netparadox/graph.hpp"
#include "netparadox/types.hpp"

namespace netparadox::kernels {

/// Items per block in the deterministic reductions.
inline constexpr std::size_t kBlock = 4096;

/// Counts nodes whose neighbor summary strictly exceeds their own value.
ParadoxCount count_paradox(const DirectedGraph& g, std::span<const double> values,
                           NeighborRelation relation, ParadoxStat stat);

/// Per-node verdicts (1 = in paradox, 0 = not, -1 = no neighbors).
std::vector<signed char> paradox_verdicts(const DirectedGraph& g, std::span<const double> values,
                                          NeighborRelation relation, ParadoxStat stat);

/// Pearson over paired samples. Throws SizeError on length mismatch or n < 2.
PearsonResult pearson(std::span<const double> xs, std::span<const double> ys);

/// Pearson over the edge set: pairs (src_values[u], dst_values[v]) for every
/// edge u -> v. Throws SizeError if E < 2.
PearsonResult edge_pearson(const DirectedGraph& g, std::span<const double> src_values,
                           std::span<const double> dst_values);

namespace serial {

ParadoxCount count_paradox(const DirectedGraph& g, std::span<const double> values,
                           NeighborRelation relation, ParadoxStat stat);

PearsonResult pearson(std::span<const double> xs, std::span<const double> ys);

PearsonResult edge_pearson(const DirectedGraph& g, std::span<const double> src_values,
                           std::span<const double> dst_values);

}  // namespace serial

}  // namespace netparadox::kernels
