#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "netparadox/attributes.hpp"
#include "netparadox/correlations.hpp"
#include "netparadox/graph.hpp"
#include "netparadox/paradox.hpp"

namespace netparadox {

/// Log bins over friend count: degree 0 is bin 0, degree d >= 1 falls in
/// bin 1 + floor(bins_per_decade * log10(d)).
struct DegreeBinning {
  int bins_per_decade = 10;

  std::size_t bin_of(std::size_t degree) const;
  /// Smallest and largest degree mapped to `bin`.
  std::pair<std::size_t, std::size_t> degree_range(std::size_t bin) const;
};

enum class ShuffleKind { Full, Controlled };

const char* to_string(ShuffleKind k) noexcept;

struct BinOccupancy {
  std::size_t bin = 0;
  std::size_t degree_lo = 0;
  std::size_t degree_hi = 0;
  std::size_t nodes = 0;
};

struct ShuffleOutcome {
  AttributeTable table;
  ShuffleKind kind = ShuffleKind::Full;
  std::uint64_t seed = 0;
  std::vector<BinOccupancy> bins;  ///< non-empty bins; Controlled only
};

/// Uniform random permutation of the values over all nodes.
/// Throws EmptyInputError for an empty table.
ShuffleOutcome full_shuffle(const AttributeTable& attr, std::uint64_t seed);

/// Independent uniform permutation inside every friend-count bin; values
/// never cross bins.
ShuffleOutcome controlled_shuffle(const DirectedGraph& g, const AttributeTable& attr,
                                  const DegreeBinning& binning, std::uint64_t seed);

/// Degree used as an ordinary node attribute ("friend_count" for Out,
/// "follower_count" for In).
AttributeTable degree_as_attribute(const DirectedGraph& g, Direction dir);

struct ExperimentConfig {
  ShuffleKind kind = ShuffleKind::Full;
  std::size_t runs = 10;
  std::uint64_t seed = 0;
  DegreeBinning binning;
  std::vector<NeighborRelation> relations{NeighborRelation::Friends};
  std::vector<ParadoxStat> stats{ParadoxStat::Mean, ParadoxStat::Median};
};

/// Everything measured on one attribute table (baseline or one shuffle).
struct Measurement {
  std::vector<ParadoxReport> paradoxes;  ///< relations x stats, relation-major
  CorrelationReport within_node;
  CorrelationReport assortativity;
};

struct Aggregate {
  double mean = 0.0;
  double std_error = 0.0;  ///< NaN with a single run
  std::size_t defined_runs = 0;
};

struct ShuffleExperimentReport {
  std::string attribute;
  ExperimentConfig config;
  Measurement baseline;
  std::vector<Measurement> runs;
  /// Aligned with Measurement::paradoxes: fraction mean and standard error.
  std::vector<Aggregate> paradox_aggregates;
  Aggregate within_node_aggregate;
  Aggregate assortativity_aggregate;
};

/// Measures paradoxes and correlations on attr, then on `runs` shuffles of
/// it drawn from per-run sub-seeds of config.seed. Runs execute in parallel;
/// the report does not depend on the schedule.
/// Throws SizeError when runs == 0.
ShuffleExperimentReport shuffle_experiment(const DirectedGraph& g, const AttributeTable& attr,
                                           const ExperimentConfig& config);

/// Sub-seed used for shuffle run `run` of an experiment seeded with `master`.
std::uint64_t run_seed(std::uint64_t master, std::size_t run);

}  // namespace netparadox
