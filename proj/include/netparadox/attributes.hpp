#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netparadox/graph.hpp"

namespace netparadox {

/// One non-negative, finite value per node of a graph, indexed by NodeId.
struct AttributeTable {
  std::string name;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](NodeId u) const { return values[u]; }
};

/// Checks finiteness and non-negativity; throws ValidationError.
void validate(const AttributeTable& attr);

/// Throws ReferenceError unless attr has exactly one value per node of g.
void require_coverage(const DirectedGraph& g, const AttributeTable& attr);

/// Restricts a table to the nodes kept by induced_subgraph().
AttributeTable restrict_to(const AttributeTable& attr,
                           const std::vector<std::optional<NodeId>>& old_to_new,
                           std::size_t new_node_count);

struct CoverageReport {
  std::size_t covered = 0;  ///< nodes with a value in the file
  std::size_t total = 0;    ///< nodes in the graph
  bool complete() const noexcept { return covered == total; }
};

/// Reads "id,value" lines (optional `id,value` header). Nodes missing from
/// the file get 0 and are reported through `coverage`.
/// Throws ValidationError for negative, non-finite or unparsable values and
/// duplicate ids, ReferenceError for ids not in the graph.
AttributeTable load_attribute(std::istream& in, std::string name, const DirectedGraph& g,
                              CoverageReport* coverage = nullptr);
AttributeTable load_attribute_file(const std::string& path, std::string name,
                                   const DirectedGraph& g, CoverageReport* coverage = nullptr);

enum class Action { Post, Repost };

struct EventRecord {
  std::uint64_t time = 0;
  std::string actor;
  Action action = Action::Post;
  std::string item;
};

/// Events ordered by time (ties keep file order).
struct EventLog {
  std::vector<EventRecord> records;
  /// Repost events whose item has no Post event anywhere in the log.
  std::size_t orphan_reposts = 0;
};

/// Stable-sorts by time and recounts orphan reposts.
EventLog make_event_log(std::vector<EventRecord> records);

/// Parses `time,actor,action,item` CSV (header required; action is
/// `post` or `repost`). Throws ParseError with the line number.
EventLog read_event_log(std::istream& in);
EventLog read_event_log_file(const std::string& path);

struct DerivationStats {
  std::size_t unresolved_events = 0;  ///< events whose actor is not a graph node
};

/// Number of Post and Repost events by each node.
AttributeTable derive_activity(const EventLog& log, const DirectedGraph& g,
                               DerivationStats* stats = nullptr);

/// Number of distinct items posted or reposted by the node's friends.
AttributeTable derive_diversity(const EventLog& log, const DirectedGraph& g,
                                DerivationStats* stats = nullptr);

enum class ViralityMode { Posted, Received };
enum class Aggregator { Mean, Max, Sum };

/// Item virality is the number of Repost events on the item. Posted: the
/// aggregate over distinct items the node posted. Received: the aggregate over
/// distinct items its friends posted or reposted. Nodes with no items get 0.
AttributeTable derive_virality(const EventLog& log, const DirectedGraph& g, ViralityMode mode,
                               Aggregator agg = Aggregator::Mean,
                               DerivationStats* stats = nullptr);

/// Assigns the sorted sample to nodes in descending-degree order (ties by
/// ascending NodeId), so the largest value lands on the highest-degree node.
/// Without a sample, draws N values uniformly from [1, 20) using `seed`.
/// Throws SizeError if the sample size differs from N.
AttributeTable rank_matched_attribute(const DirectedGraph& g,
                                      std::optional<std::vector<double>> sample,
                                      std::uint64_t seed, Direction dir = Direction::Out,
                                      std::string name = "skill");

}  // namespace netparadox
