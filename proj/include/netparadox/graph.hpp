#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace netparadox {

/// Dense node index, contiguous in [0, node_count()).
using NodeId = std::uint32_t;

/// Out: the nodes u follows (its friends). In: the nodes following u (its followers).
enum class Direction { Out, In };

const char* to_string(Direction d) noexcept;

struct IngestStats {
  std::size_t edge_lines = 0;   ///< edge records seen, including dropped ones
  std::size_t self_loops = 0;   ///< dropped
  std::size_t duplicates = 0;   ///< collapsed
};

/// Immutable directed graph stored as two CSR arrays (out and in). An edge
/// (u, v) means "u follows v". Neighbor lists are sorted by NodeId.
///
/// Safe for concurrent reads once built.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  std::size_t node_count() const noexcept { return external_ids_.size(); }
  std::size_t edge_count() const noexcept { return out_targets_.size(); }

  /// Out-neighbors of u. Throws std::out_of_range if u >= node_count().
  std::span<const NodeId> friends(NodeId u) const;
  /// In-neighbors of u. Throws std::out_of_range if u >= node_count().
  std::span<const NodeId> followers(NodeId u) const;
  std::span<const NodeId> neighbors(NodeId u, Direction dir) const {
    return dir == Direction::Out ? friends(u) : followers(u);
  }
  std::size_t degree(NodeId u, Direction dir) const { return neighbors(u, dir).size(); }

  /// Degree of every node in one direction, indexed by NodeId.
  std::vector<std::size_t> degrees(Direction dir) const;

  const std::string& external_id(NodeId u) const;
  std::optional<NodeId> find(std::string_view external) const;

  /// All edges ordered by (source, target).
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  /// Unchecked CSR access for hot loops.
  std::span<const std::size_t> out_offsets() const noexcept { return out_offsets_; }
  std::span<const NodeId> out_targets() const noexcept { return out_targets_; }
  std::span<const std::size_t> in_offsets() const noexcept { return in_offsets_; }
  std::span<const NodeId> in_sources() const noexcept { return in_sources_; }

 private:
  friend class GraphBuilder;

  void check(NodeId u) const;

  std::vector<std::size_t> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<NodeId> in_sources_;
  std::vector<std::string> external_ids_;
  std::unordered_map<std::string, NodeId> index_;
};

/// Accumulates nodes and edges, then freezes them into a DirectedGraph.
/// NodeIds are assigned in order of first appearance.
class GraphBuilder {
 public:
  NodeId add_node(std::string_view external);
  /// Registers both endpoints. Self-loops are dropped and counted.
  void add_edge(std::string_view src, std::string_view dst);
  void add_edge(NodeId src, NodeId dst);

  std::size_t node_count() const noexcept { return external_ids_.size(); }

  /// Sorts, deduplicates and builds both adjacency directions.
  DirectedGraph build(IngestStats* stats = nullptr) &&;

 private:
  std::vector<std::string> external_ids_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::size_t edge_records_ = 0;
  std::size_t self_loops_ = 0;
};

/// Builds a graph on nodes 0..n-1 (external ids are their decimal indices).
DirectedGraph graph_from_indexed_edges(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges,
                                       IngestStats* stats = nullptr);

/// Builds a graph from (source, target) external-id pairs.
DirectedGraph graph_from_edge_pairs(std::span<const std::pair<std::string, std::string>> pairs,
                                    IngestStats* stats = nullptr);

/// Parses edge-list text: one "src dst" pair per line, whitespace separated,
/// '#' comment lines and blank lines ignored.
/// Throws ParseError (with line number) on malformed lines and
/// EmptyInputError when the input holds no edges.
DirectedGraph read_edge_list(std::istream& in, IngestStats* stats = nullptr);
DirectedGraph read_edge_list_file(const std::string& path, IngestStats* stats = nullptr);

/// Writes the edge set as "src dst" lines using external ids.
void write_edge_list(std::ostream& out, const DirectedGraph& g);

/// Subgraph induced by nodes with keep[u] true. `old_to_new`, when given,
/// receives the new NodeId of each kept node (absent for dropped ones).
DirectedGraph induced_subgraph(const DirectedGraph& g, const std::vector<bool>& keep,
                               std::vector<std::optional<NodeId>>* old_to_new = nullptr);

/// Zachary's karate club (34 nodes, 78 ties). Every tie is stored in both
/// directions, so friends(u) == followers(u). External ids are "1".."34" and
/// NodeId = id - 1.
DirectedGraph karate_club();

/// The bundled karate club edge file, verbatim (one line per undirected tie).
std::string_view karate_club_edge_text();

}  // namespace netparadox
