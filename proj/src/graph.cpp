#include "netparadox/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "netparadox/errors.hpp"

namespace netparadox {

namespace detail {
extern const std::string_view kKarateClubEdges;
}

const char* to_string(Direction d) noexcept { return d == Direction::Out ? "out" : "in"; }

void DirectedGraph::check(NodeId u) const {
  if (u >= node_count()) {
    throw std::out_of_range("node " + std::to_string(u) + " out of range (N=" +
                            std::to_string(node_count()) + ")");
  }
}

std::span<const NodeId> DirectedGraph::friends(NodeId u) const {
  check(u);
  return {out_targets_.data() + out_offsets_[u], out_targets_.data() + out_offsets_[u + 1]};
}

std::span<const NodeId> DirectedGraph::followers(NodeId u) const {
  check(u);
  return {in_sources_.data() + in_offsets_[u], in_sources_.data() + in_offsets_[u + 1]};
}

std::vector<std::size_t> DirectedGraph::degrees(Direction dir) const {
  const auto& offsets = dir == Direction::Out ? out_offsets_ : in_offsets_;
  std::vector<std::size_t> deg(node_count());
  for (std::size_t u = 0; u < deg.size(); ++u) deg[u] = offsets[u + 1] - offsets[u];
  return deg;
}

const std::string& DirectedGraph::external_id(NodeId u) const {
  check(u);
  return external_ids_[u];
}

std::optional<NodeId> DirectedGraph::find(std::string_view external) const {
  auto it = index_.find(std::string(external));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<NodeId, NodeId>> DirectedGraph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (std::size_t i = out_offsets_[u]; i < out_offsets_[u + 1]; ++i) {
      out.emplace_back(u, out_targets_[i]);
    }
  }
  return out;
}

NodeId GraphBuilder::add_node(std::string_view external) {
  auto [it, inserted] = index_.try_emplace(std::string(external), 0);
  if (inserted) {
    it->second = static_cast<NodeId>(external_ids_.size());
    external_ids_.emplace_back(external);
  }
  return it->second;
}

void GraphBuilder::add_edge(std::string_view src, std::string_view dst) {
  const NodeId s = add_node(src);
  const NodeId d = add_node(dst);
  add_edge(s, d);
}

void GraphBuilder::add_edge(NodeId src, NodeId dst) {
  ++edge_records_;
  if (src == dst) {
    ++self_loops_;
    return;
  }
  edges_.emplace_back(src, dst);
}

namespace {

// Fills CSR offsets/columns from edges sorted by the key endpoint.
void fill_csr(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& sorted, bool by_source,
              std::vector<std::size_t>& offsets, std::vector<NodeId>& cols) {
  offsets.assign(n + 1, 0);
  cols.resize(sorted.size());
  for (const auto& [s, d] : sorted) ++offsets[(by_source ? s : d) + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cols[i] = by_source ? sorted[i].second : sorted[i].first;
  }
}

}  // namespace

DirectedGraph GraphBuilder::build(IngestStats* stats) && {
  std::sort(edges_.begin(), edges_.end());
  const auto before = edges_.size();
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  if (stats) {
    stats->edge_lines = edge_records_;
    stats->self_loops = self_loops_;
    stats->duplicates = before - edges_.size();
  }

  DirectedGraph g;
  const std::size_t n = external_ids_.size();
  fill_csr(n, edges_, true, g.out_offsets_, g.out_targets_);

  std::sort(edges_.begin(), edges_.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });
  fill_csr(n, edges_, false, g.in_offsets_, g.in_sources_);

  g.external_ids_ = std::move(external_ids_);
  g.index_ = std::move(index_);
  return g;
}

DirectedGraph graph_from_indexed_edges(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges,
                                       IngestStats* stats) {
  GraphBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_node(std::to_string(i));
  for (const auto& [s, d] : edges) {
    if (s >= n || d >= n) throw std::out_of_range("edge endpoint out of range");
    b.add_edge(s, d);
  }
  return std::move(b).build(stats);
}

DirectedGraph graph_from_edge_pairs(std::span<const std::pair<std::string, std::string>> pairs,
                                    IngestStats* stats) {
  if (pairs.empty()) throw EmptyInputError("edge list is empty");
  GraphBuilder b;
  for (const auto& [s, d] : pairs) b.add_edge(s, d);
  return std::move(b).build(stats);
}

namespace {

void read_edges_into(GraphBuilder& b, std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    std::string src, dst, extra;
    if (!(fields >> src >> dst)) {
      throw ParseError("expected two whitespace-separated node ids", lineno);
    }
    if (fields >> extra) {
      throw ParseError("unexpected third token '" + extra + "'", lineno);
    }
    b.add_edge(src, dst);
  }
}

}  // namespace

DirectedGraph read_edge_list(std::istream& in, IngestStats* stats) {
  GraphBuilder b;
  read_edges_into(b, in);
  if (b.node_count() == 0) throw EmptyInputError("edge list contains no edges");
  return std::move(b).build(stats);
}

DirectedGraph read_edge_list_file(const std::string& path, IngestStats* stats) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list '" + path + "'");
  return read_edge_list(in, stats);
}

void write_edge_list(std::ostream& out, const DirectedGraph& g) {
  for (const auto& [s, d] : g.edges()) {
    out << g.external_id(s) << ' ' << g.external_id(d) << '\n';
  }
}

DirectedGraph induced_subgraph(const DirectedGraph& g, const std::vector<bool>& keep,
                               std::vector<std::optional<NodeId>>* old_to_new) {
  if (keep.size() != g.node_count()) throw SizeError("keep mask does not match node count");
  GraphBuilder b;
  std::vector<std::optional<NodeId>> mapping(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (keep[u]) mapping[u] = b.add_node(g.external_id(u));
  }
  for (const auto& [s, d] : g.edges()) {
    if (mapping[s] && mapping[d]) b.add_edge(*mapping[s], *mapping[d]);
  }
  if (old_to_new) *old_to_new = std::move(mapping);
  return std::move(b).build();
}

std::string_view karate_club_edge_text() { return detail::kKarateClubEdges; }

DirectedGraph karate_club() {
  GraphBuilder b;
  for (int i = 1; i <= 34; ++i) b.add_node(std::to_string(i));
  std::istringstream text{std::string(detail::kKarateClubEdges)};
  std::string line;
  while (std::getline(text, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string a, c;
    fields >> a >> c;
    b.add_edge(a, c);
    b.add_edge(c, a);
  }
  return std::move(b).build();
}

}  // namespace netparadox
