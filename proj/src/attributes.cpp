#include "netparadox/attributes.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "netparadox/errors.hpp"
#include "netparadox/rng.hpp"

namespace netparadox {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(',', start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end && !s.empty();
}

bool parse_u64(std::string_view s, std::uint64_t& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end && !s.empty();
}

std::string lower(std::string_view s) {
  std::string r(s);
  std::transform(r.begin(), r.end(), r.begin(), [](unsigned char c) { return std::tolower(c); });
  return r;
}

// Per-node sorted, distinct item indices touched (posted or reposted) and
// per-item repost counts; the shared substrate of the derivations.
struct ItemIndex {
  std::vector<std::vector<std::uint32_t>> touched;
  std::vector<std::vector<std::uint32_t>> posted;
  std::vector<std::size_t> reposts;
  std::vector<std::size_t> activity;
  std::size_t unresolved = 0;
};

ItemIndex index_items(const EventLog& log, const DirectedGraph& g) {
  ItemIndex idx;
  idx.touched.resize(g.node_count());
  idx.posted.resize(g.node_count());
  idx.activity.assign(g.node_count(), 0);
  std::unordered_map<std::string, std::uint32_t> items;
  for (const auto& ev : log.records) {
    auto [it, inserted] = items.try_emplace(ev.item, static_cast<std::uint32_t>(items.size()));
    if (inserted) idx.reposts.push_back(0);
    const auto item = it->second;
    if (ev.action == Action::Repost) ++idx.reposts[item];

    const auto u = g.find(ev.actor);
    if (!u) {
      ++idx.unresolved;
      continue;
    }
    ++idx.activity[*u];
    idx.touched[*u].push_back(item);
    if (ev.action == Action::Post) idx.posted[*u].push_back(item);
  }
  for (auto* lists : {&idx.touched, &idx.posted}) {
    for (auto& v : *lists) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
  }
  return idx;
}

double aggregate(std::span<const std::size_t> xs, Aggregator agg) {
  if (xs.empty()) return 0.0;
  switch (agg) {
    case Aggregator::Max:
      return static_cast<double>(*std::max_element(xs.begin(), xs.end()));
    case Aggregator::Sum:
      return static_cast<double>(std::accumulate(xs.begin(), xs.end(), std::size_t{0}));
    case Aggregator::Mean:
      break;
  }
  return static_cast<double>(std::accumulate(xs.begin(), xs.end(), std::size_t{0})) /
         static_cast<double>(xs.size());
}

// Calls fn(u, items) with the distinct items received by u from its friends,
// in ascending item order. Nodes are processed in parallel.
template <class Fn>
void for_each_received(const DirectedGraph& g, const ItemIndex& idx, Fn&& fn) {
  const auto n = static_cast<std::int64_t>(g.node_count());
#pragma omp parallel
  {
    std::vector<std::uint32_t> buf;
#pragma omp for schedule(dynamic, 256)
    for (std::int64_t u = 0; u < n; ++u) {
      buf.clear();
      for (NodeId v : g.friends(static_cast<NodeId>(u))) {
        buf.insert(buf.end(), idx.touched[v].begin(), idx.touched[v].end());
      }
      std::sort(buf.begin(), buf.end());
      buf.erase(std::unique(buf.begin(), buf.end()), buf.end());
      fn(static_cast<NodeId>(u), std::span<const std::uint32_t>(buf));
    }
  }
}

}  // namespace

void validate(const AttributeTable& attr) {
  for (std::size_t i = 0; i < attr.values.size(); ++i) {
    const double v = attr.values[i];
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError("attribute '" + attr.name + "' has invalid value " +
                            std::to_string(v) + " at node " + std::to_string(i));
    }
  }
}

void require_coverage(const DirectedGraph& g, const AttributeTable& attr) {
  if (attr.size() != g.node_count()) {
    throw ReferenceError("attribute '" + attr.name + "' covers " + std::to_string(attr.size()) +
                         " nodes but the graph has " + std::to_string(g.node_count()));
  }
}

AttributeTable restrict_to(const AttributeTable& attr,
                           const std::vector<std::optional<NodeId>>& old_to_new,
                           std::size_t new_node_count) {
  if (old_to_new.size() != attr.size()) throw SizeError("mapping does not match attribute size");
  AttributeTable out{attr.name, std::vector<double>(new_node_count, 0.0)};
  for (std::size_t u = 0; u < old_to_new.size(); ++u) {
    if (old_to_new[u]) out.values[*old_to_new[u]] = attr.values[u];
  }
  return out;
}

AttributeTable load_attribute(std::istream& in, std::string name, const DirectedGraph& g,
                              CoverageReport* coverage) {
  AttributeTable table{std::move(name), std::vector<double>(g.node_count(), 0.0)};
  std::vector<bool> seen(g.node_count(), false);
  std::size_t covered = 0;
  std::string line;
  std::size_t lineno = 0;
  bool first_record = true;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = split_commas(body);
    if (first_record) {
      first_record = false;
      if (fields.size() == 2 && lower(fields[0]) == "id" && lower(fields[1]) == "value") continue;
    }
    if (fields.size() != 2 || fields[0].empty()) {
      throw ParseError("expected 'id,value'", lineno);
    }
    double v = 0.0;
    if (!parse_double(fields[1], v)) {
      throw ValidationError("value '" + std::string(fields[1]) + "' is not a number", lineno);
    }
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError("value '" + std::string(fields[1]) +
                                "' must be finite and non-negative", lineno);
    }
    const auto u = g.find(fields[0]);
    if (!u) throw ReferenceError("id '" + std::string(fields[0]) + "' is not in the graph", lineno);
    if (seen[*u]) throw ValidationError("duplicate id '" + std::string(fields[0]) + "'", lineno);
    seen[*u] = true;
    ++covered;
    table.values[*u] = v;
  }
  if (coverage) *coverage = {covered, g.node_count()};
  return table;
}

AttributeTable load_attribute_file(const std::string& path, std::string name,
                                   const DirectedGraph& g, CoverageReport* coverage) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open attribute file '" + path + "'");
  return load_attribute(in, std::move(name), g, coverage);
}

EventLog make_event_log(std::vector<EventRecord> records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const EventRecord& a, const EventRecord& b) { return a.time < b.time; });
  std::unordered_set<std::string_view> posted;
  for (const auto& ev : records) {
    if (ev.action == Action::Post) posted.insert(ev.item);
  }
  EventLog log;
  for (const auto& ev : records) {
    if (ev.action == Action::Repost && !posted.contains(ev.item)) ++log.orphan_reposts;
  }
  log.records = std::move(records);
  return log;
}

EventLog read_event_log(std::istream& in) {
  std::vector<EventRecord> records;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = split_commas(body);
    if (!header_seen) {
      if (fields.size() != 4 || lower(fields[0]) != "time" || lower(fields[1]) != "actor" ||
          lower(fields[2]) != "action" || lower(fields[3]) != "item") {
        throw ParseError("expected header 'time,actor,action,item'", lineno);
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 4) throw ParseError("expected 4 comma-separated fields", lineno);
    EventRecord ev;
    if (!parse_u64(fields[0], ev.time)) {
      throw ParseError("time '" + std::string(fields[0]) + "' is not a non-negative integer",
                       lineno);
    }
    if (fields[1].empty() || fields[3].empty()) throw ParseError("empty actor or item", lineno);
    ev.actor = fields[1];
    const auto action = lower(fields[2]);
    if (action == "post") {
      ev.action = Action::Post;
    } else if (action == "repost") {
      ev.action = Action::Repost;
    } else {
      throw ParseError("action must be 'post' or 'repost', got '" + action + "'", lineno);
    }
    ev.item = fields[3];
    records.push_back(std::move(ev));
  }
  if (!header_seen) throw EmptyInputError("event log is empty");
  return make_event_log(std::move(records));
}

EventLog read_event_log_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open event log '" + path + "'");
  return read_event_log(in);
}

AttributeTable derive_activity(const EventLog& log, const DirectedGraph& g,
                               DerivationStats* stats) {
  AttributeTable t{"activity", std::vector<double>(g.node_count(), 0.0)};
  std::size_t unresolved = 0;
  for (const auto& ev : log.records) {
    if (const auto u = g.find(ev.actor)) {
      t.values[*u] += 1.0;
    } else {
      ++unresolved;
    }
  }
  if (stats) stats->unresolved_events = unresolved;
  return t;
}

AttributeTable derive_diversity(const EventLog& log, const DirectedGraph& g,
                                DerivationStats* stats) {
  const auto idx = index_items(log, g);
  AttributeTable t{"diversity", std::vector<double>(g.node_count(), 0.0)};
  for_each_received(g, idx, [&](NodeId u, std::span<const std::uint32_t> items) {
    t.values[u] = static_cast<double>(items.size());
  });
  if (stats) stats->unresolved_events = idx.unresolved;
  return t;
}

AttributeTable derive_virality(const EventLog& log, const DirectedGraph& g, ViralityMode mode,
                               Aggregator agg, DerivationStats* stats) {
  const auto idx = index_items(log, g);
  AttributeTable t{mode == ViralityMode::Posted ? "virality_posted" : "virality_received",
                   std::vector<double>(g.node_count(), 0.0)};
  if (mode == ViralityMode::Posted) {
    std::vector<std::size_t> counts;
    for (NodeId u = 0; u < g.node_count(); ++u) {
      counts.clear();
      for (auto item : idx.posted[u]) counts.push_back(idx.reposts[item]);
      t.values[u] = aggregate(counts, agg);
    }
  } else {
    for_each_received(g, idx, [&](NodeId u, std::span<const std::uint32_t> items) {
      std::vector<std::size_t> counts;
      counts.reserve(items.size());
      for (auto item : items) counts.push_back(idx.reposts[item]);
      t.values[u] = aggregate(counts, agg);
    });
  }
  if (stats) stats->unresolved_events = idx.unresolved;
  return t;
}

AttributeTable rank_matched_attribute(const DirectedGraph& g,
                                      std::optional<std::vector<double>> sample,
                                      std::uint64_t seed, Direction dir, std::string name) {
  const std::size_t n = g.node_count();
  std::vector<double> values;
  if (sample) {
    if (sample->size() != n) {
      throw SizeError("sample has " + std::to_string(sample->size()) + " values but the graph has " +
                      std::to_string(n) + " nodes");
    }
    values = std::move(*sample);
  } else {
    auto eng = make_engine(seed);
    values.resize(n);
    for (auto& v : values) v = uniform_real(eng, 1.0, 20.0);
  }
  std::sort(values.begin(), values.end(), std::greater<>());

  const auto deg = g.degrees(dir);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return deg[a] > deg[b]; });

  AttributeTable t{std::move(name), std::vector<double>(n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) t.values[order[i]] = values[i];
  validate(t);
  return t;
}

}  // namespace netparadox
