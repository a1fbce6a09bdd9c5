#include "netparadox/cli.hpp"

#include <omp.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <variant>

#include <json.hpp>

#include "netparadox/attributes.hpp"
#include "netparadox/correlations.hpp"
#include "netparadox/distributions.hpp"
#include "netparadox/errors.hpp"
#include "netparadox/paradox.hpp"

namespace netparadox::cli {

namespace {

using json = nlohmann::ordered_json;
using Cell = std::variant<std::string, double, long long>;

struct Table {
  std::string stem;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> meta;  // extra header lines
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

long long count(std::size_t v) { return static_cast<long long>(v); }

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

bool uses_inputs(const std::string& command) {
  return command == "analyze" || command == "shuffle-test";
}

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, double>) {
          return num(v);
        } else {
          return std::to_string(v);
        }
      },
      c);
}

json json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
        }
        return v;
      },
      c);
}

std::string write_table(const Table& t, const RunConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out, ec);
  if (ec) throw IoError("cannot create output directory '" + cfg.out + "': " + ec.message());
  const auto path = (std::filesystem::path(cfg.out) / (t.stem + "." + cfg.format)).string();
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write '" + path + "'");

  const auto config = resolved_config(cfg);
  if (cfg.format == "json") {
    json meta;
    meta["tool"] = std::string("netparadox ") + kToolVersion;
    meta["command"] = cfg.command;
    meta["seed"] = cfg.seed;
    meta["config_hash"] = config_hash(cfg);
    json c = json::object();
    for (const auto& [k, v] : config) c[k] = v;
    meta["config"] = c;
    for (const auto& [k, v] : t.meta) meta[k] = v;
    json rows = json::array();
    for (const auto& r : t.rows) {
      json row;
      for (std::size_t i = 0; i < t.columns.size(); ++i) row[t.columns[i]] = json_cell(r[i]);
      rows.push_back(std::move(row));
    }
    json doc;
    doc["meta"] = std::move(meta);
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << '\n';
  } else {
    os << "# tool: netparadox " << kToolVersion << '\n';
    os << "# command: " << cfg.command << '\n';
    os << "# seed: " << cfg.seed << '\n';
    os << "# config_hash: " << config_hash(cfg) << '\n';
    for (const auto& [k, v] : config) os << "# config." << k << ": " << v << '\n';
    for (const auto& [k, v] : t.meta) os << "# " << k << ": " << v << '\n';
    os << join(t.columns, ",") << '\n';
    for (const auto& r : t.rows) {
      std::vector<std::string> cells;
      for (const auto& c : r) cells.push_back(csv_cell(c));
      os << join(cells, ",") << '\n';
    }
  }
  if (!os.flush()) throw IoError("failed writing '" + path + "'");
  return path;
}

Table paradox_table() {
  return {"paradox",
          {"attribute", "relation", "stat", "fraction", "ci_low", "ci_high", "n_eval",
           "n_excluded"},
          {},
          {}};
}

void add_paradox_row(Table& t, const ParadoxReport& r) {
  t.rows.push_back({r.attribute, std::string(to_string(r.relation)), std::string(to_string(r.stat)),
                    r.fraction, r.ci_low, r.ci_high, count(r.nodes_evaluated),
                    count(r.nodes_excluded)});
}

std::string describe(const ParadoxReport& r) {
  return r.attribute + " " + to_string(r.relation) + " " + to_string(r.stat) + ": " +
         std::to_string(r.nodes_in_paradox) + "/" + std::to_string(r.nodes_evaluated) + " (" +
         num(std::round(r.fraction * 1000) / 1000) + ")";
}

Table correlation_table() {
  return {"correlations", {"attribute", "measure", "variant", "r", "n"}, {}, {}};
}

void add_correlation_row(Table& t, const CorrelationReport& r, const std::string& variant) {
  const char* measure = r.kind == CorrelationKind::WithinNode ? "within_node" : "assortativity";
  t.rows.push_back({r.attribute, std::string(measure), variant, r.r, count(r.n)});
}

DistributionSpec parse_spec(const std::string& text) {
  try {
    return DistributionSpec::parse(text);
  } catch (const SpecError& e) {
    throw ConfigError("invalid distribution '" + text + "': " + e.what());
  }
}

std::pair<std::string, std::string> split_attr(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size()) {
    throw ConfigError("--attr expects NAME=PATH, got '" + arg + "'");
  }
  return {arg.substr(0, eq), arg.substr(eq + 1)};
}

struct Inputs {
  std::optional<DirectedGraph> graph;
  std::vector<AttributeTable> attrs;
};

std::vector<AttributeTable> event_attributes(const EventLog& log, const DirectedGraph& g,
                                             RunResult& res) {
  DerivationStats st;
  std::vector<AttributeTable> out;
  out.push_back(derive_activity(log, g, &st));
  out.push_back(derive_diversity(log, g));
  out.push_back(derive_virality(log, g, ViralityMode::Posted));
  out.push_back(derive_virality(log, g, ViralityMode::Received));
  out[0].name = "activity";
  out[1].name = "diversity";
  out[2].name = "virality_posted";
  out[3].name = "virality_received";
  if (st.unresolved_events > 0) {
    res.warnings.push_back(std::to_string(st.unresolved_events) +
                           " event(s) by actors not in the graph were skipped");
  }
  return out;
}

Inputs load_inputs(const RunConfig& cfg, RunResult& res) {
  std::vector<std::string> missing;
  if (cfg.edges.empty()) missing.push_back("--edges");
  if (cfg.require_activity && cfg.events.empty()) missing.push_back("--events (for --require-activity)");
  if (!missing.empty()) throw ConfigError("missing required input(s): " + join(missing, ", "));

  Inputs in;
  IngestStats stats;
  in.graph = read_edge_list_file(cfg.edges, &stats);
  if (stats.self_loops > 0) {
    res.warnings.push_back(std::to_string(stats.self_loops) + " self-loop(s) dropped");
  }
  if (stats.duplicates > 0) {
    res.warnings.push_back(std::to_string(stats.duplicates) + " duplicate edge(s) collapsed");
  }

  std::map<std::string, bool> seen;
  for (const auto& arg : cfg.attrs) {
    const auto [name, path] = split_attr(arg);
    if (seen[name]) throw ConfigError("attribute '" + name + "' given twice");
    seen[name] = true;
    CoverageReport cov;
    in.attrs.push_back(load_attribute_file(path, name, *in.graph, &cov));
    if (!cov.complete()) {
      res.warnings.push_back("attribute '" + name + "' covers " + std::to_string(cov.covered) +
                             "/" + std::to_string(cov.total) + " nodes; missing values set to 0");
    }
  }

  std::optional<EventLog> log;
  if (!cfg.events.empty()) {
    log = read_event_log_file(cfg.events);
    if (log->orphan_reposts > 0) {
      res.warnings.push_back(std::to_string(log->orphan_reposts) +
                             " repost(s) of items never posted");
    }
  }

  if (cfg.require_activity) {
    const auto activity = derive_activity(*log, *in.graph);
    std::vector<bool> keep(in.graph->node_count());
    std::size_t kept = 0;
    for (NodeId u = 0; u < keep.size(); ++u) kept += keep[u] = activity[u] > 0;
    if (kept == 0) throw EmptyInputError("--require-activity left no nodes");
    std::vector<std::optional<NodeId>> remap;
    auto sub = induced_subgraph(*in.graph, keep, &remap);
    for (auto& a : in.attrs) a = restrict_to(a, remap, sub.node_count());
    res.warnings.push_back("--require-activity kept " + std::to_string(kept) + "/" +
                           std::to_string(keep.size()) + " nodes");
    in.graph = std::move(sub);
  }

  if (log) {
    for (auto& a : event_attributes(*log, *in.graph, res)) {
      if (seen[a.name]) throw ConfigError("attribute '" + a.name + "' given twice");
      in.attrs.push_back(std::move(a));
    }
  }
  if (in.attrs.empty()) {
    res.warnings.push_back("no attributes supplied; reporting friendship paradoxes only");
  }
  return in;
}

void write_all(const std::vector<Table>& tables, const RunConfig& cfg, RunResult& res) {
  for (const auto& t : tables) res.files.push_back(write_table(t, cfg));
}

std::string family_stem(const DistributionSpec& d, std::map<std::string, int>& used) {
  const auto fam = d.family();
  const int k = used[fam]++;
  return "scaling_" + fam + (k ? "_" + std::to_string(k + 1) : "");
}

}  // namespace

std::vector<std::pair<std::string, std::string>> resolved_config(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("command", cfg.command);
  kv.emplace_back("seed", std::to_string(cfg.seed));
  kv.emplace_back("format", cfg.format);
  kv.emplace_back("out", cfg.out);
  kv.emplace_back("threads", std::to_string(cfg.threads));
  if (uses_inputs(cfg.command)) {
    kv.emplace_back("edges", cfg.edges);
    kv.emplace_back("attr", join(cfg.attrs, ";"));
    kv.emplace_back("events", cfg.events);
    kv.emplace_back("require_activity", cfg.require_activity ? "true" : "false");
    kv.emplace_back("bins_per_decade", std::to_string(cfg.bins_per_decade));
  }
  if (cfg.command == "shuffle-test") {
    kv.emplace_back("kind", cfg.kind);
    kv.emplace_back("runs", std::to_string(cfg.runs));
  }
  if (cfg.command == "statistical-origins") {
    kv.emplace_back("distributions", join(cfg.distributions, ";"));
    std::vector<std::string> sizes;
    for (auto s : cfg.sizes) sizes.push_back(std::to_string(s));
    kv.emplace_back("sizes", join(sizes, ";"));
    kv.emplace_back("trials", std::to_string(cfg.trials));
    kv.emplace_back("nodes", std::to_string(cfg.nodes));
    kv.emplace_back("degree_dist", cfg.degree_dist);
    kv.emplace_back("attr_dist", cfg.attr_dist);
  }
  return kv;
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& [k, v] : resolved_config(cfg)) {
    feed(k);
    feed("=");
    feed(v);
    feed("\n");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunResult karate_demo(const RunConfig& cfg) {
  RunResult res;
  const auto g = karate_club();
  auto paradox = paradox_table();
  for (const auto& r : friendship_paradox_suite(g)) {
    add_paradox_row(paradox, r);
    if (r.attribute == "friend_count" && r.relation == NeighborRelation::Friends) {
      res.summary.push_back(describe(r));
    }
  }
  const auto skill = rank_matched_attribute(g, std::nullopt, cfg.seed);
  for (auto stat : {ParadoxStat::Mean, ParadoxStat::Median}) {
    const auto r = paradox_fraction(g, skill, NeighborRelation::Friends, stat);
    add_paradox_row(paradox, r);
    res.summary.push_back(describe(r));
  }
  auto corr = correlation_table();
  add_correlation_row(corr, degree_assortativity(g), "out_out");
  add_correlation_row(corr, attribute_assortativity(g, skill), "edge");
  add_correlation_row(corr, within_node_correlation(g, skill), "friend_count");
  write_all({paradox, corr}, cfg, res);
  return res;
}

RunResult analyze(const RunConfig& cfg) {
  RunResult res;
  const auto in = load_inputs(cfg, res);
  const auto& g = *in.graph;

  auto paradox = paradox_table();
  for (const auto& r : friendship_paradox_suite(g)) add_paradox_row(paradox, r);
  for (const auto& a : in.attrs) {
    for (auto stat : {ParadoxStat::Mean, ParadoxStat::Median}) {
      const auto r = paradox_fraction(g, a, NeighborRelation::Friends, stat);
      add_paradox_row(paradox, r);
      res.summary.push_back(describe(r));
    }
  }

  Table hist{"histograms", {"attribute", "bin_low", "bin_high", "count", "density"}, {}, {}};
  hist.meta.emplace_back("zero_rows", "bin_low = bin_high = 0 holds the count and mass of zeros");
  std::vector<AttributeTable> all{degree_as_attribute(g, Direction::Out),
                                  degree_as_attribute(g, Direction::In)};
  all.insert(all.end(), in.attrs.begin(), in.attrs.end());
  for (const auto& a : all) {
    try {
      const auto h = log_binned_pdf(a.values, cfg.bins_per_decade);
      if (h.zero_count > 0) {
        hist.rows.push_back({a.name, 0.0, 0.0, count(h.zero_count), h.zero_fraction()});
      }
      for (std::size_t i = 0; i < h.counts.size(); ++i) {
        hist.rows.push_back(
            {a.name, h.edges[i], h.edges[i + 1], count(h.counts[i]), h.density[i]});
      }
    } catch (const EmptyInputError&) {
      res.warnings.push_back("attribute '" + a.name + "' is all zero; no histogram");
    }
  }

  auto corr = correlation_table();
  add_correlation_row(corr, degree_assortativity(g, Direction::Out, Direction::Out), "out_out");
  add_correlation_row(corr, degree_assortativity(g, Direction::In, Direction::In), "in_in");
  for (const auto& a : in.attrs) {
    add_correlation_row(corr, attribute_assortativity(g, a), "edge");
    add_correlation_row(corr, within_node_correlation(g, a), "friend_count");
  }
  write_all({paradox, hist, corr}, cfg, res);
  return res;
}

RunResult shuffle_test(const RunConfig& cfg) {
  RunResult res;
  const auto in = load_inputs(cfg, res);
  const auto& g = *in.graph;

  ExperimentConfig ex;
  ex.kind = cfg.kind == "controlled" ? ShuffleKind::Controlled : ShuffleKind::Full;
  ex.runs = cfg.runs;
  ex.seed = cfg.seed;
  ex.binning.bins_per_decade = cfg.bins_per_decade;

  Table t{"shuffle", {"run", "attribute", "kind", "measure", "stat", "value"}, {}, {}};
  const std::string kind = to_string(ex.kind);
  auto emit = [&](const std::string& run, const std::string& attr, const Measurement& m) {
    for (const auto& p : m.paradoxes) {
      t.rows.push_back({run, attr, kind, std::string("paradox_") + to_string(p.relation),
                        std::string(to_string(p.stat)), p.fraction});
    }
    t.rows.push_back({run, attr, kind, std::string("within_node"), std::string("r"), m.within_node.r});
    t.rows.push_back(
        {run, attr, kind, std::string("assortativity"), std::string("r"), m.assortativity.r});
  };

  std::vector<AttributeTable> attrs{degree_as_attribute(g, Direction::Out)};
  attrs.insert(attrs.end(), in.attrs.begin(), in.attrs.end());
  for (const auto& a : attrs) {
    const auto rep = shuffle_experiment(g, a, ex);
    emit("baseline", a.name, rep.baseline);
    for (std::size_t i = 0; i < rep.runs.size(); ++i) emit(std::to_string(i), a.name, rep.runs[i]);
    for (const char* which : {"mean", "stderr"}) {
      const bool mean = which[0] == 'm';
      for (std::size_t k = 0; k < rep.paradox_aggregates.size(); ++k) {
        const auto& p = rep.baseline.paradoxes[k];
        const auto& agg = rep.paradox_aggregates[k];
        t.rows.push_back({std::string(which), a.name, kind,
                          std::string("paradox_") + to_string(p.relation),
                          std::string(to_string(p.stat)), mean ? agg.mean : agg.std_error});
      }
      const auto& w = rep.within_node_aggregate;
      const auto& s = rep.assortativity_aggregate;
      t.rows.push_back({std::string(which), a.name, kind, std::string("within_node"),
                        std::string("r"), mean ? w.mean : w.std_error});
      t.rows.push_back({std::string(which), a.name, kind, std::string("assortativity"),
                        std::string("r"), mean ? s.mean : s.std_error});
    }
    res.summary.push_back(a.name + ": median paradox " + num(rep.baseline.paradoxes[1].fraction) +
                          " -> " + num(rep.paradox_aggregates[1].mean) + " after " + kind +
                          " shuffle");
  }
  write_all({t}, cfg, res);
  return res;
}

RunResult statistical_origins(const RunConfig& cfg) {
  RunResult res;
  std::vector<DistributionSpec> dists;
  for (const auto& s : cfg.distributions) dists.push_back(parse_spec(s));
  const auto degree = parse_spec(cfg.degree_dist);
  const auto attr = parse_spec(cfg.attr_dist);

  std::vector<Table> tables;
  std::map<std::string, int> used;
  for (std::size_t i = 0; i < dists.size(); ++i) {
    const auto& d = dists[i];
    Table t{family_stem(d, used),
            {"n", "mean_of_means", "mean_of_medians", "stderr_means", "stderr_medians"},
            {},
            {}};
    t.meta.emplace_back("distribution", d.to_string());
    std::string mu;
    try {
      mu = num(analytic_moments(d).mean);
    } catch (const UndefinedMeanError&) {
      mu = "undefined";
    }
    const auto m = num(analytic_median(d));
    t.meta.emplace_back("analytic_mean", mu);
    t.meta.emplace_back("analytic_median", m);
    res.summary.push_back(d.to_string() + ": mu=" + mu + " m=" + m);

    const auto curve = mean_median_scaling(d, cfg.sizes, cfg.trials, derive_seed(cfg.seed, i));
    for (const auto& p : curve.points) {
      t.rows.push_back({count(p.n), p.mean_of_means, p.mean_of_medians, p.stderr_means,
                        p.stderr_medians});
    }
    tables.push_back(std::move(t));
  }

  IidParadoxConfig ic{cfg.nodes, degree, attr, cfg.seed};
  const auto iid = iid_network_paradox(ic);
  Table t{"iid_paradox", {"degree_bucket", "frac_mean", "frac_median", "count"}, {}, {}};
  t.meta.emplace_back("degree_dist", degree.to_string());
  t.meta.emplace_back("attr_dist", attr.to_string());
  for (const auto& b : iid.buckets) {
    t.rows.push_back({count(b.friend_count), b.frac_mean, b.frac_median, count(b.nodes)});
  }
  tables.push_back(std::move(t));
  write_all(tables, cfg, res);
  return res;
}

RunResult run(const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") {
    throw ConfigError("--format must be csv or json, got '" + cfg.format + "'");
  }
  if (cfg.kind != "full" && cfg.kind != "controlled") {
    throw ConfigError("--kind must be full or controlled, got '" + cfg.kind + "'");
  }
  if (cfg.bins_per_decade < 1) throw ConfigError("--bins-per-decade must be at least 1");
  if (cfg.runs < 1) throw ConfigError("--runs must be at least 1");
  if (cfg.threads < 0) throw ConfigError("--threads must be non-negative");
  if (cfg.out.empty()) throw ConfigError("--out must not be empty");
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);

  if (cfg.command == "karate-demo") return karate_demo(cfg);
  if (cfg.command == "analyze") return analyze(cfg);
  if (cfg.command == "shuffle-test") return shuffle_test(cfg);
  if (cfg.command == "statistical-origins") {
    if (cfg.trials < 1) throw ConfigError("--trials must be at least 1");
    if (cfg.nodes < 2) throw ConfigError("--nodes must be at least 2");
    if (cfg.sizes.empty()) throw ConfigError("--sizes must not be empty");
    for (std::size_t i = 0; i < cfg.sizes.size(); ++i) {
      if (cfg.sizes[i] == 0 || (i > 0 && cfg.sizes[i] <= cfg.sizes[i - 1])) {
        throw ConfigError("--sizes must be positive and strictly increasing");
      }
    }
    return statistical_origins(cfg);
  }
  throw ConfigError("unknown command '" + cfg.command + "'");
}

std::string error_record(const std::exception& e) {
  json rec;
  if (const auto* ne = dynamic_cast<const Error*>(&e)) {
    rec["error"] = ne->kind();
  } else {
    rec["error"] = "internal";
  }
  rec["message"] = e.what();
  if (const auto* le = dynamic_cast<const LineError*>(&e); le && le->line() > 0) {
    rec["line"] = le->line();
  }
  return rec.dump();
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const SpecError*>(&e)) return 2;
  if (dynamic_cast<const IoError*>(&e)) return 4;
  if (dynamic_cast<const Error*>(&e)) return 3;
  return 1;
}

}  // namespace netparadox::cli
