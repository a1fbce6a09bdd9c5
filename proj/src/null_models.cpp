#include "netparadox/null_models.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "netparadox/errors.hpp"
#include "netparadox/rng.hpp"

namespace netparadox {

const char* to_string(ShuffleKind k) noexcept {
  return k == ShuffleKind::Full ? "full" : "controlled";
}

std::size_t DegreeBinning::bin_of(std::size_t degree) const {
  if (bins_per_decade < 1) throw std::invalid_argument("bins_per_decade must be at least 1");
  if (degree == 0) return 0;
  const double b = bins_per_decade;
  auto i = static_cast<std::size_t>(std::floor(b * std::log10(static_cast<double>(degree))));
  // Correct log10 rounding at exact powers.
  auto lower_edge = [&](std::size_t k) { return std::pow(10.0, static_cast<double>(k) / b); };
  while (i > 0 && static_cast<double>(degree) < lower_edge(i)) --i;
  while (static_cast<double>(degree) >= lower_edge(i + 1)) ++i;
  return i + 1;
}

std::pair<std::size_t, std::size_t> DegreeBinning::degree_range(std::size_t bin) const {
  if (bin == 0) return {0, 0};
  const double b = bins_per_decade;
  const double lo = std::pow(10.0, static_cast<double>(bin - 1) / b);
  const double hi = std::pow(10.0, static_cast<double>(bin) / b);
  auto d_lo = static_cast<std::size_t>(std::ceil(lo));
  auto d_hi = static_cast<std::size_t>(std::ceil(hi)) - 1;
  while (d_lo > 1 && bin_of(d_lo - 1) == bin) --d_lo;
  while (bin_of(d_lo) < bin) ++d_lo;
  while (bin_of(d_hi + 1) == bin) ++d_hi;
  while (d_hi > d_lo && bin_of(d_hi) > bin) --d_hi;
  return {d_lo, d_hi};
}

std::uint64_t run_seed(std::uint64_t master, std::size_t run) { return derive_seed(master, run); }

ShuffleOutcome full_shuffle(const AttributeTable& attr, std::uint64_t seed) {
  if (attr.values.empty()) throw EmptyInputError("cannot shuffle an empty attribute");
  ShuffleOutcome out{attr, ShuffleKind::Full, seed, {}};
  auto eng = make_engine(seed);
  shuffle_range(out.table.values.begin(), out.table.values.end(), eng);
  return out;
}

ShuffleOutcome controlled_shuffle(const DirectedGraph& g, const AttributeTable& attr,
                                  const DegreeBinning& binning, std::uint64_t seed) {
  require_coverage(g, attr);
  std::map<std::size_t, std::vector<NodeId>> groups;
  const auto deg = g.degrees(Direction::Out);
  for (NodeId u = 0; u < g.node_count(); ++u) groups[binning.bin_of(deg[u])].push_back(u);

  ShuffleOutcome out{attr, ShuffleKind::Controlled, seed, {}};
  auto eng = make_engine(seed);
  std::vector<double> vals;
  for (const auto& [bin, members] : groups) {
    vals.clear();
    for (NodeId u : members) vals.push_back(attr.values[u]);
    shuffle_range(vals.begin(), vals.end(), eng);
    for (std::size_t i = 0; i < members.size(); ++i) out.table.values[members[i]] = vals[i];
    const auto [lo, hi] = binning.degree_range(bin);
    out.bins.push_back({bin, lo, hi, members.size()});
  }
  return out;
}

AttributeTable degree_as_attribute(const DirectedGraph& g, Direction dir) {
  AttributeTable t{dir == Direction::Out ? "friend_count" : "follower_count", {}};
  t.values.reserve(g.node_count());
  for (auto d : g.degrees(dir)) t.values.push_back(static_cast<double>(d));
  return t;
}

namespace {

Measurement measure(const DirectedGraph& g, const AttributeTable& attr,
                    const ExperimentConfig& config) {
  Measurement m;
  for (auto rel : config.relations) {
    for (auto stat : config.stats) m.paradoxes.push_back(paradox_fraction(g, attr, rel, stat));
  }
  m.within_node = within_node_correlation(g, attr);
  m.assortativity = attribute_assortativity(g, attr);
  return m;
}

template <class Get>
Aggregate aggregate(const std::vector<Measurement>& runs, Get&& get) {
  Aggregate a;
  double sum = 0.0;
  std::vector<double> xs;
  for (const auto& m : runs) {
    const double v = get(m);
    if (std::isnan(v)) continue;
    xs.push_back(v);
    sum += v;
  }
  a.defined_runs = xs.size();
  if (xs.empty()) {
    a.mean = a.std_error = std::numeric_limits<double>::quiet_NaN();
    return a;
  }
  a.mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) {
    a.std_error = std::numeric_limits<double>::quiet_NaN();
    return a;
  }
  double ss = 0.0;
  for (double x : xs) ss += (x - a.mean) * (x - a.mean);
  a.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  return a;
}

}  // namespace

ShuffleExperimentReport shuffle_experiment(const DirectedGraph& g, const AttributeTable& attr,
                                           const ExperimentConfig& config) {
  if (config.runs == 0) throw SizeError("runs must be at least 1");
  require_coverage(g, attr);

  ShuffleExperimentReport rep;
  rep.attribute = attr.name;
  rep.config = config;
  rep.baseline = measure(g, attr, config);
  rep.runs.resize(config.runs);

  // Inner kernels see an active parallel region and run single-threaded.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(config.runs); ++r) {
    const auto i = static_cast<std::size_t>(r);
    const auto seed = run_seed(config.seed, i);
    const auto shuffled = config.kind == ShuffleKind::Full
                              ? full_shuffle(attr, seed)
                              : controlled_shuffle(g, attr, config.binning, seed);
    rep.runs[i] = measure(g, shuffled.table, config);
  }

  for (std::size_t k = 0; k < rep.baseline.paradoxes.size(); ++k) {
    rep.paradox_aggregates.push_back(
        aggregate(rep.runs, [k](const Measurement& m) { return m.paradoxes[k].fraction; }));
  }
  rep.within_node_aggregate = aggregate(rep.runs, [](const Measurement& m) {
    return m.within_node.defined ? m.within_node.r : std::numeric_limits<double>::quiet_NaN();
  });
  rep.assortativity_aggregate = aggregate(rep.runs, [](const Measurement& m) {
    return m.assortativity.defined ? m.assortativity.r : std::numeric_limits<double>::quiet_NaN();
  });
  return rep;
}

}  // namespace netparadox
