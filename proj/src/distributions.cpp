#include "netparadox/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "netparadox/errors.hpp"
#include "netparadox/kernels.hpp"
#include "netparadox/stats.hpp"
#include "netparadox/synthetic.hpp"

namespace netparadox {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw SpecError(std::string(what) + " must be positive and finite, got " + std::to_string(v));
  }
}

// Shortest text that parses back to the same double.
std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw SpecError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

void check_sizes(std::span<const std::size_t> sizes, std::size_t trials) {
  if (sizes.empty()) throw SizeError("no sample sizes given");
  if (trials == 0) throw SizeError("trials must be at least 1");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0) throw SizeError("sample sizes must be at least 1");
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw SizeError("sample sizes must be strictly increasing");
  }
}

// Draws trial `t` of size index `s` into buf and returns (mean, median).
std::pair<double, double> run_trial(const DistributionSpec& dist, std::size_t n,
                                    std::uint64_t trial_seed, std::vector<double>& buf) {
  auto eng = make_engine(trial_seed);
  buf.resize(n);
  for (auto& x : buf) x = dist.draw(eng);
  const double m = mean_of(buf);
  return {m, median_in_place(buf)};
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t size_index, std::size_t trial) {
  return derive_seed(derive_seed(seed, size_index), trial);
}

double stderr_of(std::span<const double> xs, double mean) {
  if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = ss / static_cast<double>(xs.size() - 1);
  return std::sqrt(var / static_cast<double>(xs.size()));
}

ScalingPoint summarize_trials(std::size_t n, std::vector<double>& means,
                              std::vector<double>& medians) {
  ScalingPoint p;
  p.n = n;
  p.trials = means.size();
  p.mean_of_means = mean_of(means);
  p.mean_of_medians = mean_of(medians);
  p.stderr_means = stderr_of(means, p.mean_of_means);
  p.stderr_medians = stderr_of(medians, p.mean_of_medians);
  p.median_of_means = median_in_place(means);
  return p;
}

}  // namespace

DistributionSpec::DistributionSpec(Params params) : params_(params) {
  std::visit(overloaded{
                 [](const Exponential& e) { require_positive(e.rate, "exponential rate"); },
                 [](const LogNormal& l) {
                   if (!std::isfinite(l.mu)) throw SpecError("lognormal mu must be finite");
                   require_positive(l.sigma, "lognormal sigma");
                 },
                 [](const Pareto& p) {
                   require_positive(p.alpha, "pareto alpha");
                   require_positive(p.x_min, "pareto x_min");
                 },
             },
             params_);
}

DistributionSpec DistributionSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw SpecError("distribution must look like family:params, got '" + std::string(text) + "'");
  }
  const auto family = text.substr(0, colon);
  std::vector<double> args;
  auto rest = text.substr(colon + 1);
  while (true) {
    const auto comma = rest.find(',');
    args.push_back(parse_number(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  auto expect = [&](std::size_t k) {
    if (args.size() != k) {
      throw SpecError(std::string(family) + " takes " + std::to_string(k) + " parameter(s)");
    }
  };
  if (family == "exponential" || family == "exp") {
    expect(1);
    return exponential(args[0]);
  }
  if (family == "lognormal") {
    expect(2);
    return lognormal(args[0], args[1]);
  }
  if (family == "pareto") {
    expect(2);
    return pareto(args[0], args[1]);
  }
  throw SpecError("unknown distribution family '" + std::string(family) + "'");
}

std::string DistributionSpec::family() const {
  return std::visit(overloaded{
                        [](const Exponential&) { return std::string("exponential"); },
                        [](const LogNormal&) { return std::string("lognormal"); },
                        [](const Pareto&) { return std::string("pareto"); },
                    },
                    params_);
}

std::string DistributionSpec::to_string() const {
  return std::visit(
      overloaded{
          [](const Exponential& e) { return "exponential:" + format_double(e.rate); },
          [](const LogNormal& l) {
            return "lognormal:" + format_double(l.mu) + "," + format_double(l.sigma);
          },
          [](const Pareto& p) {
            return "pareto:" + format_double(p.alpha) + "," + format_double(p.x_min);
          },
      },
      params_);
}

double DistributionSpec::draw(Engine& eng) const {
  return std::visit(overloaded{
                        [&](const Exponential& e) { return -std::log(uniform_open01(eng)) / e.rate; },
                        [&](const LogNormal& l) {
                          return std::exp(l.mu + l.sigma * standard_normal(eng));
                        },
                        [&](const Pareto& p) {
                          return p.x_min * std::pow(uniform_open01(eng), -1.0 / p.alpha);
                        },
                    },
                    params_);
}

double DistributionSpec::cdf(double x) const {
  return std::visit(overloaded{
                        [&](const Exponential& e) { return x <= 0.0 ? 0.0 : -std::expm1(-e.rate * x); },
                        [&](const LogNormal& l) {
                          if (x <= 0.0) return 0.0;
                          return 0.5 * std::erfc(-(std::log(x) - l.mu) / (l.sigma * std::numbers::sqrt2));
                        },
                        [&](const Pareto& p) {
                          return x <= p.x_min ? 0.0 : 1.0 - std::pow(p.x_min / x, p.alpha);
                        },
                    },
                    params_);
}

double analytic_median(const DistributionSpec& dist) {
  return std::visit(overloaded{
                        [](const Exponential& e) { return std::numbers::ln2 / e.rate; },
                        [](const LogNormal& l) { return std::exp(l.mu); },
                        [](const Pareto& p) { return p.x_min * std::pow(2.0, 1.0 / p.alpha); },
                    },
                    dist.params());
}

Moments analytic_moments(const DistributionSpec& dist) {
  const double mean = std::visit(
      overloaded{
          [](const Exponential& e) { return 1.0 / e.rate; },
          [](const LogNormal& l) { return std::exp(l.mu + l.sigma * l.sigma / 2.0); },
          [](const Pareto& p) {
            if (p.alpha <= 1.0) {
              throw UndefinedMeanError("pareto mean is infinite for alpha <= 1 (alpha = " +
                                       std::to_string(p.alpha) + ")");
            }
            return p.alpha * p.x_min / (p.alpha - 1.0);
          },
      },
      dist.params());
  return {mean, analytic_median(dist)};
}

std::vector<double> sample(const DistributionSpec& dist, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw SizeError("sample size must be at least 1");
  auto eng = make_engine(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = dist.draw(eng);
  return out;
}

ScalingCurve mean_median_scaling(const DistributionSpec& dist, std::span<const std::size_t> sizes,
                                 std::size_t trials, std::uint64_t seed) {
  check_sizes(sizes, trials);
  ScalingCurve curve{dist.to_string(), {}};
  std::vector<double> means(trials), medians(trials);
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    const std::size_t n = sizes[s];
#pragma omp parallel
    {
      std::vector<double> buf;
#pragma omp for schedule(static)
      for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
        const auto i = static_cast<std::size_t>(t);
        std::tie(means[i], medians[i]) = run_trial(dist, n, trial_seed(seed, s, i), buf);
      }
    }
    curve.points.push_back(summarize_trials(n, means, medians));
  }
  return curve;
}

namespace serial {

ScalingCurve mean_median_scaling(const DistributionSpec& dist, std::span<const std::size_t> sizes,
                                 std::size_t trials, std::uint64_t seed) {
  check_sizes(sizes, trials);
  ScalingCurve curve{dist.to_string(), {}};
  std::vector<double> buf;
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    std::vector<double> means, medians;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto [m, med] = run_trial(dist, sizes[s], trial_seed(seed, s, t), buf);
      means.push_back(m);
      medians.push_back(med);
    }
    curve.points.push_back(summarize_trials(sizes[s], means, medians));
  }
  return curve;
}

}  // namespace serial

IidParadoxResult iid_network_paradox(const IidParadoxConfig& config) {
  if (config.n_nodes < 2) throw SizeError("iid network needs at least 2 nodes");
  const auto g = random_out_degree_graph(config.n_nodes, config.degree_dist,
                                         derive_seed(config.seed, 0));
  const auto attr = iid_attribute(config.n_nodes, config.attr_dist, derive_seed(config.seed, 1));
  const auto mean_v =
      kernels::paradox_verdicts(g, attr.values, NeighborRelation::Friends, ParadoxStat::Mean);
  const auto median_v =
      kernels::paradox_verdicts(g, attr.values, NeighborRelation::Friends, ParadoxStat::Median);

  IidParadoxResult res;
  std::vector<IidBucket> by_degree;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto k = g.degree(u, Direction::Out);
    if (k >= by_degree.size()) by_degree.resize(k + 1);
    auto& b = by_degree[k];
    b.friend_count = k;
    ++b.nodes;
    b.in_paradox_mean += mean_v[u] == 1;
    b.in_paradox_median += median_v[u] == 1;
  }
  for (auto& b : by_degree) {
    if (b.nodes == 0) continue;
    b.frac_mean = static_cast<double>(b.in_paradox_mean) / static_cast<double>(b.nodes);
    b.frac_median = static_cast<double>(b.in_paradox_median) / static_cast<double>(b.nodes);
    res.overall_mean.evaluated += b.nodes;
    res.overall_mean.in_paradox += b.in_paradox_mean;
    res.overall_median.evaluated += b.nodes;
    res.overall_median.in_paradox += b.in_paradox_median;
    res.buckets.push_back(b);
  }
  return res;
}

FullyConnectedResult fully_connected_paradox(std::size_t n_nodes, const DistributionSpec& attr_dist,
                                             std::size_t redraws, std::uint64_t seed) {
  if (n_nodes < 2) throw SizeError("fully connected network needs at least 2 nodes");
  if (redraws == 0) throw SizeError("redraws must be at least 1");
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(n_nodes * (n_nodes - 1));
  for (NodeId u = 0; u < n_nodes; ++u) {
    for (NodeId v = 0; v < n_nodes; ++v) {
      if (u != v) edges.emplace_back(u, v);
    }
  }
  const auto g = graph_from_indexed_edges(n_nodes, std::move(edges));

  FullyConnectedResult res;
  res.n_nodes = n_nodes;
  res.frac_mean.resize(redraws);
  res.frac_median.resize(redraws);
  const double n = static_cast<double>(n_nodes);
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(redraws); ++r) {
    const auto i = static_cast<std::size_t>(r);
    const auto values = sample(attr_dist, n_nodes, derive_seed(seed, i));
    const auto cm = kernels::serial::count_paradox(g, values, NeighborRelation::Friends,
                                                   ParadoxStat::Mean);
    const auto cd = kernels::serial::count_paradox(g, values, NeighborRelation::Friends,
                                                   ParadoxStat::Median);
    res.frac_mean[i] = static_cast<double>(cm.in_paradox) / n;
    res.frac_median[i] = static_cast<double>(cd.in_paradox) / n;
  }
  return res;
}

LogBinnedHistogram log_binned_pdf(std::span<const double> values, int bins_per_decade) {
  if (bins_per_decade < 1) throw std::invalid_argument("bins_per_decade must be at least 1");
  LogBinnedHistogram h;
  h.bins_per_decade = bins_per_decade;
  h.total = values.size();
  double lo = INFINITY, hi = 0.0;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError("histogram values must be finite and non-negative");
    }
    if (v == 0.0) {
      ++h.zero_count;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (h.zero_count == h.total) throw EmptyInputError("histogram needs at least one positive value");

  const double b = bins_per_decade;
  auto edge = [&](std::size_t i) { return lo * std::pow(10.0, static_cast<double>(i) / b); };
  auto bin_of = [&](double v) {
    auto i = static_cast<std::size_t>(std::max(0.0, std::floor(b * std::log10(v / lo))));
    while (i > 0 && v < edge(i)) --i;
    while (v >= edge(i + 1)) ++i;
    return i;
  };
  const std::size_t n_bins = bin_of(hi) + 1;
  h.edges.resize(n_bins + 1);
  for (std::size_t i = 0; i <= n_bins; ++i) h.edges[i] = edge(i);
  h.counts.assign(n_bins, 0);
  for (double v : values) {
    if (v > 0.0) ++h.counts[bin_of(v)];
  }
  h.density.resize(n_bins);
  const double total = static_cast<double>(h.total);
  for (std::size_t i = 0; i < n_bins; ++i) {
    h.density[i] = static_cast<double>(h.counts[i]) / (total * (h.edges[i + 1] - h.edges[i]));
  }
  return h;
}

}  // namespace netparadox
