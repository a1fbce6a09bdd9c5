#include "netparadox/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "netparadox/errors.hpp"
#include "netparadox/stats.hpp"

namespace netparadox {

const char* to_string(ParadoxStat s) noexcept { return s == ParadoxStat::Mean ? "mean" : "median"; }

const char* to_string(NeighborRelation r) noexcept {
  return r == NeighborRelation::Friends ? "friends" : "followers";
}

namespace kernels {

namespace {

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  void add(const CompensatedSum& o) {
    add(o.sum);
    add(o.comp);
  }
  double value() const { return sum + comp; }
};

struct Offsets {
  std::span<const std::size_t> offsets;
  std::span<const NodeId> cols;
};

Offsets adjacency(const DirectedGraph& g, NeighborRelation relation) {
  if (relation == NeighborRelation::Friends) return {g.out_offsets(), g.out_targets()};
  return {g.in_offsets(), g.in_sources()};
}

void check_values(const DirectedGraph& g, std::span<const double> values) {
  if (values.size() != g.node_count()) {
    throw ReferenceError("attribute has " + std::to_string(values.size()) +
                         " values but the graph has " + std::to_string(g.node_count()) + " nodes");
  }
}

// Summary of values over nbrs; `buf` is scratch space for the median.
double summarize(std::span<const NodeId> nbrs, std::span<const double> values, ParadoxStat stat,
                 std::vector<double>& buf) {
  if (stat == ParadoxStat::Mean) {
    double s = 0.0;
    for (NodeId v : nbrs) s += values[v];
    return s / static_cast<double>(nbrs.size());
  }
  buf.clear();
  for (NodeId v : nbrs) buf.push_back(values[v]);
  return median_in_place(buf);
}

signed char verdict(const Offsets& adj, NodeId u, std::span<const double> values,
                    ParadoxStat stat, std::vector<double>& buf) {
  const auto begin = adj.offsets[u];
  const auto end = adj.offsets[u + 1];
  if (begin == end) return -1;
  const auto nbrs = adj.cols.subspan(begin, end - begin);
  return summarize(nbrs, values, stat, buf) > values[u] ? 1 : 0;
}

PearsonResult finish(std::size_t n, double sxx, double syy, double sxy, bool degenerate) {
  PearsonResult res;
  res.n = n;
  if (degenerate || sxx <= 0.0 || syy <= 0.0) return res;
  res.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  res.defined = true;
  return res;
}

// Two-pass Pearson over `units` work units, each emitting zero or more (x, y)
// pairs through for_each_pair(i, emit). Units are grouped in fixed-size
// blocks and block partials are combined in block order.
template <class ForEachPair>
PearsonResult blocked_pearson(std::size_t units, std::size_t n_pairs, ForEachPair&& for_each_pair) {
  const std::size_t n_blocks = (units + kBlock - 1) / kBlock;

  struct Pass1 {
    CompensatedSum sx, sy;
    double min_x = INFINITY, max_x = -INFINITY, min_y = INFINITY, max_y = -INFINITY;
  };
  std::vector<Pass1> p1(n_blocks);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(n_blocks); ++b) {
    auto& acc = p1[static_cast<std::size_t>(b)];
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(units, lo + kBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      for_each_pair(i, [&](double x, double y) {
        acc.sx.add(x);
        acc.sy.add(y);
        acc.min_x = std::min(acc.min_x, x);
        acc.max_x = std::max(acc.max_x, x);
        acc.min_y = std::min(acc.min_y, y);
        acc.max_y = std::max(acc.max_y, y);
      });
    }
  }
  CompensatedSum sx, sy;
  double min_x = INFINITY, max_x = -INFINITY, min_y = INFINITY, max_y = -INFINITY;
  for (const auto& acc : p1) {
    sx.add(acc.sx);
    sy.add(acc.sy);
    min_x = std::min(min_x, acc.min_x);
    max_x = std::max(max_x, acc.max_x);
    min_y = std::min(min_y, acc.min_y);
    max_y = std::max(max_y, acc.max_y);
  }
  const double mx = sx.value() / static_cast<double>(n_pairs);
  const double my = sy.value() / static_cast<double>(n_pairs);

  struct Pass2 {
    CompensatedSum sxx, syy, sxy;
  };
  std::vector<Pass2> p2(n_blocks);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(n_blocks); ++b) {
    auto& acc = p2[static_cast<std::size_t>(b)];
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(units, lo + kBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      for_each_pair(i, [&](double x, double y) {
        const double dx = x - mx;
        const double dy = y - my;
        acc.sxx.add(dx * dx);
        acc.syy.add(dy * dy);
        acc.sxy.add(dx * dy);
      });
    }
  }
  CompensatedSum sxx, syy, sxy;
  for (const auto& acc : p2) {
    sxx.add(acc.sxx);
    syy.add(acc.syy);
    sxy.add(acc.sxy);
  }
  const bool degenerate = min_x == max_x || min_y == max_y;
  return finish(n_pairs, sxx.value(), syy.value(), sxy.value(), degenerate);
}

void check_pairs(std::size_t nx, std::size_t ny) {
  if (nx != ny) {
    throw SizeError("pearson: length mismatch (" + std::to_string(nx) + " vs " +
                    std::to_string(ny) + ")");
  }
  if (nx < 2) throw SizeError("pearson: need at least 2 pairs");
}

void check_edges(const DirectedGraph& g, std::span<const double> src_values,
                 std::span<const double> dst_values) {
  check_values(g, src_values);
  check_values(g, dst_values);
  if (g.edge_count() < 2) throw SizeError("edge correlation needs at least 2 edges");
}

}  // namespace

ParadoxCount count_paradox(const DirectedGraph& g, std::span<const double> values,
                           NeighborRelation relation, ParadoxStat stat) {
  check_values(g, values);
  const auto adj = adjacency(g, relation);
  const auto n = static_cast<std::int64_t>(g.node_count());
  std::size_t evaluated = 0, in_paradox = 0, excluded = 0;
#pragma omp parallel reduction(+ : evaluated, in_paradox, excluded)
  {
    std::vector<double> buf;
#pragma omp for schedule(dynamic, 1024)
    for (std::int64_t u = 0; u < n; ++u) {
      const auto v = verdict(adj, static_cast<NodeId>(u), values, stat, buf);
      if (v < 0) {
        ++excluded;
      } else {
        ++evaluated;
        in_paradox += static_cast<std::size_t>(v);
      }
    }
  }
  return {evaluated, in_paradox, excluded};
}

std::vector<signed char> paradox_verdicts(const DirectedGraph& g, std::span<const double> values,
                                          NeighborRelation relation, ParadoxStat stat) {
  check_values(g, values);
  const auto adj = adjacency(g, relation);
  const auto n = static_cast<std::int64_t>(g.node_count());
  std::vector<signed char> out(g.node_count());
#pragma omp parallel
  {
    std::vector<double> buf;
#pragma omp for schedule(dynamic, 1024)
    for (std::int64_t u = 0; u < n; ++u) {
      out[static_cast<std::size_t>(u)] = verdict(adj, static_cast<NodeId>(u), values, stat, buf);
    }
  }
  return out;
}

PearsonResult pearson(std::span<const double> xs, std::span<const double> ys) {
  check_pairs(xs.size(), ys.size());
  return blocked_pearson(xs.size(), xs.size(), [&](std::size_t i, auto&& emit) {
    emit(xs[i], ys[i]);
  });
}

PearsonResult edge_pearson(const DirectedGraph& g, std::span<const double> src_values,
                           std::span<const double> dst_values) {
  check_edges(g, src_values, dst_values);
  const auto offsets = g.out_offsets();
  const auto targets = g.out_targets();
  return blocked_pearson(g.node_count(), g.edge_count(), [&](std::size_t u, auto&& emit) {
    const double x = src_values[u];
    for (std::size_t e = offsets[u]; e < offsets[u + 1]; ++e) emit(x, dst_values[targets[e]]);
  });
}

namespace serial {

ParadoxCount count_paradox(const DirectedGraph& g, std::span<const double> values,
                           NeighborRelation relation, ParadoxStat stat) {
  check_values(g, values);
  ParadoxCount c;
  const auto dir = direction_of(relation);
  std::vector<double> nb;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto nbrs = g.neighbors(u, dir);
    if (nbrs.empty()) {
      ++c.excluded;
      continue;
    }
    ++c.evaluated;
    nb.clear();
    for (NodeId v : nbrs) nb.push_back(values[v]);
    double summary = 0.0;
    if (stat == ParadoxStat::Mean) {
      for (double x : nb) summary += x;
      summary /= static_cast<double>(nb.size());
    } else {
      std::sort(nb.begin(), nb.end());
      const std::size_t k = nb.size();
      summary = k % 2 == 1 ? nb[k / 2] : (nb[k / 2 - 1] + nb[k / 2]) / 2.0;
    }
    if (summary > values[u]) ++c.in_paradox;
  }
  return c;
}

PearsonResult pearson(std::span<const double> xs, std::span<const double> ys) {
  check_pairs(xs.size(), ys.size());
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  bool const_x = true, const_y = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const_x = const_x && xs[i] == xs[0];
    const_y = const_y && ys[i] == ys[0];
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  return finish(xs.size(), sxx, syy, sxy, const_x || const_y);
}

PearsonResult edge_pearson(const DirectedGraph& g, std::span<const double> src_values,
                           std::span<const double> dst_values) {
  check_edges(g, src_values, dst_values);
  std::vector<double> xs, ys;
  xs.reserve(g.edge_count());
  ys.reserve(g.edge_count());
  for (const auto& [u, v] : g.edges()) {
    xs.push_back(src_values[u]);
    ys.push_back(dst_values[v]);
  }
  return pearson(xs, ys);
}

}  // namespace serial

}  // namespace kernels
}  // namespace netparadox
