#pragma once

// Brute-force reference computations used only by the tests. They work from
// raw edge lists and sorted copies and share no code with the library paths
// they check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Edge = std::pair<std::size_t, std::size_t>;

inline std::vector<double> neighbor_values(std::size_t n, const std::vector<Edge>& edges,
                                           const std::vector<double>& attr, std::size_t u,
                                           bool friends) {
  std::vector<double> out;
  std::set<std::size_t> seen;
  for (const auto& [s, d] : edges) {
    if (s == d) continue;
    const std::size_t other = friends ? (s == u ? d : n) : (d == u ? s : n);
    if (other != n && seen.insert(other).second) out.push_back(attr[other]);
  }
  return out;
}

inline double full_sort_median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t k = xs.size();
  return k % 2 ? xs[k / 2] : (xs[k / 2 - 1] + xs[k / 2]) / 2.0;
}

struct Count {
  std::size_t evaluated = 0;
  std::size_t in_paradox = 0;
};

/// Double loop over nodes and the raw edge list.
inline Count paradox(std::size_t n, const std::vector<Edge>& edges,
                     const std::vector<double>& attr, bool friends, bool use_median) {
  Count c;
  for (std::size_t u = 0; u < n; ++u) {
    const auto nb = neighbor_values(n, edges, attr, u, friends);
    if (nb.empty()) continue;
    ++c.evaluated;
    double summary;
    if (use_median) {
      summary = full_sort_median(nb);
    } else {
      long double s = 0;
      for (double x : nb) s += x;
      summary = static_cast<double>(s / nb.size());
    }
    if (summary > attr[u]) ++c.in_paradox;
  }
  return c;
}

/// Textbook single-formula Pearson in long double.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const long double n = x.size();
  long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += (long double)x[i] * x[i];
    syy += (long double)y[i] * y[i];
    sxy += (long double)x[i] * y[i];
  }
  const long double cov = n * sxy - sx * sy;
  const long double vx = n * sxx - sx * sx;
  const long double vy = n * syy - sy * sy;
  return static_cast<double>(cov / std::sqrt(vx * vy));
}

/// Wilson interval written out from the closed form with z = 1.959963984540054.
inline std::pair<double, double> wilson95(double k, double n) {
  const double z = 1.959963984540054;
  const double p = k / n;
  const double a = p + z * z / (2 * n);
  const double b = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n));
  const double c = 1 + z * z / n;
  return {(a - b) / c, (a + b) / c};
}

/// Kolmogorov-Smirnov statistic of a sample against a CDF.
template <class Cdf>
double ks_statistic(std::vector<double> xs, Cdf&& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = xs.size();
  double d = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, f - i / n, (i + 1) / n - f});
  }
  return d;
}

/// P(midpoint of two iid Pareto(alpha, 1) draws > a third draw), by a
/// midpoint rule over the unit square in quantile coordinates.
inline double pareto_pair_midpoint_exceeds(double alpha, int grid = 2000) {
  auto q = [&](double u) { return std::pow(u, -1.0 / alpha); };  // survival-quantile
  double acc = 0;
  for (int i = 0; i < grid; ++i) {
    const double x1 = q((i + 0.5) / grid);
    for (int j = 0; j < grid; ++j) {
      const double m = (x1 + q((j + 0.5) / grid)) / 2.0;
      acc += 1.0 - std::pow(m, -alpha);  // P(X0 < m)
    }
  }
  return acc / (double(grid) * grid);
}

/// Spearman rank correlation with average ranks for ties.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j < idx.size() && v[idx[j]] == v[idx[i]]) ++j;
      for (std::size_t k = i; k < j; ++k) r[idx[k]] = (i + j - 1) / 2.0;
      i = j;
    }
    return r;
  };
  return pearson(ranks(x), ranks(y));
}

}  // namespace oracle
