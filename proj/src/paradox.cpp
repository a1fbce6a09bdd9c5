#include "netparadox/paradox.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "netparadox/errors.hpp"
#include "netparadox/kernels.hpp"
#include "netparadox/stats.hpp"

namespace netparadox {

double neighbor_summary(std::span<const double> values, ParadoxStat stat) {
  if (values.empty()) throw EmptyInputError("neighbor summary of an empty sample");
  if (stat == ParadoxStat::Mean) return mean_of(values);
  std::vector<double> buf(values.begin(), values.end());
  return median_in_place(buf);
}

bool node_in_paradox(double own, std::span<const double> neighbor_values, ParadoxStat stat) {
  return neighbor_summary(neighbor_values, stat) > own;
}

Interval proportion_ci(std::size_t successes, std::size_t n, double level) {
  if (n == 0) throw EmptyInputError("confidence interval of an empty sample");
  if (successes > n) throw std::invalid_argument("successes exceed sample size");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level must be in (0, 1)");

  const double z = boost::math::quantile(boost::math::normal(), 0.5 + level / 2.0);
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  Interval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
  // Pin the boundaries and keep the point estimate inside the interval.
  if (successes == 0) ci.low = 0.0;
  if (successes == n) ci.high = 1.0;
  ci.low = std::min(ci.low, p);
  ci.high = std::max(ci.high, p);
  return ci;
}

namespace {

ParadoxReport make_report(std::string attribute, NeighborRelation relation, ParadoxStat stat,
                          const ParadoxCount& c, double level) {
  ParadoxReport r;
  r.attribute = std::move(attribute);
  r.relation = relation;
  r.stat = stat;
  r.nodes_evaluated = c.evaluated;
  r.nodes_in_paradox = c.in_paradox;
  r.nodes_excluded = c.excluded;
  if (c.evaluated == 0) {
    r.fraction = r.ci_low = r.ci_high = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  r.fraction = static_cast<double>(c.in_paradox) / static_cast<double>(c.evaluated);
  const auto ci = proportion_ci(c.in_paradox, c.evaluated, level);
  r.ci_low = ci.low;
  r.ci_high = ci.high;
  return r;
}

}  // namespace

ParadoxReport paradox_fraction(const DirectedGraph& g, const AttributeTable& attr,
                               NeighborRelation relation, ParadoxStat stat, double level) {
  require_coverage(g, attr);
  const auto c = kernels::count_paradox(g, attr.values, relation, stat);
  return make_report(attr.name, relation, stat, c, level);
}

std::vector<ParadoxReport> friendship_paradox_suite(const DirectedGraph& g, double level) {
  std::vector<ParadoxReport> out;
  for (const auto dir : {Direction::Out, Direction::In}) {
    AttributeTable attr{dir == Direction::Out ? "friend_count" : "follower_count", {}};
    for (auto d : g.degrees(dir)) attr.values.push_back(static_cast<double>(d));
    for (const auto rel : {NeighborRelation::Friends, NeighborRelation::Followers}) {
      for (const auto stat : {ParadoxStat::Mean, ParadoxStat::Median}) {
        out.push_back(paradox_fraction(g, attr, rel, stat, level));
      }
    }
  }
  return out;
}

}  // namespace netparadox
