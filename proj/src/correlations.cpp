#include "netparadox/correlations.hpp"

#include <vector>

#include "netparadox/errors.hpp"
#include "netparadox/kernels.hpp"

namespace netparadox {

const char* to_string(CorrelationKind k) noexcept {
  switch (k) {
    case CorrelationKind::WithinNode:
      return "within_node";
    case CorrelationKind::Assortativity:
      return "assortativity";
    case CorrelationKind::DegreeAssortativity:
      return "degree_assortativity";
  }
  return "?";
}

namespace {

std::vector<double> degree_values(const DirectedGraph& g, Direction dir) {
  std::vector<double> out;
  out.reserve(g.node_count());
  for (auto d : g.degrees(dir)) out.push_back(static_cast<double>(d));
  return out;
}

CorrelationReport make(CorrelationKind kind, std::string attribute, const PearsonResult& p) {
  CorrelationReport r;
  r.kind = kind;
  r.attribute = std::move(attribute);
  r.r = p.r;
  r.n = p.n;
  r.defined = p.defined;
  return r;
}

}  // namespace

PearsonResult pearson(std::span<const double> xs, std::span<const double> ys) {
  return kernels::pearson(xs, ys);
}

CorrelationReport within_node_correlation(const DirectedGraph& g, const AttributeTable& attr) {
  require_coverage(g, attr);
  if (g.node_count() < 2) throw SizeError("within-node correlation needs at least 2 nodes");
  const auto deg = degree_values(g, Direction::Out);
  return make(CorrelationKind::WithinNode, attr.name, kernels::pearson(deg, attr.values));
}

CorrelationReport attribute_assortativity(const DirectedGraph& g, const AttributeTable& attr) {
  require_coverage(g, attr);
  return make(CorrelationKind::Assortativity, attr.name,
              kernels::edge_pearson(g, attr.values, attr.values));
}

CorrelationReport degree_assortativity(const DirectedGraph& g, Direction src_dir,
                                       Direction dst_dir) {
  const auto src = degree_values(g, src_dir);
  const auto dst = src_dir == dst_dir ? src : degree_values(g, dst_dir);
  std::string name = src_dir != dst_dir ? std::string("degree_") + to_string(src_dir) + "_" +
                                              to_string(dst_dir)
                     : src_dir == Direction::Out ? "friend_count"
                                                 : "follower_count";
  auto r = make(CorrelationKind::DegreeAssortativity, std::move(name),
                kernels::edge_pearson(g, src, dst));
  r.src_dir = src_dir;
  r.dst_dir = dst_dir;
  return r;
}

}  // namespace netparadox
