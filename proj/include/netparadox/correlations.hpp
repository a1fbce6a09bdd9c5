#pragma once

#include <span>
#include <string>

#include "netparadox/attributes.hpp"
#include "netparadox/graph.hpp"
#include "netparadox/types.hpp"

namespace netparadox {

enum class CorrelationKind { WithinNode, Assortativity, DegreeAssortativity };

const char* to_string(CorrelationKind k) noexcept;

struct CorrelationReport {
  CorrelationKind kind = CorrelationKind::WithinNode;
  std::string attribute;
  /// Degree directions of the (source, target) endpoints; only meaningful
  /// for DegreeAssortativity.
  Direction src_dir = Direction::Out;
  Direction dst_dir = Direction::Out;
  double r = 0.0;  ///< NaN when !defined
  std::size_t n = 0;
  bool defined = false;
};

/// Product-moment correlation. Zero-variance input yields defined == false.
/// Throws SizeError for mismatched lengths or fewer than two pairs.
PearsonResult pearson(std::span<const double> xs, std::span<const double> ys);

/// Correlation across nodes of friend count (out-degree) with the attribute.
CorrelationReport within_node_correlation(const DirectedGraph& g, const AttributeTable& attr);

/// Correlation of the attribute across the endpoints (u, v) of every
/// directed edge u -> v, without symmetrization.
CorrelationReport attribute_assortativity(const DirectedGraph& g, const AttributeTable& attr);

/// Edge correlation of degree(u, src_dir) with degree(v, dst_dir).
CorrelationReport degree_assortativity(const DirectedGraph& g, Direction src_dir = Direction::Out,
                                       Direction dst_dir = Direction::Out);

}  // namespace netparadox
