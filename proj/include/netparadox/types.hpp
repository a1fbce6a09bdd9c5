#pragma once

#include <cstddef>
#include <limits>

#include "netparadox/graph.hpp"

namespace netparadox {

/// Which "average" of the neighbors' values a node is compared against.
enum class ParadoxStat { Mean, Median };

/// Neighbors whose values are summarized: friends (out) or followers (in).
enum class NeighborRelation { Friends, Followers };

constexpr Direction direction_of(NeighborRelation r) noexcept {
  return r == NeighborRelation::Friends ? Direction::Out : Direction::In;
}

const char* to_string(ParadoxStat s) noexcept;
const char* to_string(NeighborRelation r) noexcept;

/// Pearson product-moment coefficient. `defined` is false when either margin
/// has zero variance; r is NaN in that case.
struct PearsonResult {
  double r = std::numeric_limits<double>::quiet_NaN();
  std::size_t n = 0;
  bool defined = false;
};

struct ParadoxCount {
  std::size_t evaluated = 0;  ///< nodes with at least one neighbor
  std::size_t in_paradox = 0;
  std::size_t excluded = 0;   ///< nodes with no neighbor
};

}  // namespace netparadox
