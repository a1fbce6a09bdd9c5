#pragma once

#include <algorithm>
#include <span>

namespace netparadox {

/// Median of a non-empty sample; an even-length sample gives the midpoint of
/// the central pair. Reorders the input.
inline double median_in_place(std::span<double> xs) {
  const std::size_t k = xs.size();
  const auto mid = xs.begin() + static_cast<std::ptrdiff_t>(k / 2);
  std::nth_element(xs.begin(), mid, xs.end());
  if (k % 2 == 1) return *mid;
  return (*std::max_element(xs.begin(), mid) + *mid) / 2.0;
}

/// Arithmetic mean of a non-empty sample, summed left to right.
inline double mean_of(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

}  // namespace netparadox
