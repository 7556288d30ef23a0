#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nnd {

// Euclidean dimension D of the ambient space.
struct Dimension {
  int d;

  explicit Dimension(int dim) : d(dim) {
    if (d < 1) {
      throw std::domain_error("dimension must satisfy dim >= 1 (got dim=" +
                              std::to_string(d) + ")");
    }
  }
};

// One instance of the question "mean distance to the n-th neighbour":
// N points per unit volume (including the reference point), neighbour
// index n with 1 <= n <= N - 1.
struct ProblemParams {
  Dimension dim;
  std::int64_t neighbour_index;  // n
  std::int64_t point_count;      // N

  ProblemParams(Dimension d, std::int64_t n, std::int64_t big_n)
      : dim(d), neighbour_index(n), point_count(big_n) {
    if (neighbour_index < 1 || neighbour_index >= point_count) {
      throw std::invalid_argument(
          "neighbour index must satisfy 1 <= n < points (got n=" +
          std::to_string(neighbour_index) +
          ", points=" + std::to_string(point_count) + ")");
    }
  }
};

}  // namespace nnd
