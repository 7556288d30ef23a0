#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "nnd/rng.hpp"
#include "nnd/types.hpp"

// Spatial Monte Carlo engine: uniform point clouds in the unit-volume
// D-ball around a central reference point, exact k-nearest-neighbour
// distances, and mergeable streaming statistics. Trials are partitioned
// into fixed substreams so results depend only on (params, trials, seed),
// never on the worker count.

namespace nnd::sim {

// Streaming (count, mean, m2) accumulator using Welford's one-pass
// update; partial accumulators merge exactly (Chan et al.).
struct SampleStats {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations from the mean

  void push(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const SampleStats& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double delta = other.mean - mean;
    const double total = static_cast<double>(count + other.count);
    mean += delta * static_cast<double>(other.count) / total;
    m2 += other.m2 + delta * delta * static_cast<double>(count) *
                         static_cast<double>(other.count) / total;
    count += other.count;
  }

  double variance() const {
    return count >= 2 ? m2 / static_cast<double>(count - 1) : 0.0;
  }

  double standard_error() const;
};

// N-1 points i.i.d. uniform in the ball of radius R centred at the
// reference point (the origin). Coordinates stored row-major.
struct PointCloud {
  Dimension dim;
  double radius;
  std::vector<double> coords;

  std::size_t point_count() const {
    return coords.size() / static_cast<std::size_t>(dim.d);
  }

  std::span<const double> point(std::size_t i) const {
    const auto d = static_cast<std::size_t>(dim.d);
    return {coords.data() + i * d, d};
  }
};

// The k smallest reference-point distances of one cloud, ascending,
// with the corresponding enclosed volumes coeff * r^D.
struct TrialResult {
  std::vector<double> distances;
  std::vector<double> enclosed_volumes;
};

PointCloud generate_cloud(const ProblemParams& p, Xoshiro256pp& rng);

// Exact k-NN kernel: partial selection of the k smallest distances
// (no full sort when k < point count).
TrialResult knn_distances(const PointCloud& cloud, std::int64_t k);

// Reference path: full sort, then truncate. Must agree with
// knn_distances to the last bit.
TrialResult knn_distances_brute(const PointCloud& cloud, std::int64_t k);

// Distance and enclosed-volume statistics per neighbour index 1..n.
struct SpatialTrialStats {
  std::vector<SampleStats> distance;
  std::vector<SampleStats> enclosed_volume;
};

// Runs `trials` independent clouds; deterministic given (p, trials,
// seed) for any worker count (0 = hardware concurrency).
SpatialTrialStats run_spatial_trials(const ProblemParams& p,
                                     std::int64_t trials, std::uint64_t seed,
                                     int workers = 0);

// Analytic sampling engines driven for cross-engine comparison.
enum class SamplerEngine { absolute, chain };

// Parses "absolute" or "chain"; throws std::invalid_argument otherwise.
SamplerEngine sampler_engine_from_name(std::string_view name);

// Mean/variance of r_n under the selected engine; deterministic given
// seed, independent of worker count.
SampleStats run_sampler_trials(const ProblemParams& p, std::int64_t trials,
                               SamplerEngine engine, std::uint64_t seed,
                               int workers = 0);

}  // namespace nnd::sim
