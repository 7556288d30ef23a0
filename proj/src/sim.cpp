#include "nnd/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "nnd/dist.hpp"
#include "nnd/specfun.hpp"

namespace nnd::sim {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// Substream ids: high word selects the engine family, low word the trial
// partition, so the three engines never share uniforms.
enum class StreamTag : std::uint64_t { spatial = 0, absolute = 1, chain = 2 };

std::uint64_t stream_id(StreamTag tag, std::uint64_t partition) {
  return (static_cast<std::uint64_t>(tag) << 32) | partition;
}

// Trials are split over a fixed number of partitions; workers pick up
// whole partitions, and partials merge in partition order, so the
// result is bitwise independent of scheduling.
constexpr std::int64_t kMaxPartitions = 64;

std::int64_t partition_count(std::int64_t trials) {
  return std::min(trials, kMaxPartitions);
}

std::int64_t partition_trials(std::int64_t trials, std::int64_t partitions,
                              std::int64_t j) {
  return trials / partitions + (j < trials % partitions ? 1 : 0);
}

template <typename PartitionFn>
void run_partitions(std::int64_t partitions, int workers, PartitionFn fn) {
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  workers = static_cast<int>(
      std::min<std::int64_t>(workers, partitions));
  if (workers <= 1) {
    for (std::int64_t j = 0; j < partitions; ++j) fn(j);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::int64_t j = next++; j < partitions; j = next++) fn(j);
    });
  }
  for (auto& t : pool) t.join();
}

// Box-Muller pair of standard normals from two open-interval uniforms.
void gaussian_pair(Xoshiro256pp& rng, double& g0, double& g1) {
  const double u1 = rng.uniform_open();
  const double u2 = rng.uniform_open();
  const double r = std::sqrt(-2.0 * std::log(u1));
  g0 = r * std::cos(kTwoPi * u2);
  g1 = r * std::sin(kTwoPi * u2);
}

double squared_norm(std::span<const double> x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return s;
}

std::vector<double> reference_distances(const PointCloud& cloud) {
  const auto count = cloud.point_count();
  std::vector<double> distances(count);
  for (std::size_t i = 0; i < count; ++i) {
    distances[i] = std::sqrt(squared_norm(cloud.point(i)));
  }
  return distances;
}

TrialResult make_trial_result(const PointCloud& cloud,
                              std::vector<double> distances) {
  const auto geom = specfun::geometry_constants(cloud.dim);
  const double d = static_cast<double>(cloud.dim.d);
  TrialResult result;
  result.enclosed_volumes.reserve(distances.size());
  for (double r : distances) {
    result.enclosed_volumes.push_back(
        std::min(geom.ball_volume_coefficient * std::pow(r, d), 1.0));
  }
  result.distances = std::move(distances);
  return result;
}

void validate_k(const PointCloud& cloud, std::int64_t k) {
  if (k < 1 || static_cast<std::size_t>(k) > cloud.point_count()) {
    throw std::invalid_argument(
        "neighbour count k must satisfy 1 <= k <= point count (got k=" +
        std::to_string(k) + ", points=" + std::to_string(cloud.point_count()) +
        ")");
  }
}

}  // namespace

double SampleStats::standard_error() const {
  return count >= 2 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
}

PointCloud generate_cloud(const ProblemParams& p, Xoshiro256pp& rng) {
  const int d = p.dim.d;
  const auto geom = specfun::geometry_constants(p.dim);
  const std::size_t count = static_cast<std::size_t>(p.point_count - 1);

  PointCloud cloud{p.dim, geom.unit_ball_radius, {}};
  cloud.coords.resize(count * static_cast<std::size_t>(d));

  std::vector<double> gauss(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < count; ++i) {
    // Isotropic direction from a normalized Gaussian vector, radius from
    // R * u^(1/D); together they give a uniform draw in the ball.
    double norm2 = 0.0;
    do {
      for (int c = 0; c + 1 < d; c += 2) {
        gaussian_pair(rng, gauss[c], gauss[c + 1]);
      }
      if (d % 2 == 1) {
        double spare;
        gaussian_pair(rng, gauss[static_cast<std::size_t>(d) - 1], spare);
      }
      norm2 = squared_norm(gauss);
    } while (norm2 == 0.0);

    const double radius =
        geom.unit_ball_radius *
        std::pow(rng.uniform_open(), 1.0 / static_cast<double>(d));
    const double scale = radius / std::sqrt(norm2);
    double* out = cloud.coords.data() + i * static_cast<std::size_t>(d);
    for (int c = 0; c < d; ++c) out[c] = gauss[static_cast<std::size_t>(c)] * scale;
  }
  return cloud;
}

TrialResult knn_distances(const PointCloud& cloud, std::int64_t k) {
  validate_k(cloud, k);
  std::vector<double> distances = reference_distances(cloud);
  const auto kk = static_cast<std::ptrdiff_t>(k);
  if (static_cast<std::size_t>(k) < distances.size()) {
    std::nth_element(distances.begin(), distances.begin() + (kk - 1),
                     distances.end());
    distances.resize(static_cast<std::size_t>(k));
  }
  std::sort(distances.begin(), distances.end());
  return make_trial_result(cloud, std::move(distances));
}

TrialResult knn_distances_brute(const PointCloud& cloud, std::int64_t k) {
  validate_k(cloud, k);
  std::vector<double> distances = reference_distances(cloud);
  std::sort(distances.begin(), distances.end());
  distances.resize(static_cast<std::size_t>(k));
  return make_trial_result(cloud, std::move(distances));
}

SpatialTrialStats run_spatial_trials(const ProblemParams& p,
                                     std::int64_t trials, std::uint64_t seed,
                                     int workers) {
  if (trials < 2) {
    throw std::invalid_argument("spatial trials must be >= 2 (got " +
                                std::to_string(trials) + ")");
  }
  const std::int64_t n = p.neighbour_index;
  const std::int64_t partitions = partition_count(trials);

  std::vector<SpatialTrialStats> partials(
      static_cast<std::size_t>(partitions));
  run_partitions(partitions, workers, [&](std::int64_t j) {
    auto rng = Xoshiro256pp::substream(
        seed, stream_id(StreamTag::spatial, static_cast<std::uint64_t>(j)));
    SpatialTrialStats local;
    local.distance.resize(static_cast<std::size_t>(n));
    local.enclosed_volume.resize(static_cast<std::size_t>(n));
    const std::int64_t local_trials = partition_trials(trials, partitions, j);
    for (std::int64_t t = 0; t < local_trials; ++t) {
      const PointCloud cloud = generate_cloud(p, rng);
      const TrialResult res = knn_distances(cloud, n);
      for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
        local.distance[i].push(res.distances[i]);
        local.enclosed_volume[i].push(res.enclosed_volumes[i]);
      }
    }
    partials[static_cast<std::size_t>(j)] = std::move(local);
  });

  SpatialTrialStats total;
  total.distance.resize(static_cast<std::size_t>(n));
  total.enclosed_volume.resize(static_cast<std::size_t>(n));
  for (const auto& part : partials) {
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
      total.distance[i].merge(part.distance[i]);
      total.enclosed_volume[i].merge(part.enclosed_volume[i]);
    }
  }
  return total;
}

SamplerEngine sampler_engine_from_name(std::string_view name) {
  if (name == "absolute") return SamplerEngine::absolute;
  if (name == "chain") return SamplerEngine::chain;
  throw std::invalid_argument("unknown sampler engine '" + std::string(name) +
                              "' (expected absolute or chain)");
}

SampleStats run_sampler_trials(const ProblemParams& p, std::int64_t trials,
                               SamplerEngine engine, std::uint64_t seed,
                               int workers) {
  if (trials < 1) {
    throw std::invalid_argument("sampler trials must be >= 1 (got " +
                                std::to_string(trials) + ")");
  }
  const StreamTag tag = engine == SamplerEngine::absolute ? StreamTag::absolute
                                                          : StreamTag::chain;
  const dist::AbsoluteDistanceDistribution marginal(p);
  const std::int64_t partitions = partition_count(trials);

  std::vector<SampleStats> partials(static_cast<std::size_t>(partitions));
  run_partitions(partitions, workers, [&](std::int64_t j) {
    auto rng =
        Xoshiro256pp::substream(seed, stream_id(tag, static_cast<std::uint64_t>(j)));
    SampleStats local;
    const std::int64_t local_trials = partition_trials(trials, partitions, j);
    for (std::int64_t t = 0; t < local_trials; ++t) {
      if (engine == SamplerEngine::absolute) {
        local.push(marginal.sample_distance(rng));
      } else {
        local.push(dist::conditional_chain_sample(p, rng).back());
      }
    }
    partials[static_cast<std::size_t>(j)] = local;
  });

  SampleStats total;
  for (const auto& part : partials) total.merge(part);
  return total;
}

}  // namespace nnd::sim
