#pragma once

#include <cstdint>
#include <vector>

#include "nnd/rng.hpp"
#include "nnd/specfun.hpp"
#include "nnd/types.hpp"

// Distributions of the n-th neighbour distance: the absolute (marginal)
// distribution, whose enclosed volume is Beta(n, N-n), and the
// conditional chain that builds r_1 <= r_2 <= ... <= r_n step by step.
// Both give exact samplers; their agreement is one of the project's
// cross-checks.

namespace nnd::dist {

// Marginal distribution of r_n. Immutable after construction and
// shareable across threads; sampling uses a caller-owned stream.
class AbsoluteDistanceDistribution {
 public:
  explicit AbsoluteDistanceDistribution(const ProblemParams& params);

  const ProblemParams& params() const { return params_; }
  double shape_a() const { return shape_a_; }  // n
  double shape_b() const { return shape_b_; }  // N - n
  double max_radius() const { return geom_.unit_ball_radius; }

  // Density P(r) = coeff * D * r^(D-1) * V^(n-1) (1-V)^(N-n-1) / B(n, N-n)
  // with V = coeff * r^D. Throws std::domain_error outside [0, R].
  double density(double r) const;

  // P(r_n <= r) = I_V(n, N-n).
  double cdf(double r) const;

  // Inverse-CDF draw of r_n.
  double sample_distance(Xoshiro256pp& rng) const;

  // Enclosed volume coeff * r^D of a radius, and its inverse.
  double volume_of_radius(double r) const;
  double radius_of_volume(double v) const;

 private:
  ProblemParams params_;
  specfun::GeometryConstants geom_;
  double shape_a_;
  double shape_b_;
  double ln_beta_;
};

// One step of the conditional construction: given the volume V_{n-1}
// enclosed by the previous neighbour, the next neighbour is the closest
// of the remaining points.
struct ConditionalStep {
  double prior_volume;             // V_{n-1} in [0, 1)
  std::int64_t remaining_points;   // N - n >= 1

  ConditionalStep(double prior, std::int64_t remaining)
      : prior_volume(prior), remaining_points(remaining) {
    if (!(prior_volume >= 0.0 && prior_volume < 1.0)) {
      throw std::domain_error("prior_volume must lie in [0, 1)");
    }
    if (remaining_points < 1) {
      throw std::domain_error("remaining_points must be >= 1");
    }
  }
};

// Draws V_n given V_{n-1}: the normalized increment
// W = (V_n - V_{n-1}) / (1 - V_{n-1}) has CDF 1 - (1-w)^m for
// m = remaining_points, inverted in closed form. Result is always in
// (prior_volume, 1).
double conditional_increment_sample(const ConditionalStep& step,
                                    Xoshiro256pp& rng);

// Full chain r_1 ... r_n, nondecreasing; the marginal law of r_n equals
// AbsoluteDistanceDistribution(p).
std::vector<double> conditional_chain_sample(const ProblemParams& p,
                                             Xoshiro256pp& rng);

}  // namespace nnd::dist
