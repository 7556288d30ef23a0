#include "nnd/dist.hpp"

#include <cmath>
#include <stdexcept>

namespace nnd::dist {

AbsoluteDistanceDistribution::AbsoluteDistanceDistribution(
    const ProblemParams& params)
    : params_(params),
      geom_(specfun::geometry_constants(params.dim)),
      shape_a_(static_cast<double>(params.neighbour_index)),
      shape_b_(static_cast<double>(params.point_count - params.neighbour_index)),
      ln_beta_(specfun::ln_beta(shape_a_, shape_b_)) {}

double AbsoluteDistanceDistribution::volume_of_radius(double r) const {
  return geom_.ball_volume_coefficient *
         std::pow(r, static_cast<double>(params_.dim.d));
}

double AbsoluteDistanceDistribution::radius_of_volume(double v) const {
  return std::pow(v / geom_.ball_volume_coefficient,
                  1.0 / static_cast<double>(params_.dim.d));
}

double AbsoluteDistanceDistribution::density(double r) const {
  const double radius = geom_.unit_ball_radius;
  if (r < 0.0 || r > radius) {
    throw std::domain_error("density argument r must lie in [0, R]");
  }
  const double d = static_cast<double>(params_.dim.d);
  // The ball of radius R has unit volume by construction; do not let
  // rounding in coeff * R^D place the endpoint just inside it.
  const double v =
      r >= radius ? 1.0 : std::min(volume_of_radius(r), 1.0);
  // Boundary zeros first so the log-space evaluation never sees log(0).
  if (v <= 0.0) {
    if (shape_a_ > 1.0 || d > 1.0) return 0.0;
    // D = 1, n = 1: density 2 * (1-V)^(N-2) / B(1, N-1) at V = 0.
    return 2.0 * std::exp(-ln_beta_);
  }
  if (v >= 1.0 && shape_b_ > 1.0) return 0.0;
  double ln_p = std::log(geom_.ball_volume_coefficient * d) +
                (d - 1.0) * std::log(r) - ln_beta_;
  if (shape_a_ != 1.0) ln_p += (shape_a_ - 1.0) * std::log(v);
  if (shape_b_ != 1.0) ln_p += (shape_b_ - 1.0) * std::log1p(-v);
  return std::exp(ln_p);
}

double AbsoluteDistanceDistribution::cdf(double r) const {
  const double radius = geom_.unit_ball_radius;
  if (r < 0.0 || r > radius) {
    throw std::domain_error("cdf argument r must lie in [0, R]");
  }
  const double v =
      r >= radius ? 1.0 : std::min(volume_of_radius(r), 1.0);
  return specfun::regularized_incomplete_beta(v, shape_a_, shape_b_);
}

double AbsoluteDistanceDistribution::sample_distance(Xoshiro256pp& rng) const {
  const double u = rng.uniform_open();
  const double v =
      specfun::inverse_regularized_incomplete_beta(u, shape_a_, shape_b_);
  return radius_of_volume(v);
}

double conditional_increment_sample(const ConditionalStep& step,
                                    Xoshiro256pp& rng) {
  const double u = rng.uniform_open();
  const double m = static_cast<double>(step.remaining_points);
  // 1 - (1-u)^(1/m), written so small increments keep full precision
  // and stay strictly positive.
  const double w = -std::expm1(std::log1p(-u) / m);
  return step.prior_volume + (1.0 - step.prior_volume) * w;
}

std::vector<double> conditional_chain_sample(const ProblemParams& p,
                                             Xoshiro256pp& rng) {
  const auto geom = specfun::geometry_constants(p.dim);
  const double inv_d = 1.0 / static_cast<double>(p.dim.d);
  std::vector<double> radii;
  radii.reserve(static_cast<std::size_t>(p.neighbour_index));
  double volume = 0.0;
  for (std::int64_t k = 1; k <= p.neighbour_index; ++k) {
    volume = conditional_increment_sample(
        ConditionalStep(volume, p.point_count - k), rng);
    radii.push_back(std::pow(volume / geom.ball_volume_coefficient, inv_d));
  }
  return radii;
}

}  // namespace nnd::dist
