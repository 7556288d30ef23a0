#include "nnd/formulas.hpp"

#include <cmath>

namespace nnd::formulas {

namespace {

double ratio_in_unit_volume(const ProblemParams& p) {
  return static_cast<double>(p.neighbour_index) /
         static_cast<double>(p.point_count);
}

}  // namespace

double exact_mean_distance(const ProblemParams& p) {
  const double d = static_cast<double>(p.dim.d);
  const double n = static_cast<double>(p.neighbour_index);
  const double big_n = static_cast<double>(p.point_count);
  const double radius = specfun::geometry_constants(p.dim).unit_ball_radius;
  return radius * std::exp(specfun::ln_gamma_ratio(n + 1.0 / d, n) +
                           specfun::ln_gamma_ratio(big_n, big_n + 1.0 / d));
}

double heuristic_mean_distance(const ProblemParams& p) {
  return std::pow(ratio_in_unit_volume(p), 1.0 / p.dim.d);
}

double asymptotic_mean_distance_large_point_count(const ProblemParams& p) {
  const double d = static_cast<double>(p.dim.d);
  const double n = static_cast<double>(p.neighbour_index);
  const double radius = specfun::geometry_constants(p.dim).unit_ball_radius;
  return radius * std::exp(specfun::ln_gamma_ratio(n + 1.0 / d, n)) *
         std::pow(static_cast<double>(p.point_count), -1.0 / d);
}

double asymptotic_mean_distance_full(const ProblemParams& p) {
  const double radius = specfun::geometry_constants(p.dim).unit_ball_radius;
  return radius * std::pow(ratio_in_unit_volume(p), 1.0 / p.dim.d);
}

double mean_enclosed_volume(const ProblemParams& p) {
  return ratio_in_unit_volume(p);
}

double mean_volume_distance_estimate(const ProblemParams& p) {
  // <V_n> = n/N turns the D-th-moment estimate into the same expression
  // as the full asymptotic form; keep them identical as computed.
  return asymptotic_mean_distance_full(p);
}

double estimate_error_exact(const ProblemParams& p) {
  return mean_volume_distance_estimate(p) - exact_mean_distance(p);
}

double gamma_ratio_large_d_approx(std::int64_t m, Dimension dim) {
  if (m < 1) {
    throw std::domain_error("gamma_ratio_large_d_approx requires m >= 1");
  }
  const double d = static_cast<double>(dim.d);
  return std::exp(specfun::ln_gamma(1.0 + 1.0 / d)) *
         (1.0 + specfun::harmonic_number(m - 1) / d);
}

RescaledErrorApprox estimate_error_large_d_approx(const ProblemParams& p) {
  const double d = static_cast<double>(p.dim.d);
  const double ratio = ratio_in_unit_volume(p);
  const double root = std::pow(ratio, 1.0 / d);
  RescaledErrorApprox approx;
  approx.harmonic_form =
      root - (1.0 + (specfun::harmonic_number(p.neighbour_index - 1) -
                     specfun::harmonic_number(p.point_count - 1)) /
                        d);
  approx.log_form = root - (1.0 + std::log(ratio) / d);
  return approx;
}

EstimateBundle bundle(const ProblemParams& p) {
  EstimateBundle b;
  b.exact = exact_mean_distance(p);
  b.heuristic = heuristic_mean_distance(p);
  b.asymptotic_large_n_points = asymptotic_mean_distance_large_point_count(p);
  b.asymptotic_full = asymptotic_mean_distance_full(p);
  b.mean_volume_estimate = mean_volume_distance_estimate(p);
  b.mean_enclosed_volume = mean_enclosed_volume(p);
  return b;
}

}  // namespace nnd::formulas
