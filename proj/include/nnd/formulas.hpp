#pragma once

#include "nnd/specfun.hpp"
#include "nnd/types.hpp"

// Closed-form estimators of the mean n-th neighbour distance <r_n> for
// N points of unit density in D dimensions, the signed error of the
// mean-volume estimate, and its large-D approximations.

namespace nnd::formulas {

// All closed-form estimates for one ProblemParams.
struct EstimateBundle {
  double exact;
  double heuristic;
  double asymptotic_large_n_points;
  double asymptotic_full;
  double mean_volume_estimate;
  double mean_enclosed_volume;
};

// <r_n> = Gamma(D/2+1)^(1/D)/sqrt(pi)
//         * Gamma(n + 1/D)/Gamma(n) * Gamma(N)/Gamma(N + 1/D),
// evaluated in log space so it stays finite for N up to 1e7.
double exact_mean_distance(const ProblemParams& p);

// (n/N)^(1/D). Crude estimate from equipartition of the unit volume;
// derived under N >> n but evaluated for any valid (n, N).
double heuristic_mean_distance(const ProblemParams& p);

// Large-N form: the Gamma(N)/Gamma(N + 1/D) factor replaced by N^(-1/D).
double asymptotic_mean_distance_large_point_count(const ProblemParams& p);

// Large-N, large-n form: Gamma(D/2+1)^(1/D)/sqrt(pi) * (n/N)^(1/D).
double asymptotic_mean_distance_full(const ProblemParams& p);

// Mean volume of the ball reaching the n-th neighbour: exactly n/N,
// independent of D.
double mean_enclosed_volume(const ProblemParams& p);

// Radius of the ball whose volume is the mean enclosed volume,
// <r_n^D>^(1/D). Identical expression to asymptotic_mean_distance_full.
double mean_volume_distance_estimate(const ProblemParams& p);

// Signed length error mean_volume_distance_estimate - exact_mean_distance.
// Zero at D = 1, positive for every finite D >= 2.
double estimate_error_exact(const ProblemParams& p);

// Large-D expansion of the gamma ratio:
// Gamma(m + 1/D)/Gamma(m) ~ Gamma(1 + 1/D) * (1 + H_{m-1}/D).
double gamma_ratio_large_d_approx(std::int64_t m, Dimension dim);

// Rescaled (dimensionless) error approximations, valid for large D;
// the log form additionally assumes large n and N.
struct RescaledErrorApprox {
  double harmonic_form;  // (n/N)^(1/D) - [1 + (H_{n-1} - H_{N-1})/D]
  double log_form;       // (n/N)^(1/D) - [1 + ln(n/N)/D]
};

RescaledErrorApprox estimate_error_large_d_approx(const ProblemParams& p);

// Every estimator for one parameter set; fields equal the
// single-operation results bit for bit.
EstimateBundle bundle(const ProblemParams& p);

}  // namespace nnd::formulas
