#pragma once

#include <cstdint>

#include "nnd/types.hpp"

// Special functions needed by the closed-form estimators: log-gamma,
// beta, the regularized incomplete beta and its inverse, harmonic
// numbers, and the geometric constants of the unit-volume hypersphere.
// Everything is a pure function of its inputs and safe to call
// concurrently.

namespace nnd::specfun {

// ln Gamma(z) for z > 0. Throws std::domain_error for z <= 0.
double ln_gamma(double z);

// ln Gamma(a) - ln Gamma(b), computed without the catastrophic
// cancellation that a naive subtraction suffers for large, nearly
// equal arguments (the exact-mean formula uses a = N + 1/D, b = N with
// N up to 1e7).
double ln_gamma_ratio(double a, double b);

// ln B(x, y) = ln Gamma(x) + ln Gamma(y) - ln Gamma(x + y).
double ln_beta(double x, double y);

// B(x, y) for x, y > 0.
double beta(double x, double y);

// Regularized incomplete beta I_x(a, b) for x in [0, 1] and a, b > 0.
double regularized_incomplete_beta(double x, double a, double b);

// Inverse of I_x(a, b) in x: returns x with |I_x(a, b) - p| <= 1e-10.
double inverse_regularized_incomplete_beta(double p, double a, double b);

// H_n = sum_{k=1}^{n} 1/k. Exact summation up to n = 1e6, asymptotic
// expansion (ln n + gamma + 1/2n - 1/12n^2) beyond.
double harmonic_number(std::int64_t n);

// Radius R and volume coefficient of the D-dimensional ball of unit
// volume: R = Gamma(D/2 + 1)^(1/D) / sqrt(pi), coefficient =
// pi^(D/2) / Gamma(D/2 + 1), so that coefficient * R^D = 1.
struct GeometryConstants {
  double unit_ball_radius;
  double ball_volume_coefficient;
};

GeometryConstants geometry_constants(Dimension dim);

}  // namespace nnd::specfun
