#pragma once

// Berger-Tung upper bound R̄(D) for the symmetric model.
//
// The test channel adds i.i.d. Gaussian noise of variance lambda_q to every
// observation. lambda_q is the positive root of the distortion constraint
//
//   lambda_x (1 - lambda_x/(lambda_y+lambda_q))
//     + (L-1) gamma_x (1 - gamma_x/(gamma_y+lambda_q)) = L D,
//
// and the rate is 1/2 log(1+lambda_y/lambda_q) + (L-1)/2 log(1+gamma_y/lambda_q)
// nats. The left side is strictly increasing in lambda_q, equal to L*d_min at
// lambda_q = 0 and tending to L*sigma_x^2, so bisection always brackets the
// root for D in (d_min, sigma_x^2).

#include "symrd/model.hpp"

namespace symrd {

struct UpperBoundSolution {
  double lambda_q = 0.0;
  double rate_nats = 0.0;
  /// 1/lambda_i = 1/lambda_y + 1/lambda_q
  double lambda_i = 0.0;
  /// 1/gamma_i = 1/gamma_y + 1/lambda_q
  double gamma_i = 0.0;
  int iterations = 0;
};

/// Coefficients of a*lambda_q^2 + b*lambda_q + c = 0, the distortion
/// constraint cleared of denominators.
struct QuadraticCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double phi1 = 0.0;  // lambda_x^2/lambda_y
  double phi2 = 0.0;  // gamma_x^2/gamma_y
  double phi3 = 0.0;  // L D + phi1 + (L-1) phi2 - (lambda_x + (L-1) gamma_x)
  double g1 = 0.0;
  double g2 = 0.0;
  double h1 = 0.0;
  double h2 = 0.0;
  /// b and c assembled from the phi's rather than from g1, g2, h1, h2.
  double b_phi = 0.0;
  double c_phi = 0.0;
};

struct AlternativeRates {
  double via_lambda_i = 0.0;
  double via_gamma_i = 0.0;
};

inline constexpr double kBisectionRelWidth = 1e-13;
inline constexpr int kBisectionMaxIter = 200;

/// Left side of the distortion constraint (total, not divided by L).
[[nodiscard]] double test_channel_distortion_sum(const Spectrum& s, int L, double lambda_q);

/// Rate of the test channel with noise lambda_q (nats per source vector).
[[nodiscard]] double test_channel_rate(const Spectrum& s, int L, double lambda_q);

/// Solves the distortion constraint for lambda_q by bisection.
/// Throws DomainError when D is outside (d_min, sigma_x^2) and PrecisionError
/// when D is too close to an endpoint to bracket the root.
[[nodiscard]] UpperBoundSolution solve_lambda_q(const Spectrum& s, int L, double D);

[[nodiscard]] double upper_bound_rate(const Spectrum& s, int L, double D);

/// Quadratic form of the distortion constraint. g1, g2, h1, h2 need the
/// (sigma^2, rho) parameters; spec and spectrum must describe the same model.
[[nodiscard]] QuadraticCoefficients quadratic_coefficients(const SourceSpec& spec, const Spectrum& s,
                                                           double D);

/// Positive root of the quadratic, switching to 2c/(-b - sqrt(b^2-4ac)) when
/// -b + sqrt(b^2-4ac) cancels.
[[nodiscard]] double quadratic_positive_root(const QuadraticCoefficients& q);

/// The two alternative expressions of R̄(D) in terms of lambda_i and gamma_i.
[[nodiscard]] AlternativeRates rate_alternative_forms(const UpperBoundSolution& sol, const Spectrum& s,
                                                      int L);

}  // namespace symrd
