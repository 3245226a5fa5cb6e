#include "symrd/upper_bound.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "symrd/error.hpp"

namespace symrd {
namespace {

void require_open_interval(const Spectrum& s, int L, double D) {
  const double lo = d_min(s, L);
  const double hi = source_variance(s, L);
  if (!(D > lo && D < hi)) {
    throw DomainError("distortion D = " + std::to_string(D) + " outside the open interval (d_min, sigma_x^2) = (" +
                      std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
}

}  // namespace

double test_channel_distortion_sum(const Spectrum& s, int L, double lambda_q) {
  return s.lambda_x * (1.0 - s.lambda_x / (s.lambda_y + lambda_q)) +
         (L - 1) * s.gamma_x * (1.0 - s.gamma_x / (s.gamma_y + lambda_q));
}

double test_channel_rate(const Spectrum& s, int L, double lambda_q) {
  return 0.5 * std::log1p(s.lambda_y / lambda_q) + 0.5 * (L - 1) * std::log1p(s.gamma_y / lambda_q);
}

UpperBoundSolution solve_lambda_q(const Spectrum& s, int L, double D) {
  require_open_interval(s, L, D);
  const double target = L * D;
  if (test_channel_distortion_sum(s, L, 0.0) >= target) {
    throw PrecisionError("D is within round-off of d_min; the lambda_q bracket is empty");
  }

  double lo = 0.0;
  double hi = std::max(1.0, s.lambda_y);
  int doublings = 0;
  while (test_channel_distortion_sum(s, L, hi) < target) {
    hi *= 2.0;
    if (++doublings > 2000 || !std::isfinite(hi)) {
      throw PrecisionError("D is within round-off of sigma_x^2; no finite lambda_q reaches L*D");
    }
  }

  int it = 0;
  while (it < kBisectionMaxIter && (hi - lo) > kBisectionRelWidth * hi) {
    const double mid = 0.5 * (lo + hi);
    if (test_channel_distortion_sum(s, L, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++it;
  }

  UpperBoundSolution sol;
  sol.lambda_q = 0.5 * (lo + hi);
  sol.iterations = it;
  if (!(sol.lambda_q > 0.0)) {
    throw PrecisionError("lambda_q underflowed to zero; D too close to d_min");
  }
  sol.rate_nats = test_channel_rate(s, L, sol.lambda_q);
  sol.lambda_i = 1.0 / (1.0 / s.lambda_y + 1.0 / sol.lambda_q);
  sol.gamma_i = 1.0 / (1.0 / s.gamma_y + 1.0 / sol.lambda_q);
  return sol;
}

double upper_bound_rate(const Spectrum& s, int L, double D) { return solve_lambda_q(s, L, D).rate_nats; }

QuadraticCoefficients quadratic_coefficients(const SourceSpec& spec, const Spectrum& s, double D) {
  require_open_interval(s, spec.L, D);
  const double L = spec.L;
  const double sx = spec.sigma_x_sq;
  const double sz = spec.sigma_z_sq;
  const double cross = spec.rho_x * spec.rho_z * sx * sz;
  const double mix = spec.mixture();

  QuadraticCoefficients q;
  q.a = s.lambda_x + (L - 1) * s.gamma_x - L * D;
  q.g1 = cross + mix * (s.gamma_x - D);
  q.g2 = sx * (s.gamma_z + s.gamma_y) - spec.rho_x * sx * s.gamma_x - 2.0 * s.gamma_y * D;
  q.h1 = cross * s.gamma_y + mix * (s.gamma_x * s.gamma_z - s.gamma_y * D);
  q.h2 = spec.rho_x * sx * s.gamma_z * s.gamma_z + spec.rho_z * sz * s.gamma_x * s.gamma_x +
         s.gamma_x * s.gamma_z * s.gamma_y - s.gamma_y * s.gamma_y * D;
  q.b = q.g1 * L * L + q.g2 * L;
  q.c = q.h1 * L * L + q.h2 * L;

  q.phi1 = s.lambda_x * s.lambda_x / s.lambda_y;
  q.phi2 = s.gamma_x * s.gamma_x / s.gamma_y;
  q.phi3 = L * D + q.phi1 + (L - 1) * q.phi2 - (s.lambda_x + (L - 1) * s.gamma_x);
  q.b_phi = q.phi1 * s.gamma_y + (L - 1) * q.phi2 * s.lambda_y - q.phi3 * (s.gamma_y + s.lambda_y);
  q.c_phi = -q.phi3 * s.lambda_y * s.gamma_y;
  return q;
}

double quadratic_positive_root(const QuadraticCoefficients& q) {
  const double disc = q.b * q.b - 4.0 * q.a * q.c;
  if (!(q.a > 0.0) || disc < 0.0) {
    throw DomainError("quadratic has no positive root (a <= 0 or negative discriminant)");
  }
  const double sq = std::sqrt(disc);
  const double num = -q.b + sq;
  if (std::abs(num) < 1e-8 * std::abs(q.b)) {
    return 2.0 * q.c / (-q.b - sq);
  }
  return num / (2.0 * q.a);
}

AlternativeRates rate_alternative_forms(const UpperBoundSolution& sol, const Spectrum& s, int L) {
  const double inv_li = 1.0 / sol.lambda_i;
  const double inv_gi = 1.0 / sol.gamma_i;
  AlternativeRates r;
  r.via_lambda_i = 0.5 * std::log(inv_li * s.lambda_y) +
                   0.5 * (L - 1) * std::log(1.0 + s.gamma_y * (inv_li - 1.0 / s.lambda_y));
  r.via_gamma_i = 0.5 * std::log(1.0 + s.lambda_y * (inv_gi - 1.0 / s.gamma_y)) +
                  0.5 * (L - 1) * std::log(inv_gi * s.gamma_y);
  return r;
}

}  // namespace symrd
