#pragma once

// Monte-Carlo check of the test channel behind R̄(D).
//
// Each sample draws X and Z from the symmetric model, forms Y = X + Z and
// V = Y + Q with Q ~ N(0, lambda_q I), and estimates X from V with the exact
// conditional mean, whose gains in the eigenbasis are
// lambda_x/(lambda_y+lambda_q) on the common coordinate and
// gamma_x/(gamma_y+lambda_q) on the others. The mean squared error then
// converges to (1/L) sum of the test-channel distortion terms, and the
// mutual information I(Y;V) to the test-channel rate.
//
// The same samples also feed V' = X + Q (the noise-free observation), whose
// conditional-mean gains use lambda_x+lambda_q and gamma_x+lambda_q. Both
// are reported.

#include <cstdint>
#include <vector>

#include "symrd/model.hpp"

namespace symrd {

struct SimConfig {
  SourceSpec spec;
  double lambda_q = 1.0;
  std::int64_t n_samples = 1;
  std::uint64_t seed = 0;
};

/// Samples per reduction block. Blocks are summed serially and combined in
/// index order, so results do not depend on the thread count.
inline constexpr std::int64_t kSimBlock = 4096;

struct SampleBatch {
  int L = 0;
  std::int64_t n = 0;
  /// Row-major n x L.
  std::vector<double> x, z, q;
};

struct SimResult {
  std::int64_t n = 0;
  double lambda_q = 0.0;
  double distortion_empirical = 0.0;
  double distortion_closed_form = 0.0;
  double std_err = 0.0;
  double rate_closed_form = 0.0;
  double rate_empirical = 0.0;
  /// Observation V' = X + Q.
  double direct_distortion_empirical = 0.0;
  double direct_distortion_closed_form = 0.0;
  double direct_std_err = 0.0;
  /// Mean diagonal and mean off-diagonal entry of the sample covariance of X.
  double x_variance = 0.0;
  double x_covariance = 0.0;

  /// |empirical - closed form| <= k standard errors.
  [[nodiscard]] bool distortion_within(double k) const;
  [[nodiscard]] bool direct_distortion_within(double k) const;
};

/// Throws ValidationError for an invalid spec, lambda_q <= 0 or n_samples < 1.
void validate(const SimConfig& config);

/// Orthogonal matrix (row-major L x L) whose first column is 1/sqrt(L),
/// from Gram-Schmidt on the all-ones vector followed by e_1, ..., e_L.
[[nodiscard]] std::vector<double> symmetric_eigenbasis(int L);

/// Draws config.n_samples triples (X, Z, Q). Keeps everything in memory;
/// intended for small n.
[[nodiscard]] SampleBatch sample_model(const SimConfig& config);

/// (1/L)(lambda_x(1 - lambda_x/(lambda_y+lambda_q)) + (L-1)gamma_x(1 - gamma_x/(gamma_y+lambda_q))).
[[nodiscard]] double closed_form_distortion(const Spectrum& s, int L, double lambda_q);
/// Same for V' = X + Q.
[[nodiscard]] double direct_closed_form_distortion(const Spectrum& s, int L, double lambda_q);

/// 1/2 log(1 + lambda_y/lambda_q) + (L-1)/2 log(1 + gamma_y/lambda_q).
[[nodiscard]] double analytic_rate(const SimConfig& config);

/// OpenMP kernel.
[[nodiscard]] SimResult simulate(const SimConfig& config);
/// Single-threaded reference; bit-identical to simulate().
[[nodiscard]] SimResult simulate_serial(const SimConfig& config);

[[nodiscard]] double empirical_distortion(const SimConfig& config);

}  // namespace symrd
