#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "symrd/error.hpp"
#include "symrd/upper_bound.hpp"

using namespace symrd;

// Expected values below come from tests/oracles/freeze_values.py (50-digit
// bisection, independent of this code).

TEST(UpperBound, FrozenCase2) {
  const Model m = test::case2();
  const UpperBoundSolution s = solve_lambda_q(m.spectrum(), m.L(), 0.80);
  EXPECT_NEAR(s.lambda_q, 3.1117927230645081716, 1e-12);
  EXPECT_NEAR(s.rate_nats, 3.574780368905757913, 1e-12);
}

TEST(UpperBound, FrozenCase3) {
  const Model m = test::case3();
  const UpperBoundSolution s = solve_lambda_q(m.spectrum(), m.L(), 0.46);
  EXPECT_NEAR(s.lambda_q, 2.3896780499882379893, 1e-12);
  EXPECT_NEAR(s.rate_nats, 4.0265467079579369551, 1e-12);
}

TEST(UpperBound, FrozenCase1) {
  const Model m = test::case1();
  const UpperBoundSolution s = solve_lambda_q(m.spectrum(), m.L(), 0.85);
  EXPECT_NEAR(s.lambda_q, 3.3564712682908744264, 1e-12);
  EXPECT_NEAR(s.rate_nats, 3.9871787661174239348, 1e-12);
}

TEST(UpperBound, NearZeroRateAtTop) {
  const Model m = test::case1();
  const double D = m.sigma_x_sq() * (1 - 1e-9);
  EXPECT_LT(upper_bound_rate(m.spectrum(), m.L(), D), 1e-6);
}

TEST(UpperBound, OpenIntervalOnly) {
  const Model m = test::case2();
  EXPECT_THROW((void)solve_lambda_q(m.spectrum(), m.L(), m.d_min()), DomainError);
  EXPECT_THROW((void)solve_lambda_q(m.spectrum(), m.L(), m.sigma_x_sq()), DomainError);
  EXPECT_THROW((void)solve_lambda_q(m.spectrum(), m.L(), 0.1), DomainError);
  EXPECT_THROW((void)solve_lambda_q(m.spectrum(), m.L(), 2.0), DomainError);
}

TEST(UpperBound, ConstraintResidual) {
  const Model m = test::case3();
  for (double D : {0.43, 0.46, 0.48, 0.5}) {
    const UpperBoundSolution s = solve_lambda_q(m.spectrum(), m.L(), D);
    const double lhs = test_channel_distortion_sum(m.spectrum(), m.L(), s.lambda_q);
    EXPECT_LE(std::abs(lhs - m.L() * D) / (m.L() * D), 1e-10);
  }
}

TEST(UpperBound, QuadraticCoefficientsGapExample) {
  const SourceSpec spec = test::gap_example_spec();
  const Spectrum s = spectral_decompose(spec);
  const QuadraticCoefficients q = quadratic_coefficients(spec, s, 0.85);
  EXPECT_NEAR(q.g1, 0.285, 1e-14);
  EXPECT_NEAR(q.g2, -0.16, 1e-14);
  EXPECT_NEAR(q.h1, -0.5125, 1e-14);
  EXPECT_NEAR(q.h2, -0.1125, 1e-14);
  EXPECT_NEAR(q.b, 26.9, 1e-12);
  EXPECT_NEAR(q.c, -52.375, 1e-12);
  EXPECT_NEAR(q.b_phi, 26.9, 1e-12);
  EXPECT_NEAR(q.c_phi, -52.375, 1e-12);
  // Factored h1 = gamma_y * mixture * (d_min_inf - D) with d_min_inf = 0.768.
  EXPECT_NEAR(q.h1, 2.5 * 2.5 * (0.768 - 0.85), 1e-12);
  EXPECT_NEAR(quadratic_positive_root(q), 1.7719448719717330131, 1e-12);
}

TEST(UpperBound, QuadraticLeadingCoefficient) {
  const Model m = test::case2();
  const QuadraticCoefficients q = quadratic_coefficients(m.spec(), m.spectrum(), 0.8);
  EXPECT_NEAR(q.a, 1.5, 1e-12);
}

TEST(UpperBound, H1VanishesAtLimitingDmin) {
  // d_min(L) > d_min_inf = 0.768 for every finite L, so approach it from
  // inside the domain with L large.
  const SourceSpec spec = test::gap_example_spec(10'000'000);
  const Spectrum s = spectral_decompose(spec);
  const double D = d_min(s, spec.L) + 1e-9;
  ASSERT_LT(D - 0.768, 1e-7);
  const QuadraticCoefficients q = quadratic_coefficients(spec, s, D);
  EXPECT_NEAR(q.h1, 6.25 * (0.768 - D), 1e-14);
  EXPECT_LT(std::abs(q.h1), 1e-6);
}

TEST(UpperBound, StableRootBranch) {
  // b large and positive with tiny a*c: the naive form cancels.
  QuadraticCoefficients q;
  q.a = 1e-3;
  q.b = 1e6;
  q.c = -1.0;
  const double r = quadratic_positive_root(q);
  EXPECT_NEAR(r, 1e-6, 1e-18);
  EXPECT_NEAR(q.a * r * r + q.b * r + q.c, 0.0, 1e-12);
}

TEST(UpperBound, AlternativeForms) {
  for (const auto& [m, D] : {std::pair{test::case1(), 0.85}, std::pair{test::case3(), 0.46}}) {
    const UpperBoundSolution s = solve_lambda_q(m.spectrum(), m.L(), D);
    const AlternativeRates r = rate_alternative_forms(s, m.spectrum(), m.L());
    EXPECT_NEAR(r.via_lambda_i, s.rate_nats, 1e-10);
    EXPECT_NEAR(r.via_gamma_i, s.rate_nats, 1e-10);
  }
  // Zero-rate limit.
  const Model m = test::case1();
  UpperBoundSolution s;
  s.lambda_q = 1e12;
  s.lambda_i = 1.0 / (1.0 / m.spectrum().lambda_y + 1.0 / s.lambda_q);
  s.gamma_i = 1.0 / (1.0 / m.spectrum().gamma_y + 1.0 / s.lambda_q);
  s.rate_nats = test_channel_rate(m.spectrum(), m.L(), s.lambda_q);
  const AlternativeRates r = rate_alternative_forms(s, m.spectrum(), m.L());
  EXPECT_LT(std::abs(s.rate_nats), 1e-6);
  EXPECT_LT(std::abs(r.via_lambda_i), 1e-6);
  EXPECT_LT(std::abs(r.via_gamma_i), 1e-6);
}

TEST(UpperBoundProperty, RandomSpecs) {
  test::SpecGenerator gen(21);
  for (int i = 0; i < 300; ++i) {
    const SourceSpec spec = gen();
    const Model m = Model::from_spec(spec);
    const Spectrum& s = m.spectrum();
    double prev = INFINITY;
    for (double t : {0.05, 0.2, 0.4, 0.6, 0.8, 0.95}) {
      const double D = test::SpecGenerator::interior(m.d_min(), m.sigma_x_sq(), t);
      const UpperBoundSolution sol = solve_lambda_q(s, m.L(), D);
      EXPECT_LT(sol.rate_nats, prev);
      prev = sol.rate_nats;

      const double lhs = test_channel_distortion_sum(s, m.L(), sol.lambda_q);
      EXPECT_LE(std::abs(lhs - m.L() * D) / (m.L() * D), 1e-10);

      const QuadraticCoefficients q = quadratic_coefficients(spec, s, D);
      EXPECT_NEAR(quadratic_positive_root(q), sol.lambda_q, 1e-8 * sol.lambda_q);

      const AlternativeRates r = rate_alternative_forms(sol, s, m.L());
      EXPECT_NEAR(r.via_lambda_i, sol.rate_nats, 1e-10 * std::max(1.0, sol.rate_nats));
      EXPECT_NEAR(r.via_gamma_i, sol.rate_nats, 1e-10 * std::max(1.0, sol.rate_nats));

      // Constraint increases with lambda_q.
      const double h = 1e-6 * sol.lambda_q;
      EXPECT_GT(test_channel_distortion_sum(s, m.L(), sol.lambda_q + h),
                test_channel_distortion_sum(s, m.L(), sol.lambda_q - h));
    }
  }
}
