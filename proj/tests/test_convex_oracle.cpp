#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "symrd/convex_oracle.hpp"
#include "symrd/golden_section.hpp"
#include "symrd/lower_bound.hpp"

using namespace symrd;

TEST(GoldenSection, FindsParabolaMinimum) {
  const auto r = golden_section_minimize([](double x) { return (x - 0.3) * (x - 0.3) + 2.0; }, 0.0, 1.0, 200, 1e-15);
  EXPECT_NEAR(r.x, 0.3, 1e-7);
  EXPECT_NEAR(r.fx, 2.0, 1e-14);
  EXPECT_LE(r.hi - r.lo, 1e-14);
}

TEST(GoldenSection, MonotoneGoesToEdge) {
  const auto r = golden_section_minimize([](double x) { return -x; }, 0.0, 2.0, 200, 1e-15);
  EXPECT_NEAR(r.x, 2.0, 1e-12);
}

TEST(ConvexOracle, FrozenObjective) {
  const ProgramPoint p{3.0, 1.5, 1.0};
  EXPECT_NEAR(omega_objective(p, test::case2().spectrum(), 10), 5.6369024795664389207, 1e-13);
}

TEST(ConvexOracle, ObjectiveRejectsNonpositiveLogArguments) {
  EXPECT_THROW((void)omega_objective({3.0, 1.5, 0.0}, test::case2().spectrum(), 10), DomainError);
}

TEST(ConvexOracle, FrozenMinimaAndCertificates) {
  struct Case {
    Model m;
    double D;
    double value;
  };
  const Case cases[] = {
      {test::case2(), 0.68, 11.216806755895316305}, {test::case2(), 0.71, 8.0203553792152187194},
      {test::case2(), 0.80, 3.4657359027997265471}, {test::case3(), 0.47, 2.8336518312233512126},
      {test::case3(), 0.495, 0.65427092719067837845}, {test::gam2(), 0.0645, 35.174578904791035944},
      {test::gam2(), 0.0655, 26.119021101178302053}, {test::gam2(), 0.1, 5.6717594422313778241},
      {test::gam3(), 0.25, 2.7767045859278126695},  {test::gam3(), 0.265, 0.49077605496753127193},
      {test::lam4(), 0.5, 1.3862943611198906188},   {test::gam4(), 0.15, 1.8325814637483101304},
  };
  for (const Case& c : cases) {
    const ProgramSolution sol = solve_program(c.m.spectrum(), c.m.L(), c.D);
    EXPECT_NEAR(sol.value_nats, c.value, 1e-9 * std::max(1.0, c.value)) << "D=" << c.D;
    EXPECT_LE(sol.kkt.max_residual(), 1e-6) << "D=" << c.D;
    EXPECT_GE(feasibility_slack(sol.point, c.m.spectrum(), c.m.L(), c.D), -1e-12) << "D=" << c.D;
    EXPECT_NEAR(omega_objective(sol.point, c.m.spectrum(), c.m.L()), sol.value_nats, 1e-12 * std::max(1.0, c.value));
    const KktMultipliers w = sol.kkt.multipliers();
    EXPECT_GE(w.omega1, 0.0);
    EXPECT_GE(w.omega2, 0.0);
    EXPECT_GE(w.omega3, 0.0);
  }
}

TEST(ConvexOracle, DomainChecked) {
  const Model m = test::case2();
  EXPECT_THROW((void)solve_program(m.spectrum(), m.L(), m.d_min()), DomainError);
  EXPECT_THROW((void)solve_program(m.spectrum(), m.L(), 1.0), DomainError);
}

TEST(ConvexOracle, KktCheckDetectsWrongMultipliers) {
  const Model m = test::case2();
  const ProgramSolution sol = solve_program(m.spectrum(), m.L(), 0.8);
  KktMultipliers w = sol.kkt.multipliers();
  w.omega3 *= 2.0;
  EXPECT_GT(kkt_check(sol.point, w, m.spectrum(), m.L(), 0.8).max_residual(), 1e-3);
}

TEST(ConvexOracle, ConvergenceErrorCarriesBestPoint) {
  // A tolerance below what 200 golden iterations can resolve.
  const Model m = test::case2();
  EXPECT_THROW((void)solve_program(m.spectrum(), m.L(), 0.8, 0.0), ValidationError);
  try {
    (void)solve_program(m.spectrum(), m.L(), 0.8, 1e-300);
    SUCCEED();  // exact convergence is also acceptable
  } catch (const ConvergenceError& e) {
    EXPECT_NEAR(e.best().value_nats, 3.4657359027997265471, 1e-9);
  }
}

TEST(ConvexOracleProperty, MatchesClosedFormOnRandomSpecs) {
  test::SpecGenerator gen(41);
  for (int i = 0; i < 150; ++i) {
    const Model m = Model::from_spec(gen());
    for (double t : {0.1, 0.5, 0.9}) {
      const double D = test::SpecGenerator::interior(m.d_min(), m.sigma_x_sq(), t);
      const ProgramSolution sol = solve_program(m.spectrum(), m.L(), D);
      const double closed = lower_bound_rate(m.spectrum(), m.L(), D);
      EXPECT_NEAR(sol.value_nats, closed, 1e-6 * std::max(1.0, closed)) << "L=" << m.L() << " D=" << D;
      EXPECT_LE(sol.kkt.max_residual(), 1e-6) << "L=" << m.L() << " D=" << D;
    }
  }
}

TEST(ConvexOracleProperty, ObjectiveIsConvex) {
  test::SpecGenerator gen(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Model m = Model::from_spec(gen());
    const Spectrum& s = m.spectrum();
    const auto draw = [&] {
      return ProgramPoint{s.lambda_y * (0.01 + 0.99 * u(gen.rng())), s.gamma_y * (0.01 + 0.99 * u(gen.rng())),
                          std::min(s.lambda_y, s.gamma_y) * (0.01 + 0.99 * u(gen.rng()))};
    };
    for (int k = 0; k < 5; ++k) {
      const ProgramPoint p = draw(), q = draw();
      const double t = u(gen.rng());
      const ProgramPoint mid{t * p.alpha + (1 - t) * q.alpha, t * p.beta + (1 - t) * q.beta,
                             t * p.delta + (1 - t) * q.delta};
      const double fp = omega_objective(p, s, m.L()), fq = omega_objective(q, s, m.L());
      EXPECT_LE(omega_objective(mid, s, m.L()), t * fp + (1 - t) * fq + 1e-10 * (1 + std::abs(fp) + std::abs(fq)));
    }
  }
}
