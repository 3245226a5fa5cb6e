#pragma once

// Numerical solution of the three-variable convex program whose minimum is
// the lower bound R_(D):
//
//   minimise  Omega(a, b, d) = 1/2 log(lambda_y^2 / ((lambda_y - lambda_w) a + lambda_y lambda_w))
//                            + (L-1)/2 log(gamma_y^2 / ((gamma_y - lambda_w) b + gamma_y lambda_w))
//                            + L/2 log(lambda_w / d)
//   over      0 < a <= lambda_y, 0 < b <= gamma_y, d > 0,
//             d <= (1/a + 1/lambda_w - 1/lambda_y)^-1, d <= (1/b + 1/lambda_w - 1/gamma_y)^-1,
//             lambda_x^2/lambda_y^2 a + lambda_x - lambda_x^2/lambda_y
//               + (L-1)(gamma_x^2/gamma_y^2 b + gamma_x - gamma_x^2/gamma_y) <= L D
//
// with lambda_w = min(lambda_y, gamma_y). On the lambda_y >= gamma_y side b
// only enters through d <= b and the distortion budget, so b = d at the
// optimum and the problem reduces to (a, d). The other side mirrors this with
// a = d. The reduced problem is written generically below as (x, d).

#include "symrd/error.hpp"
#include "symrd/model.hpp"

namespace symrd {

struct ProgramPoint {
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
};

struct KktMultipliers {
  double omega1 = 0.0;  // x <= Y1
  double omega2 = 0.0;  // d <= x/(1 + c x)
  double omega3 = 0.0;  // distortion budget
};

struct KktCertificate {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double omega3 = 0.0;
  double stationarity_residual = 0.0;
  double complementarity_residual = 0.0;

  [[nodiscard]] KktMultipliers multipliers() const { return {omega1, omega2, omega3}; }
  [[nodiscard]] double max_residual() const {
    return stationarity_residual > complementarity_residual ? stationarity_residual : complementarity_residual;
  }
};

struct ProgramSolution {
  ProgramPoint point;
  double value_nats = 0.0;
  KktCertificate kkt;
  int iterations = 0;
};

/// The outer search did not reach the requested tolerance. best() is the
/// best point found.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, ProgramSolution best) : Error(what), best_(best) {}
  [[nodiscard]] const ProgramSolution& best() const { return best_; }

 private:
  ProgramSolution best_;
};

inline constexpr int kOracleMaxIter = 200;
inline constexpr double kOracleDefaultTol = 1e-9;

/// Reduced two-variable problem for one side of the spectrum.
///   minimise m/2 log(Y1^2/((Y1-Y2) x + Y1 Y2)) + L/2 log(Y2/d)
///   s.t. 0 < x <= Y1, d <= x/(1 + c x), a_x x + a_d d <= budget
struct ReducedProblem {
  bool lambda_side = true;  // x = alpha when true, x = beta otherwise
  int L = 2;
  double m = 1.0;
  double Y1 = 0.0, Y2 = 0.0, c = 0.0;
  double a_x = 0.0, a_d = 0.0, budget = 0.0;

  /// Upper envelope of d for given x: min(x/(1+cx), (budget - a_x x)/a_d).
  [[nodiscard]] double delta_of(double x) const;
  [[nodiscard]] double objective(double x, double d) const;
  [[nodiscard]] double x_max() const;
  [[nodiscard]] ProgramPoint to_point(double x, double d) const;
  [[nodiscard]] double x_of(const ProgramPoint& p) const { return lambda_side ? p.alpha : p.beta; }
};

/// Throws DomainError if D is outside (d_min, sigma_x^2).
[[nodiscard]] ReducedProblem reduce_program(const Spectrum& s, int L, double D);

/// The full three-term objective. Throws DomainError on a nonpositive log argument.
[[nodiscard]] double omega_objective(const ProgramPoint& p, const Spectrum& s, int L);

/// Smallest slack over all constraints of the full program (negative when violated).
[[nodiscard]] double feasibility_slack(const ProgramPoint& p, const Spectrum& s, int L, double D);

/// Minimises the program to within tol nats. Throws DomainError for D outside
/// (d_min, sigma_x^2) and ConvergenceError when tol is not reached within
/// kOracleMaxIter outer iterations.
[[nodiscard]] ProgramSolution solve_program(const Spectrum& s, int L, double D, double tol = kOracleDefaultTol);

/// Nonnegative multipliers that best satisfy stationarity at p, using only
/// constraints active at p.
[[nodiscard]] KktMultipliers recover_multipliers(const ProgramPoint& p, const Spectrum& s, int L, double D);

/// Residuals of the stationarity conditions in x and d and of the three
/// complementary-slackness products at p for the given multipliers.
[[nodiscard]] KktCertificate kkt_check(const ProgramPoint& p, const KktMultipliers& w, const Spectrum& s, int L,
                                       double D);

}  // namespace symrd
