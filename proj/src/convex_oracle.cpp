#include "symrd/convex_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "symrd/golden_section.hpp"

namespace symrd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kActiveRelTol = 1e-9;

double log_arg(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string("omega_objective: log argument ") + what + " = " + std::to_string(v) +
                      " is not a positive finite number");
  }
  return std::log(v);
}

/// Root of env(x) = delta_D(x) on (0, x_hi); env increases and delta_D decreases.
double kink(const ReducedProblem& rp, double x_hi) {
  double lo = 0.0, hi = x_hi;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double env = mid / (1.0 + rp.c * mid);
    const double dd = (rp.budget - rp.a_x * mid) / rp.a_d;
    if (env < dd) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double ReducedProblem::delta_of(double x) const {
  const double env = x / (1.0 + c * x);
  const double dd = a_d > 0.0 ? (budget - a_x * x) / a_d : kInf;
  return std::min(env, dd);
}

double ReducedProblem::objective(double x, double d) const {
  return m / 2.0 * std::log(Y1 * Y1 / ((Y1 - Y2) * x + Y1 * Y2)) + L / 2.0 * std::log(Y2 / d);
}

double ReducedProblem::x_max() const { return a_x > 0.0 ? std::min(Y1, budget / a_x) : Y1; }

ProgramPoint ReducedProblem::to_point(double x, double d) const {
  ProgramPoint p;
  p.delta = d;
  if (lambda_side) {
    p.alpha = x;
    p.beta = d;
  } else {
    p.beta = x;
    p.alpha = d;
  }
  return p;
}

ReducedProblem reduce_program(const Spectrum& s, int L, double D) {
  validate(s, L);
  const double lo = d_min(s, L);
  const double hi = source_variance(s, L);
  if (!(D > lo && D < hi)) {
    throw DomainError("distortion D = " + std::to_string(D) + " outside the open interval (d_min, sigma_x^2) = (" +
                      std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
  const double lx = s.lambda_x, gx = s.gamma_x, ly = s.lambda_y, gy = s.gamma_y;
  const double coef_a = lx * lx / (ly * ly);
  const double coef_b = (L - 1) * gx * gx / (gy * gy);

  ReducedProblem rp;
  rp.L = L;
  rp.budget = L * D - lx + lx * lx / ly - (L - 1) * (gx - gx * gx / gy);
  if (ly >= gy) {
    rp.lambda_side = true;
    rp.Y1 = ly;
    rp.Y2 = gy;
    rp.m = 1.0;
    rp.a_x = coef_a;
    rp.a_d = coef_b;
  } else {
    rp.lambda_side = false;
    rp.Y1 = gy;
    rp.Y2 = ly;
    rp.m = L - 1.0;
    rp.a_x = coef_b;
    rp.a_d = coef_a;
  }
  rp.c = 1.0 / rp.Y2 - 1.0 / rp.Y1;
  return rp;
}

double omega_objective(const ProgramPoint& p, const Spectrum& s, int L) {
  const double ly = s.lambda_y, gy = s.gamma_y, lw = s.lambda_w();
  return 0.5 * log_arg(ly * ly / ((ly - lw) * p.alpha + ly * lw), "lambda_y^2/((lambda_y-lambda_w)alpha+lambda_y lambda_w)") +
         (L - 1) / 2.0 * log_arg(gy * gy / ((gy - lw) * p.beta + gy * lw), "gamma_y^2/((gamma_y-lambda_w)beta+gamma_y lambda_w)") +
         L / 2.0 * log_arg(lw / p.delta, "lambda_w/delta");
}

double feasibility_slack(const ProgramPoint& p, const Spectrum& s, int L, double D) {
  const double lx = s.lambda_x, gx = s.gamma_x, ly = s.lambda_y, gy = s.gamma_y, lw = s.lambda_w();
  const double distortion = lx * lx / (ly * ly) * p.alpha + lx - lx * lx / ly +
                            (L - 1) * (gx * gx / (gy * gy) * p.beta + gx - gx * gx / gy);
  const std::array<double, 8> slack = {
      p.alpha,
      ly - p.alpha,
      p.beta,
      gy - p.beta,
      p.delta,
      1.0 / (1.0 / p.alpha + 1.0 / lw - 1.0 / ly) - p.delta,
      1.0 / (1.0 / p.beta + 1.0 / lw - 1.0 / gy) - p.delta,
      L * D - distortion,
  };
  return *std::min_element(slack.begin(), slack.end());
}

ProgramSolution solve_program(const Spectrum& s, int L, double D, double tol) {
  if (!(tol > 0.0)) throw ValidationError("tol = " + std::to_string(tol) + " must be > 0");
  const ReducedProblem rp = reduce_program(s, L, D);
  const double x_hi = rp.x_max();

  const auto g = [&](double x) {
    if (!(x > 0.0)) return kInf;
    const double d = rp.delta_of(x);
    if (!(d > 0.0)) return kInf;
    return rp.objective(x, d);
  };

  const GoldenSectionResult gs = golden_section_minimize(g, 0.0, x_hi, kOracleMaxIter, 1e-15 * x_hi);

  // Exact candidates: the right end, the kink between the two delta
  // envelopes, and the stationary point of the budget-limited branch.
  std::vector<double> candidates = {gs.x, x_hi};
  double x_k = 0.0;
  if (rp.a_d > 0.0 && x_hi / (1.0 + rp.c * x_hi) > (rp.budget - rp.a_x * x_hi) / rp.a_d) {
    x_k = kink(rp, x_hi);
    candidates.push_back(x_k);
  }
  if (rp.a_x > 0.0 && rp.Y1 > rp.Y2) {
    const double x_star = (rp.m * (rp.Y1 - rp.Y2) * rp.budget - L * rp.a_x * rp.Y1 * rp.Y2) /
                          (rp.a_x * (rp.Y1 - rp.Y2) * (L + rp.m));
    candidates.push_back(std::clamp(x_star, x_k, x_hi));
  }

  double best_x = gs.x;
  double best_f = g(gs.x);
  for (double x : candidates) {
    const double f = g(x);
    if (f < best_f) {
      best_f = f;
      best_x = x;
    }
  }

  ProgramSolution sol;
  sol.point = rp.to_point(best_x, rp.delta_of(best_x));
  sol.value_nats = best_f;
  sol.iterations = gs.iterations;

  // The final bracket certifies the minimum by unimodality.
  const double spread = std::max(g(gs.lo), g(gs.hi)) - best_f;
  if (!(spread <= tol) && gs.hi - gs.lo > 1e-15 * x_hi) {
    sol.kkt = kkt_check(sol.point, recover_multipliers(sol.point, s, L, D), s, L, D);
    throw ConvergenceError("convex oracle did not reach tol = " + std::to_string(tol) + " nats in " +
                               std::to_string(gs.iterations) + " iterations (bracket spread " +
                               std::to_string(spread) + ")",
                           sol);
  }

  sol.kkt = kkt_check(sol.point, recover_multipliers(sol.point, s, L, D), s, L, D);
  return sol;
}

namespace {

struct Stationarity {
  double fx, fd;            // gradient of the objective
  std::array<double, 3> gx;  // constraint gradients, x component
  std::array<double, 3> gd;  // constraint gradients, d component
  std::array<double, 3> value;  // constraint values g_i <= 0
  std::array<double, 3> scale;  // magnitude for activity tests
};

Stationarity stationarity_terms(const ReducedProblem& rp, double x, double d) {
  Stationarity st;
  const double q = 1.0 + rp.c * x;
  st.fx = -rp.m * (rp.Y1 - rp.Y2) / (2.0 * ((rp.Y1 - rp.Y2) * x + rp.Y1 * rp.Y2));
  st.fd = -rp.L / (2.0 * d);
  st.gx = {1.0, -1.0 / (q * q), rp.a_x};
  st.gd = {0.0, 1.0, rp.a_d};
  st.value = {x - rp.Y1, d - x / q, rp.a_x * x + rp.a_d * d - rp.budget};
  st.scale = {rp.Y1, x / q, rp.budget};
  return st;
}

}  // namespace

KktMultipliers recover_multipliers(const ProgramPoint& p, const Spectrum& s, int L, double D) {
  const ReducedProblem rp = reduce_program(s, L, D);
  const Stationarity st = stationarity_terms(rp, rp.x_of(p), p.delta);

  std::vector<int> active;
  for (int i = 0; i < 3; ++i) {
    if (st.value[i] >= -kActiveRelTol * st.scale[i]) active.push_back(i);
  }

  // Try every subset of at most two active constraints and keep the
  // nonnegative solution with the smallest stationarity residual.
  std::vector<std::vector<int>> subsets = {{}};
  for (std::size_t i = 0; i < active.size(); ++i) {
    subsets.push_back({active[i]});
    for (std::size_t j = i + 1; j < active.size(); ++j) subsets.push_back({active[i], active[j]});
  }

  KktMultipliers best;
  double best_res = kInf;
  for (const auto& set : subsets) {
    std::array<double, 3> w = {0.0, 0.0, 0.0};
    if (set.size() == 1) {
      const int i = set[0];
      const double gg = st.gx[i] * st.gx[i] + st.gd[i] * st.gd[i];
      w[i] = -(st.gx[i] * st.fx + st.gd[i] * st.fd) / gg;
    } else if (set.size() == 2) {
      const int i = set[0], j = set[1];
      const double det = st.gx[i] * st.gd[j] - st.gx[j] * st.gd[i];
      if (det == 0.0) continue;
      w[i] = (-st.fx * st.gd[j] + st.fd * st.gx[j]) / det;
      w[j] = (-st.fd * st.gx[i] + st.fx * st.gd[i]) / det;
    }
    if (*std::min_element(w.begin(), w.end()) < -1e-10) continue;
    for (double& v : w) v = std::max(v, 0.0);
    const double rx = st.fx + w[0] * st.gx[0] + w[1] * st.gx[1] + w[2] * st.gx[2];
    const double rd = st.fd + w[0] * st.gd[0] + w[1] * st.gd[1] + w[2] * st.gd[2];
    const double res = std::max(std::abs(rx), std::abs(rd));
    if (res < best_res) {
      best_res = res;
      best = {w[0], w[1], w[2]};
    }
  }
  return best;
}

KktCertificate kkt_check(const ProgramPoint& p, const KktMultipliers& w, const Spectrum& s, int L, double D) {
  const ReducedProblem rp = reduce_program(s, L, D);
  const Stationarity st = stationarity_terms(rp, rp.x_of(p), p.delta);
  const std::array<double, 3> om = {w.omega1, w.omega2, w.omega3};

  double rx = st.fx, rd = st.fd, comp = 0.0;
  for (int i = 0; i < 3; ++i) {
    rx += om[i] * st.gx[i];
    rd += om[i] * st.gd[i];
    comp = std::max(comp, std::abs(om[i] * st.value[i]));
  }
  KktCertificate cert;
  cert.omega1 = w.omega1;
  cert.omega2 = w.omega2;
  cert.omega3 = w.omega3;
  cert.stationarity_residual = std::max(std::abs(rx), std::abs(rd));
  cert.complementarity_residual = comp;
  return cert;
}

}  // namespace symrd
