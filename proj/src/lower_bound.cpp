#include "symrd/lower_bound.hpp"

#include <cmath>
#include <string>

#include "symrd/error.hpp"
#include "symrd/upper_bound.hpp"

namespace symrd {
namespace {

double checked_log(double arg, const char* piece, const char* what) {
  if (!(arg > 0.0) || !std::isfinite(arg)) {
    throw DomainError(std::string(piece) + ": log argument " + what + " = " + std::to_string(arg) +
                      " is not a positive finite number");
  }
  return std::log(arg);
}

/// a^2/b with the convention 0 when a = 0 (keeps 0/0 out of the thresholds).
double sq_over(double a, double b) { return a == 0.0 ? 0.0 : a * a / b; }

// Quantities shared by the four distortion thresholds of either side.
struct ThresholdParts {
  double base, A, B;
};

ThresholdParts threshold_parts(const Spectrum& s, int L) {
  const double lx = s.lambda_x, gx = s.gamma_x, ly = s.lambda_y, gy = s.gamma_y;
  ThresholdParts p;
  p.base = lx + (L - 1) * gx - sq_over(lx, ly - gy) + (L - 1) * sq_over(gx, ly - gy);
  p.A = (L - 1) * gx * gx / gy / (1.0 - gy / ly);
  p.B = lx * lx / ly / (ly / gy - 1.0);
  return p;
}

}  // namespace

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::LamGeqGam_1: return "LamGeqGam_1";
    case Branch::LamGeqGam_2: return "LamGeqGam_2";
    case Branch::LamGeqGam_3: return "LamGeqGam_3";
    case Branch::LamGeqGam_4: return "LamGeqGam_4";
    case Branch::GamGeqLam_1: return "GamGeqLam_1";
    case Branch::GamGeqLam_2: return "GamGeqLam_2";
    case Branch::GamGeqLam_3: return "GamGeqLam_3";
    case Branch::GamGeqLam_4: return "GamGeqLam_4";
  }
  return "?";
}

std::string_view to_string(Piece p) {
  switch (p) {
    case Piece::Rbar: return "Rbar";
    case Piece::R1c: return "R1c";
    case Piece::R2c: return "R2c";
    case Piece::R1c_hat: return "R1c_hat";
    case Piece::R2c_hat: return "R2c_hat";
  }
  return "?";
}

RegimeParams classify_regime(const Spectrum& s, int L) {
  validate(s, L);
  const double lx = s.lambda_x, gx = s.gamma_x, ly = s.lambda_y, gy = s.gamma_y;
  RegimeParams r;

  if (ly >= gy) {
    if ((ly != gy || lx == 0.0) && gx > 0.0) {
      r.d_th_c = sq_over(lx, ly - gy) + ((L - 1) * gx * gx * (1.0 / gx - 1.0 / gy) + lx) / L;
    }
    if (lx * lx * gy * gy >= (L - 1.0) / (4.0 * L) * gx * gx * ly * ly) {
      r.branch = Branch::LamGeqGam_1;
      return r;
    }
    // gamma_x > 0 here, so the discriminant is strictly positive.
    const double prod = L / (L - 1.0) * lx * lx * gy * gy / (ly * ly * gx * gx);
    const double mu2 = 0.5 + 0.5 * std::sqrt(1.0 - 4.0 * prod);
    const double mu1 = prod / mu2;
    r.mu1 = mu1;
    r.mu2 = mu2;
    if (ly != gy) {
      const ThresholdParts p = threshold_parts(s, L);
      r.d_th_1 = (p.base - mu2 * p.A + p.B / mu2) / L;
      if (mu1 > 0.0) r.d_th_2 = (p.base - mu1 * p.A + p.B / mu1) / L;
    }
    const double t = gy / ly;
    // mu2 < 1 exactly when mu1 > 0 (mu1 + mu2 = 1).
    if (mu2 <= t) {
      r.branch = Branch::LamGeqGam_1;
    } else if (mu1 <= t && t < mu2 && mu1 > 0.0) {
      r.branch = Branch::LamGeqGam_2;
    } else if (mu1 > t) {
      r.branch = Branch::LamGeqGam_3;
    } else {
      r.branch = Branch::LamGeqGam_4;
    }
    return r;
  }

  if (lx > 0.0) r.d_th_c_hat = sq_over(gx, gy - ly) + ((L - 1) * gx + lx * lx * (1.0 / lx - 1.0 / ly)) / L;
  if (gx * gx * ly * ly >= 1.0 / (4.0 * L) * lx * lx * gy * gy) {
    r.branch = Branch::GamGeqLam_1;
    return r;
  }
  const double prod = L * gx * gx * ly * ly / (lx * lx * gy * gy);
  const double nu2 = 0.5 + 0.5 * std::sqrt(1.0 - 4.0 * prod);
  const double nu1 = prod / nu2;
  r.nu1 = nu1;
  r.nu2 = nu2;
  const ThresholdParts p = threshold_parts(s, L);
  r.d_th_1_hat = (p.base - p.A / nu2 + nu2 * p.B) / L;
  if (nu1 > 0.0) r.d_th_2_hat = (p.base - p.A / nu1 + nu1 * p.B) / L;
  const double t = ly / gy;
  if (nu2 <= t) {
    r.branch = Branch::GamGeqLam_1;
  } else if (nu1 <= t && t < nu2 && nu1 > 0.0) {
    r.branch = Branch::GamGeqLam_2;
  } else if (nu1 > t) {
    r.branch = Branch::GamGeqLam_3;
  } else {
    r.branch = Branch::GamGeqLam_4;
  }
  return r;
}

RegimeParams thresholds(const Spectrum& s, int L) { return classify_regime(s, L); }

double rc_piece(Piece piece, const Spectrum& s, int L, double D) {
  const double lx = s.lambda_x, gx = s.gamma_x, ly = s.lambda_y, gy = s.gamma_y;
  const double n = L - 1;
  // L D - lambda_x - (L-1)(gamma_x - gamma_x^2/gamma_y), common to all pieces.
  const double core = L * D - lx - n * (gx - gx * gx / gy);

  switch (piece) {
    case Piece::R1c: {
      const double den = core + lx * lx / (ly * ly) * (ly + 1.0 / (1.0 / gy - 1.0 / ly));
      return (L + 1) / 2.0 * checked_log((L + 1) * gx * gx / gy / den, "R1c", "(L+1)gamma_x^2/gamma_y / den") +
             0.5 * checked_log(lx * lx / (gx * gx) / (ly / gy - 1.0), "R1c",
                               "lambda_x^2 gamma_x^-2 (lambda_y/gamma_y - 1)^-1") +
             L / 2.0 * std::log(n / L);
    }
    case Piece::R2c:
      return L / 2.0 * checked_log(n * gx * gx / gy / core, "R2c", "(L-1)gamma_x^2/gamma_y / (LD - ...)");
    case Piece::R1c_hat: {
      const double den = core + lx * lx / ly + n * gx * gx / (gy * gy) / (1.0 / ly - 1.0 / gy);
      return (2 * L - 1) / 2.0 * checked_log((2 * L - 1) * lx * lx / ly / den, "R1c_hat",
                                             "(2L-1)lambda_x^2/lambda_y / den") +
             n / 2.0 * checked_log(gx * gx / (lx * lx) / (gy / ly - 1.0), "R1c_hat",
                                   "gamma_x^2 lambda_x^-2 (gamma_y/lambda_y - 1)^-1") +
             L / 2.0 * std::log(1.0 / L);
    }
    case Piece::R2c_hat:
      return L / 2.0 * checked_log(lx * lx / ly / (L * D - lx - n * gx + lx * lx / ly), "R2c_hat",
                                   "lambda_x^2/lambda_y / (LD - lambda_x - (L-1)gamma_x + lambda_x^2/lambda_y)");
    case Piece::Rbar:
      break;
  }
  return upper_bound_rate(s, L, D);
}

Piece active_piece(const RegimeParams& r, double D, Case4Reading reading) {
  const auto rc = [&] { return (r.d_th_c && D <= *r.d_th_c) ? Piece::R1c : Piece::R2c; };
  const auto rc_hat = [&] { return (r.d_th_c_hat && D <= *r.d_th_c_hat) ? Piece::R1c_hat : Piece::R2c_hat; };
  switch (r.branch) {
    case Branch::LamGeqGam_1:
    case Branch::GamGeqLam_1:
      return Piece::Rbar;
    case Branch::LamGeqGam_2:
      return D <= *r.d_th_1 ? Piece::Rbar : rc();
    case Branch::LamGeqGam_3:
      return (D <= *r.d_th_1 || D >= *r.d_th_2) ? Piece::Rbar : rc();
    case Branch::LamGeqGam_4:
      return rc();
    case Branch::GamGeqLam_2:
      return D <= *r.d_th_1_hat ? Piece::Rbar : rc_hat();
    case Branch::GamGeqLam_3:
      return (D <= *r.d_th_1_hat || D >= *r.d_th_2_hat) ? Piece::Rbar : rc_hat();
    case Branch::GamGeqLam_4:
      if (reading == Case4Reading::AsPrinted) return Piece::R2c;
      return rc_hat();
  }
  return Piece::Rbar;
}

LowerBoundValue lower_bound(const Spectrum& s, int L, const RegimeParams& regime, double D, Case4Reading reading) {
  const double lo = d_min(s, L);
  const double hi = source_variance(s, L);
  if (!(D > lo && D < hi)) {
    throw DomainError("distortion D = " + std::to_string(D) + " outside the open interval (d_min, sigma_x^2) = (" +
                      std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
  LowerBoundValue v;
  v.piece = active_piece(regime, D, reading);
  v.rate_nats = rc_piece(v.piece, s, L, D);
  return v;
}

LowerBoundValue lower_bound(const Spectrum& s, int L, double D, Case4Reading reading) {
  return lower_bound(s, L, classify_regime(s, L), D, reading);
}

double lower_bound_rate(const Spectrum& s, int L, double D, Case4Reading reading) {
  return lower_bound(s, L, D, reading).rate_nats;
}

}  // namespace symrd
