#include "symrd/asymptotics.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "symrd/error.hpp"

namespace symrd {
namespace {

// L-free quantities of the (sigma^2, rho) parameterisation.
struct Limits {
  double sx, sz, rx, rz;
  double gx, gz, gy;
  double mix, cross;
  double ry;
};

Limits limits(const SourceSpec& spec) {
  Limits t;
  t.sx = spec.sigma_x_sq;
  t.sz = spec.sigma_z_sq;
  t.rx = spec.rho_x;
  t.rz = spec.rho_z;
  t.gx = (1.0 - t.rx) * t.sx;
  t.gz = (1.0 - t.rz) * t.sz;
  t.gy = t.gx + t.gz;
  t.mix = spec.mixture();
  t.cross = t.rx * t.rz * t.sx * t.sz;
  t.ry = t.mix / (t.sx + t.sz);
  return t;
}

double checked_log(double arg, const char* where) {
  if (!(arg > 0.0) || !std::isfinite(arg)) {
    throw DomainError(std::string(where) + ": log argument " + std::to_string(arg) + " is not a positive finite number");
  }
  return std::log(arg);
}

void require_range(const AsymptoticRegime& r, const SourceSpec& spec, double D) {
  if (!(D > r.d_min_inf && D < spec.sigma_x_sq)) {
    throw DomainError("distortion D = " + std::to_string(D) + " outside (d_min_inf, sigma_x^2) = (" +
                      std::to_string(r.d_min_inf) + ", " + std::to_string(spec.sigma_x_sq) + ")");
  }
}

bool at_dth0(const AsymptoticRegime& r, const SourceSpec& spec, double D) {
  return r.d_th0_inf && std::abs(D - *r.d_th0_inf) <= kDthZeroWindow * spec.sigma_x_sq;
}

}  // namespace

std::string_view to_string(AsymptoticCondition c) {
  switch (c) {
    case AsymptoticCondition::ZeroMix: return "ZeroMix";
    case AsymptoticCondition::PosMixPosRho_XiGeHalf: return "PosMixPosRho_XiGeHalf";
    case AsymptoticCondition::PosMixPosRho_XiLtHalf: return "PosMixPosRho_XiLtHalf";
    case AsymptoticCondition::PosMixZeroRho: return "PosMixZeroRho";
  }
  return "?";
}

AsymptoticRegime asymptotic_regime(const SourceSpec& spec) {
  validate(spec);
  for (auto [name, rho] : {std::pair{"rho_x", spec.rho_x}, std::pair{"rho_z", spec.rho_z}}) {
    if (rho < 0.0) {
      throw PreconditionError(std::string(name) + " = " + std::to_string(rho) +
                              " < 0: large-L expressions need rho_x, rho_z in [0, 1]; use the finite-L bounds");
    }
  }
  const Limits t = limits(spec);
  AsymptoticRegime r;
  if (t.mix == 0.0) {
    r.condition = AsymptoticCondition::ZeroMix;
    r.d_min_inf = t.sx * t.sz / (t.sx + t.sz);
    return r;
  }
  if (t.rx >= 1.0) {
    throw PreconditionError("rho_x = 1 leaves xi undefined");
  }
  r.d_min_inf = t.cross / t.mix + t.gx * t.gz / t.gy;
  r.d_th0_inf = t.cross / t.mix + t.gx;
  r.xi = (t.rx / (1.0 - t.rx)) * ((1.0 - t.ry) / t.ry);
  if (t.rx == 0.0) {
    r.condition = AsymptoticCondition::PosMixZeroRho;
    return r;
  }
  if (*r.xi >= 0.5) {
    r.condition = AsymptoticCondition::PosMixPosRho_XiGeHalf;
    return r;
  }
  r.condition = AsymptoticCondition::PosMixPosRho_XiLtHalf;
  const double root = std::sqrt(1.0 - 4.0 * *r.xi * *r.xi);
  const double w = t.gx * t.gx / t.gy;
  r.d_th1_inf = *r.d_th0_inf - (1.0 + root) / 2.0 * w;
  r.d_th2_inf = *r.d_th0_inf - (1.0 - root) / 2.0 * w;
  return r;
}

ExpansionCoefficients expansion_coefficients(const SourceSpec& spec, double D) {
  const Limits t = limits(spec);
  if (!(D < t.sx)) throw DomainError("expansion needs D < sigma_x^2");
  ExpansionCoefficients e;
  e.g1 = t.cross + t.mix * (t.gx - D);
  const auto g2_at = [&](double d) { return t.sx * (t.gz + t.gy) - t.rx * t.sx * t.gx - 2.0 * t.gy * d; };
  const double g2 = g2_at(D);
  const double h1 = t.cross * t.gy + t.mix * (t.gx * t.gz - t.gy * D);
  const double h2 = t.rx * t.sx * t.gz * t.gz + t.rz * t.sz * t.gx * t.gx + t.gx * t.gz * t.gy - t.gy * t.gy * D;
  const double a = t.sx - D;

  if (t.mix > 0.0 && t.rx > 0.0) {
    const double d0 = t.cross / t.mix + t.gx;
    if (std::abs(D - d0) <= kDthZeroWindow * t.sx) {
      e.alpha1 = t.mix * t.gx / (t.rx * t.sx);
      e.alpha2 = -g2_at(d0) / (2.0 * (t.sx - d0));
      return e;
    }
  }
  if (e.g1 > 0.0) {
    e.eta1 = -h1 / e.g1;
    e.eta2 = -(h2 / e.g1 - g2 * h1 / (e.g1 * e.g1) + a * h1 * h1 / (e.g1 * e.g1 * e.g1));
  } else if (e.g1 < 0.0) {
    e.beta1 = -e.g1 / a;
  }
  return e;
}

double rbar_inf(const SourceSpec& spec, double L, double D) {
  const Limits t = limits(spec);
  return L / 2.0 * checked_log(t.sx * t.sx / ((t.sx + t.sz) * D - t.sx * t.sz), "rbar_inf");
}

double rbar1_inf(const SourceSpec& spec, double L, double D) {
  const Limits t = limits(spec);
  const AsymptoticRegime r = asymptotic_regime(spec);
  if (!r.d_th0_inf) throw DomainError("rbar1_inf needs a positive mixture");
  const double dmi = r.d_min_inf, d0 = *r.d_th0_inf, xi = *r.xi;
  const double w = t.gx * t.gx / t.gy;
  const double num = d0 - xi * w - D;
  return L / 2.0 * checked_log(w / (D - dmi), "rbar1_inf: gamma_x^2/gamma_y/(D - d_min_inf)") + 0.5 * std::log(L) +
         0.5 * checked_log(t.mix * (d0 - D) / (t.gx * t.gx), "rbar1_inf: mix (D_th0 - D)/gamma_x^2") +
         num * num / (2.0 * (d0 - D) * (D - dmi));
}

double rbar2_inf(const SourceSpec& spec, double L, DthZeroConstant constant) {
  const Limits t = limits(spec);
  const AsymptoticRegime r = asymptotic_regime(spec);
  if (!r.d_th0_inf || !(t.rx > 0.0)) throw DomainError("rbar2_inf needs a positive mixture and rho_x > 0");
  const double xi = *r.xi;
  double c = 0.0;
  if (constant == DthZeroConstant::ProofDerived) {
    const ExpansionCoefficients e = expansion_coefficients(spec, *r.d_th0_inf);
    c = -t.gy * (t.gy + 2.0 * *e.alpha2) / (4.0 * *e.alpha1 * *e.alpha1);
  } else {
    c = xi * (t.rx * t.gx - t.gz + (1.0 - t.rx * t.rx) * t.sz) / (4.0 * (t.rx * t.rx * t.sx + t.rx * t.rz * t.sz));
  }
  return 0.5 * xi * std::sqrt(L) + 0.25 * std::log(L) + 0.5 * checked_log(t.rx / (1.0 - t.rx), "rbar2_inf") + c;
}

double rbar3_inf(const SourceSpec& spec, double D) {
  const Limits t = limits(spec);
  const AsymptoticRegime r = asymptotic_regime(spec);
  if (!r.d_th0_inf) throw DomainError("rbar3_inf needs a positive mixture");
  const double d0 = *r.d_th0_inf;
  return 0.5 * checked_log(t.rx * t.rx * t.sx * t.sx / (t.mix * (D - d0)), "rbar3_inf") +
         (1.0 - t.ry) * (t.sx - D) / (2.0 * t.ry * (D - d0));
}

double rlow1_inf(const SourceSpec& spec, double L, double D) {
  const Limits t = limits(spec);
  const AsymptoticRegime r = asymptotic_regime(spec);
  if (!r.xi) throw DomainError("rlow1_inf needs a positive mixture");
  const double dmi = r.d_min_inf, xi = *r.xi;
  const double w = t.gx * t.gx / t.gy;
  return (L + 1.0) / 2.0 * checked_log(w / (D - dmi), "rlow1_inf: gamma_x^2/gamma_y/(D - d_min_inf)") +
         0.5 * std::log(L) + 0.5 * (1.0 - 2.0 * xi) * w / (D - dmi) +
         0.5 * checked_log(t.rx * t.rx * (1.0 - t.ry) / ((1.0 - t.rx) * (1.0 - t.rx) * t.ry), "rlow1_inf: rho term");
}

double rlow2_inf(const SourceSpec& spec, double L, double D) {
  const Limits t = limits(spec);
  return L / 2.0 * checked_log(t.sx * t.sx / (t.gy * D - t.sx * t.gz), "rlow2_inf") -
         0.5 * (D - t.sx) / (D - t.sx + t.sx * t.sx / t.gy);
}

double upper_asymptotic(const SourceSpec& spec, int L, double D, DthZeroConstant constant) {
  const AsymptoticRegime r = asymptotic_regime(spec);
  require_range(r, spec, D);
  if (r.condition == AsymptoticCondition::ZeroMix) return rbar_inf(spec, L, D);
  if (at_dth0(r, spec, D)) return rbar2_inf(spec, L, constant);
  if (D < *r.d_th0_inf) return rbar1_inf(spec, L, D);
  return rbar3_inf(spec, D);
}

double lower_asymptotic(const SourceSpec& spec, int L, double D, DthZeroConstant constant) {
  const AsymptoticRegime r = asymptotic_regime(spec);
  require_range(r, spec, D);
  switch (r.condition) {
    case AsymptoticCondition::ZeroMix:
      return rbar_inf(spec, L, D);
    case AsymptoticCondition::PosMixZeroRho:
      return rlow2_inf(spec, L, D);
    case AsymptoticCondition::PosMixPosRho_XiLtHalf:
      if (D > *r.d_th1_inf && D < *r.d_th2_inf) return rlow1_inf(spec, L, D);
      break;
    case AsymptoticCondition::PosMixPosRho_XiGeHalf:
      break;
  }
  return upper_asymptotic(spec, L, D, constant);
}

double delta_r_inf(const SourceSpec& spec, double D) {
  const Limits t = limits(spec);
  const AsymptoticRegime r = asymptotic_regime(spec);
  if (r.condition != AsymptoticCondition::PosMixPosRho_XiLtHalf) {
    throw DomainError(std::string("asymptotic gap needs regime PosMixPosRho_XiLtHalf, got ") +
                      std::string(to_string(r.condition)));
  }
  const double d0 = *r.d_th0_inf, d1 = *r.d_th1_inf, d2 = *r.d_th2_inf, dmi = r.d_min_inf, xi = *r.xi;
  const double prod = (d0 - D) * (D - dmi);
  return (d1 - D) * (d2 - D) / (2.0 * prod) +
         0.5 * checked_log(t.gy * t.gy / (xi * xi * t.gx * t.gx * t.gx * t.gx) * prod, "delta_r_inf");
}

double asymptotic_gap(const SourceSpec& spec, double D) {
  const AsymptoticRegime r = asymptotic_regime(spec);
  if (r.condition != AsymptoticCondition::PosMixPosRho_XiLtHalf) {
    throw DomainError(std::string("asymptotic gap needs regime PosMixPosRho_XiLtHalf, got ") +
                      std::string(to_string(r.condition)));
  }
  require_range(r, spec, D);
  if (D <= *r.d_th1_inf || D >= *r.d_th2_inf) return 0.0;
  return delta_r_inf(spec, D);
}

}  // namespace symrd
