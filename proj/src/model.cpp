#include "symrd/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "symrd/error.hpp"

namespace symrd {
namespace {

[[noreturn]] void fail(const std::string& what) { throw ValidationError(what); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void check_rho(const char* name, double rho, int L) {
  const double lo = -1.0 / (L - 1);
  if (!std::isfinite(rho) || rho < lo - kValidationSlack || rho > 1.0 + kValidationSlack) {
    fail(std::string(name) + " = " + fmt(rho) + " outside [-1/(L-1), 1] = [" + fmt(lo) + ", 1]");
  }
}

}  // namespace

void validate(const SourceSpec& spec) {
  if (spec.L < 2) fail("L = " + std::to_string(spec.L) + " must be >= 2");
  if (!std::isfinite(spec.sigma_x_sq) || spec.sigma_x_sq <= 0.0) {
    fail("sigma_x_sq = " + fmt(spec.sigma_x_sq) + " must be > 0");
  }
  if (!std::isfinite(spec.sigma_z_sq) || spec.sigma_z_sq < 0.0) {
    fail("sigma_z_sq = " + fmt(spec.sigma_z_sq) + " must be >= 0");
  }
  check_rho("rho_x", spec.rho_x, spec.L);
  check_rho("rho_z", spec.rho_z, spec.L);

  const double n = spec.L - 1;
  const double lambda_y = (1.0 + n * spec.rho_x) * spec.sigma_x_sq + (1.0 + n * spec.rho_z) * spec.sigma_z_sq;
  const double gamma_y = (1.0 - spec.rho_x) * spec.sigma_x_sq + (1.0 - spec.rho_z) * spec.sigma_z_sq;
  if (!(std::min(lambda_y, gamma_y) > 0.0)) {
    fail("Sigma_Y not positive definite: min(lambda_y, gamma_y) = " + fmt(std::min(lambda_y, gamma_y)));
  }
}

void validate(const Spectrum& s, int L) {
  if (L < 2) fail("L = " + std::to_string(L) + " must be >= 2");
  if (s.lambda_x < -kValidationSlack) fail("lambda_x = " + fmt(s.lambda_x) + " must be >= 0");
  if (s.gamma_x < -kValidationSlack) fail("gamma_x = " + fmt(s.gamma_x) + " must be >= 0");
  if (s.lambda_z < -kValidationSlack) fail("lambda_z = lambda_y - lambda_x = " + fmt(s.lambda_z) + " must be >= 0");
  if (s.gamma_z < -kValidationSlack) fail("gamma_z = gamma_y - gamma_x = " + fmt(s.gamma_z) + " must be >= 0");
  if (!(s.lambda_y > 0.0)) fail("lambda_y = " + fmt(s.lambda_y) + " must be > 0");
  if (!(s.gamma_y > 0.0)) fail("gamma_y = " + fmt(s.gamma_y) + " must be > 0");
  if (s.lambda_x <= 0.0 && s.gamma_x <= 0.0) fail("lambda_x and gamma_x both zero: X is deterministic");
}

Spectrum spectral_decompose(const SourceSpec& spec) {
  validate(spec);
  const double n = spec.L - 1;
  Spectrum s;
  s.lambda_x = (1.0 + n * spec.rho_x) * spec.sigma_x_sq;
  s.gamma_x = (1.0 - spec.rho_x) * spec.sigma_x_sq;
  s.lambda_z = (1.0 + n * spec.rho_z) * spec.sigma_z_sq;
  s.gamma_z = (1.0 - spec.rho_z) * spec.sigma_z_sq;
  // Clamp round-off at the rho boundaries (rho = 1 or rho = -1/(L-1)).
  if (s.lambda_x < 0.0) s.lambda_x = 0.0;
  if (s.gamma_x < 0.0) s.gamma_x = 0.0;
  if (s.lambda_z < 0.0) s.lambda_z = 0.0;
  if (s.gamma_z < 0.0) s.gamma_z = 0.0;
  s.lambda_y = s.lambda_x + s.lambda_z;
  s.gamma_y = s.gamma_x + s.gamma_z;
  return s;
}

SourceSpec from_eigenvalues(int L, double lambda_x, double gamma_x, double lambda_y, double gamma_y) {
  Spectrum s;
  s.lambda_x = lambda_x;
  s.gamma_x = gamma_x;
  s.lambda_y = lambda_y;
  s.gamma_y = gamma_y;
  s.lambda_z = lambda_y - lambda_x;
  s.gamma_z = gamma_y - gamma_x;
  validate(s, L);

  const double n = L - 1;
  SourceSpec spec;
  spec.L = L;
  spec.sigma_x_sq = (lambda_x + n * gamma_x) / L;
  spec.rho_x = (lambda_x - gamma_x) / (lambda_x + n * gamma_x);
  spec.sigma_z_sq = (s.lambda_z + n * s.gamma_z) / L;
  spec.rho_z = spec.sigma_z_sq > 0.0 ? (s.lambda_z - s.gamma_z) / (s.lambda_z + n * s.gamma_z) : 0.0;
  validate(spec);
  return spec;
}

double d_min(const Spectrum& s, int L) {
  const double common = s.lambda_x * s.lambda_z / (L * s.lambda_y);
  const double rest = (L - 1) * s.gamma_x * s.gamma_z / (L * s.gamma_y);
  return common + rest;
}

double source_variance(const Spectrum& s, int L) { return (s.lambda_x + (L - 1) * s.gamma_x) / L; }

Model Model::from_spec(const SourceSpec& spec) { return Model(spec, spectral_decompose(spec)); }

Model Model::from_eigenvalues(int L, double lambda_x, double gamma_x, double lambda_y, double gamma_y) {
  const SourceSpec spec = symrd::from_eigenvalues(L, lambda_x, gamma_x, lambda_y, gamma_y);
  // Keep the caller's eigenvalues verbatim; the (sigma, rho) form is derived.
  Spectrum s;
  s.lambda_x = lambda_x;
  s.gamma_x = gamma_x;
  s.lambda_y = lambda_y;
  s.gamma_y = gamma_y;
  s.lambda_z = lambda_y - lambda_x;
  s.gamma_z = gamma_y - gamma_x;
  return Model(spec, s);
}

Model Model::with_L(int L) const {
  SourceSpec spec = spec_;
  spec.L = L;
  return from_spec(spec);
}

}  // namespace symrd
