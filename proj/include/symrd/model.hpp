#pragma once

// Symmetric Gaussian source/noise model.
//
// X and Z are independent zero-mean Gaussian L-vectors whose covariance
// matrices have a common diagonal sigma^2 and a common off-diagonal
// rho*sigma^2. Every such matrix is diagonalised by the same orthogonal
// matrix (first column 1/sqrt(L)), with eigenvalue lambda = (1+(L-1)rho)sigma^2
// of multiplicity one and gamma = (1-rho)sigma^2 of multiplicity L-1. The
// observations are Y = X + Z, so lambda_y = lambda_x + lambda_z and
// gamma_y = gamma_x + gamma_z.

namespace symrd {

/// Absolute slack used when checking model constraints.
inline constexpr double kValidationSlack = 1e-12;

struct SourceSpec {
  int L = 2;
  double sigma_x_sq = 1.0;
  double rho_x = 0.0;
  double sigma_z_sq = 0.0;
  double rho_z = 0.0;

  [[nodiscard]] double sigma_y_sq() const { return sigma_x_sq + sigma_z_sq; }
  /// rho_y from rho_y*sigma_y^2 = rho_x*sigma_x^2 + rho_z*sigma_z^2.
  [[nodiscard]] double rho_y() const { return mixture() / sigma_y_sq(); }
  /// rho_x*sigma_x^2 + rho_z*sigma_z^2, the common-mode covariance of Y.
  [[nodiscard]] double mixture() const { return rho_x * sigma_x_sq + rho_z * sigma_z_sq; }
};

struct Spectrum {
  double lambda_x = 0.0;
  double gamma_x = 0.0;
  double lambda_z = 0.0;
  double gamma_z = 0.0;
  double lambda_y = 0.0;
  double gamma_y = 0.0;

  /// min(lambda_y, gamma_y), the noise eigenvalue of the converse program.
  [[nodiscard]] double lambda_w() const { return lambda_y < gamma_y ? lambda_y : gamma_y; }
};

/// Throws ValidationError naming the first violated constraint.
void validate(const SourceSpec& spec);

/// Throws ValidationError if the spectrum is not that of a valid model.
void validate(const Spectrum& spectrum, int L);

/// Eigenvalues of Sigma_X, Sigma_Z, Sigma_Y.
[[nodiscard]] Spectrum spectral_decompose(const SourceSpec& spec);

/// Inverse of spectral_decompose: recovers (sigma^2, rho) for X and Z from the
/// eigenvalues of Sigma_X and Sigma_Y.
[[nodiscard]] SourceSpec from_eigenvalues(int L, double lambda_x, double gamma_x, double lambda_y,
                                          double gamma_y);

/// Remote-source MMSE floor: lambda_x*lambda_z/(L*lambda_y) + (L-1)*gamma_x*gamma_z/(L*gamma_y).
[[nodiscard]] double d_min(const Spectrum& spectrum, int L);

/// sigma_x^2 = (lambda_x + (L-1)*gamma_x)/L, the zero-rate distortion.
[[nodiscard]] double source_variance(const Spectrum& spectrum, int L);

/// A validated model carried in both parameterisations.
class Model {
 public:
  static Model from_spec(const SourceSpec& spec);
  static Model from_eigenvalues(int L, double lambda_x, double gamma_x, double lambda_y,
                                double gamma_y);

  [[nodiscard]] int L() const { return spec_.L; }
  [[nodiscard]] const SourceSpec& spec() const { return spec_; }
  [[nodiscard]] const Spectrum& spectrum() const { return spectrum_; }
  [[nodiscard]] double d_min() const { return symrd::d_min(spectrum_, spec_.L); }
  [[nodiscard]] double sigma_x_sq() const { return source_variance(spectrum_, spec_.L); }

  /// Same (sigma^2, rho) parameters with a different number of encoders.
  [[nodiscard]] Model with_L(int L) const;

 private:
  Model(SourceSpec spec, Spectrum spectrum) : spec_(spec), spectrum_(spectrum) {}

  SourceSpec spec_;
  Spectrum spectrum_;
};

}  // namespace symrd
