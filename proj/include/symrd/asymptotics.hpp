#pragma once

// Large-L behaviour of R̄(D) and R_(D) for fixed (sigma^2, rho) parameters
// with rho_x, rho_z in [0, 1]. Every expression drops its remainder term; the
// remainder order is noted next to each function.

#include <optional>
#include <string_view>

#include "symrd/model.hpp"

namespace symrd {

enum class AsymptoticCondition { ZeroMix, PosMixPosRho_XiGeHalf, PosMixPosRho_XiLtHalf, PosMixZeroRho };

[[nodiscard]] std::string_view to_string(AsymptoticCondition c);

struct AsymptoticRegime {
  AsymptoticCondition condition = AsymptoticCondition::ZeroMix;
  /// (rho_x/(1-rho_x)) (1-rho_y)/rho_y; unset for ZeroMix.
  std::optional<double> xi;
  double d_min_inf = 0.0;
  /// Unset for ZeroMix.
  std::optional<double> d_th0_inf;
  /// Set only for PosMixPosRho_XiLtHalf.
  std::optional<double> d_th1_inf, d_th2_inf;
};

/// Throws PreconditionError for negative correlations, and for rho_x = 1 when
/// the mixture is positive (xi undefined).
[[nodiscard]] AsymptoticRegime asymptotic_regime(const SourceSpec& spec);

/// Leading coefficients of lambda_q as L grows, selected by the sign of g1:
/// g1 > 0: lambda_q = eta1 + eta2/L + O(1/L^2)
/// g1 = 0: lambda_q = alpha1 sqrt(L) + alpha2 + O(1/sqrt(L))  (D = D_th0)
/// g1 < 0: lambda_q = beta1 L + O(1)
struct ExpansionCoefficients {
  double g1 = 0.0;
  std::optional<double> eta1, eta2;
  std::optional<double> alpha1, alpha2;
  std::optional<double> beta1;
};

/// D within kDthZeroWindow * sigma_x^2 of D_th0 counts as g1 = 0.
inline constexpr double kDthZeroWindow = 1e-12;

[[nodiscard]] ExpansionCoefficients expansion_coefficients(const SourceSpec& spec, double D);

/// Constant term of R̄_2^inf. ProofDerived is -gamma_y(gamma_y + 2 alpha2)/(4 alpha1^2),
/// the value the expansion actually produces. AsPrinted is the closed form
/// xi(rho_x gamma_x - gamma_z + (1-rho_x^2) sigma_z^2)/(4(rho_x^2 sigma_x^2 + rho_x rho_z sigma_z^2)),
/// which leaves an O(1) error.
enum class DthZeroConstant { ProofDerived, AsPrinted };

// Individual expressions. L is the number of encoders; spec.L is ignored.

/// L/2 log(sigma_x^4/((sigma_x^2+sigma_z^2) D - sigma_x^2 sigma_z^2)); exact for zero mixture.
[[nodiscard]] double rbar_inf(const SourceSpec& spec, double L, double D);
/// D < D_th0, O(1/L).
[[nodiscard]] double rbar1_inf(const SourceSpec& spec, double L, double D);
/// D = D_th0, O(1/sqrt(L)).
[[nodiscard]] double rbar2_inf(const SourceSpec& spec, double L,
                               DthZeroConstant constant = DthZeroConstant::ProofDerived);
/// D > D_th0, O(1/L).
[[nodiscard]] double rbar3_inf(const SourceSpec& spec, double D);
/// Lower bound on (D_th1, D_th2) when xi < 1/2, O(1/L).
[[nodiscard]] double rlow1_inf(const SourceSpec& spec, double L, double D);
/// Lower bound when rho_x = 0 and the mixture is positive, O(1/L).
[[nodiscard]] double rlow2_inf(const SourceSpec& spec, double L, double D);

/// Asymptotic R̄(D) dispatched on the regime and on D against D_th0.
[[nodiscard]] double upper_asymptotic(const SourceSpec& spec, int L, double D,
                                      DthZeroConstant constant = DthZeroConstant::ProofDerived);

/// Asymptotic R_(D) dispatched on the regime and on D against the thresholds.
[[nodiscard]] double lower_asymptotic(const SourceSpec& spec, int L, double D,
                                      DthZeroConstant constant = DthZeroConstant::ProofDerived);

/// Delta_R^inf(D) without the zero clamp outside (D_th1, D_th2).
[[nodiscard]] double delta_r_inf(const SourceSpec& spec, double D);

/// Limit of R̄ - R_ as L grows: Delta_R^inf on (D_th1, D_th2) and 0 elsewhere.
/// Throws DomainError unless the regime is PosMixPosRho_XiLtHalf.
[[nodiscard]] double asymptotic_gap(const SourceSpec& spec, double D);

}  // namespace symrd
