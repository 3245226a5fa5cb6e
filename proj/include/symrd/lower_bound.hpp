#pragma once

// Closed-form lower bound R_(D) and its regime classification.
//
// The spectrum falls on one of two sides (lambda_y >= gamma_y or
// gamma_y > lambda_y) and then into one of four cases. Depending on the case,
// R_ equals R̄ on part of (d_min, sigma_x^2) and one of the piecewise
// expressions R_c = {R1c, R2c} or R̂_c = {R1c_hat, R2c_hat} elsewhere.

#include <optional>
#include <string_view>

#include "symrd/model.hpp"

namespace symrd {

enum class Branch {
  LamGeqGam_1,
  LamGeqGam_2,
  LamGeqGam_3,
  LamGeqGam_4,
  GamGeqLam_1,
  GamGeqLam_2,
  GamGeqLam_3,
  GamGeqLam_4,
};

enum class Piece { Rbar, R1c, R2c, R1c_hat, R2c_hat };

/// Case 4 on the gamma_y > lambda_y side (gamma_x = 0) can be read as
/// R_c or R̂_c. Only R̂_c is finite there; AsPrinted keeps the other reading
/// for comparison and fails with DomainError.
enum class Case4Reading { Corrected, AsPrinted };

[[nodiscard]] std::string_view to_string(Branch b);
[[nodiscard]] std::string_view to_string(Piece p);

/// Discriminants and thresholds. Only quantities that are meaningful for the
/// active side are set.
struct RegimeParams {
  Branch branch = Branch::LamGeqGam_1;
  std::optional<double> mu1, mu2, nu1, nu2;
  std::optional<double> d_th_c, d_th_c_hat;
  std::optional<double> d_th_1, d_th_2, d_th_1_hat, d_th_2_hat;

  [[nodiscard]] bool lambda_side() const { return static_cast<int>(branch) <= static_cast<int>(Branch::LamGeqGam_4); }
  /// Case 1 of either side: lower and upper bound coincide for every D.
  [[nodiscard]] bool matching_everywhere() const {
    return branch == Branch::LamGeqGam_1 || branch == Branch::GamGeqLam_1;
  }
};

[[nodiscard]] RegimeParams classify_regime(const Spectrum& s, int L);

/// Same as classify_regime. With lambda_y = gamma_y every threshold stays
/// unset, which is the not-applicable marker.
[[nodiscard]] RegimeParams thresholds(const Spectrum& s, int L);

/// One of the four closed-form pieces, evaluated as written. Throws
/// DomainError naming the sub-expression whose log argument is not positive.
[[nodiscard]] double rc_piece(Piece piece, const Spectrum& s, int L, double D);

struct LowerBoundValue {
  double rate_nats = 0.0;
  Piece piece = Piece::Rbar;
};

/// Which expression governs R_ at D, given the regime.
[[nodiscard]] Piece active_piece(const RegimeParams& regime, double D,
                                 Case4Reading reading = Case4Reading::Corrected);

[[nodiscard]] LowerBoundValue lower_bound(const Spectrum& s, int L, double D,
                                          Case4Reading reading = Case4Reading::Corrected);
[[nodiscard]] LowerBoundValue lower_bound(const Spectrum& s, int L, const RegimeParams& regime, double D,
                                          Case4Reading reading = Case4Reading::Corrected);

[[nodiscard]] double lower_bound_rate(const Spectrum& s, int L, double D,
                                      Case4Reading reading = Case4Reading::Corrected);

}  // namespace symrd
