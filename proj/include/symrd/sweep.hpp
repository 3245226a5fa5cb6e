#pragma once

// Bound table over a distortion grid. Rows are independent and computed in
// parallel; output order is always ascending D.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "symrd/lower_bound.hpp"
#include "symrd/model.hpp"

namespace symrd {

/// n points strictly inside (a, b): a + (k+1)(b-a)/(n+1). With
/// endpoints_eps the grid instead runs from a + 1e-9(b-a) to b - 1e-9(b-a)
/// inclusive.
[[nodiscard]] std::vector<double> distortion_grid(double a, double b, int n, bool endpoints_eps = false);

struct SweepOptions {
  bool certify = false;
  double oracle_tol = 1e-9;
  /// Extra L values for asymptotic comparison columns.
  std::vector<int> asymptotic_L;
};

struct AsymptoticCells {
  int L = 0;
  double upper_exact = 0.0;
  double lower_exact = 0.0;
  double gap_exact = 0.0;
  double upper_asym = 0.0;
  double lower_asym = 0.0;
};

struct SweepRow {
  double D = 0.0;
  double upper_nats = 0.0;
  double lower_nats = 0.0;
  double gap_nats = 0.0;
  Piece piece = Piece::Rbar;
  std::optional<double> oracle_nats;
  std::optional<double> kkt_residual;
  std::vector<AsymptoticCells> asym;
  std::optional<double> gap_inf;
};

/// Throws DomainError unless d_min <= a < b <= sigma_x^2 (grid points are
/// interior) and ValidationError if n < 2.
void validate_sweep_range(const Model& model, double a, double b, int n);

/// Parallel over rows. Cells that are undefined at a given D (asymptotic
/// expressions outside their range) hold NaN; any other error is rethrown
/// for the smallest failing D.
[[nodiscard]] std::vector<SweepRow> sweep(const Model& model, const std::vector<double>& grid,
                                          const SweepOptions& options = {});
[[nodiscard]] std::vector<SweepRow> sweep_serial(const Model& model, const std::vector<double>& grid,
                                                 const SweepOptions& options = {});

/// CSV with header D,upper_nats,lower_nats,gap_nats,piece plus optional
/// certification and asymptotic columns. Rates are divided by ln 2 when
/// bits is set (columns are then named *_bits).
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, const SweepOptions& options,
                     bool bits = false);

}  // namespace symrd
