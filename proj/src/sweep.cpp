#include "symrd/sweep.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

#include "symrd/asymptotics.hpp"
#include "symrd/convex_oracle.hpp"
#include "symrd/error.hpp"
#include "symrd/format.hpp"
#include "symrd/upper_bound.hpp"

namespace symrd {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Cells that may legitimately be undefined at a given D.
template <class F>
double or_nan(F&& f) {
  try {
    return f();
  } catch (const DomainError&) {
    return kNaN;
  } catch (const PreconditionError&) {
    return kNaN;
  } catch (const PrecisionError&) {
    return kNaN;
  }
}

SweepRow compute_row(const Model& model, const RegimeParams& regime, double D, const SweepOptions& opt) {
  const Spectrum& s = model.spectrum();
  const int L = model.L();
  SweepRow row;
  row.D = D;
  row.upper_nats = upper_bound_rate(s, L, D);
  const LowerBoundValue lb = lower_bound(s, L, regime, D);
  row.lower_nats = lb.rate_nats;
  row.piece = lb.piece;
  row.gap_nats = row.upper_nats - row.lower_nats;

  if (opt.certify) {
    const ProgramSolution sol = solve_program(s, L, D, opt.oracle_tol);
    row.oracle_nats = sol.value_nats;
    row.kkt_residual = sol.kkt.max_residual();
  }

  if (!opt.asymptotic_L.empty()) {
    for (int La : opt.asymptotic_L) {
      AsymptoticCells c;
      c.L = La;
      const Model m = [&] {
        try {
          return model.with_L(La);
        } catch (const ValidationError& e) {
          throw ValidationError("asymptotic column L = " + std::to_string(La) + ": " + e.what());
        }
      }();
      c.upper_exact = or_nan([&] { return upper_bound_rate(m.spectrum(), La, D); });
      c.lower_exact = or_nan([&] { return lower_bound_rate(m.spectrum(), La, D); });
      c.gap_exact = c.upper_exact - c.lower_exact;
      c.upper_asym = or_nan([&] { return upper_asymptotic(m.spec(), La, D); });
      c.lower_asym = or_nan([&] { return lower_asymptotic(m.spec(), La, D); });
      row.asym.push_back(c);
    }
    row.gap_inf = or_nan([&] {
      const AsymptoticRegime r = asymptotic_regime(model.spec());
      switch (r.condition) {
        case AsymptoticCondition::PosMixPosRho_XiLtHalf:
          return asymptotic_gap(model.spec(), D);
        case AsymptoticCondition::ZeroMix:
        case AsymptoticCondition::PosMixPosRho_XiGeHalf:
          return 0.0;
        case AsymptoticCondition::PosMixZeroRho:
          break;
      }
      return kNaN;
    });
  }
  return row;
}

std::vector<SweepRow> run(const Model& model, const std::vector<double>& grid, const SweepOptions& opt,
                          bool parallel) {
  const RegimeParams regime = classify_regime(model.spectrum(), model.L());
  const auto n = static_cast<std::int64_t>(grid.size());
  std::vector<SweepRow> rows(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      rows[i] = compute_row(model, regime, grid[i], opt);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

}  // namespace

std::vector<double> distortion_grid(double a, double b, int n, bool endpoints_eps) {
  std::vector<double> grid(static_cast<std::size_t>(std::max(n, 0)));
  if (endpoints_eps) {
    const double lo = a + 1e-9 * (b - a);
    const double hi = b - 1e-9 * (b - a);
    for (int k = 0; k < n; ++k) grid[k] = n == 1 ? lo : lo + k * (hi - lo) / (n - 1);
    return grid;
  }
  for (int k = 0; k < n; ++k) grid[k] = a + (k + 1) * (b - a) / (n + 1);
  return grid;
}

void validate_sweep_range(const Model& model, double a, double b, int n) {
  if (n < 2) throw ValidationError("n_points = " + std::to_string(n) + " must be >= 2");
  const double lo = model.d_min();
  const double hi = model.sigma_x_sq();
  if (!(a >= lo && b <= hi && a < b)) {
    throw DomainError("sweep range [" + format_number(a) + ", " + format_number(b) +
                      "] must satisfy d_min <= start < end <= sigma_x^2 with d_min = " + format_number(lo) +
                      ", sigma_x^2 = " + format_number(hi));
  }
}

std::vector<SweepRow> sweep(const Model& model, const std::vector<double>& grid, const SweepOptions& options) {
  return run(model, grid, options, true);
}

std::vector<SweepRow> sweep_serial(const Model& model, const std::vector<double>& grid,
                                   const SweepOptions& options) {
  return run(model, grid, options, false);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, const SweepOptions& options, bool bits) {
  const double scale = bits ? 1.0 / std::numbers::ln2 : 1.0;
  const std::string unit = bits ? "bits" : "nats";
  const auto rate = [&](double v) { return format_number(v * scale); };

  out << "D,upper_" << unit << ",lower_" << unit << ",gap_" << unit << ",piece";
  if (options.certify) out << ",oracle_" << unit << ",kkt_residual";
  for (int L : options.asymptotic_L) {
    const std::string sfx = "_L" + std::to_string(L);
    out << ",upper" << sfx << ",lower" << sfx << ",gap" << sfx << ",upper_asym" << sfx << ",lower_asym" << sfx;
  }
  if (!options.asymptotic_L.empty()) out << ",gap_inf";
  out << '\n';

  for (const SweepRow& r : rows) {
    out << format_number(r.D) << ',' << rate(r.upper_nats) << ',' << rate(r.lower_nats) << ',' << rate(r.gap_nats)
        << ',' << to_string(r.piece);
    if (options.certify) out << ',' << rate(r.oracle_nats.value_or(kNaN)) << ',' << format_number(r.kkt_residual.value_or(kNaN));
    for (const AsymptoticCells& c : r.asym) {
      out << ',' << rate(c.upper_exact) << ',' << rate(c.lower_exact) << ',' << rate(c.gap_exact) << ','
          << rate(c.upper_asym) << ',' << rate(c.lower_asym);
    }
    if (!options.asymptotic_L.empty()) out << ',' << rate(r.gap_inf.value_or(kNaN));
    out << '\n';
  }
}

}  // namespace symrd
