// symrd: bounds on the sum-rate of the symmetric Gaussian remote source
// problem. All rates are in nats unless --bits is given.

#include <unistd.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <omp.h>

#include "symrd/achievability.hpp"
#include "symrd/asymptotics.hpp"
#include "symrd/convex_oracle.hpp"
#include "symrd/error.hpp"
#include "symrd/format.hpp"
#include "symrd/lower_bound.hpp"
#include "symrd/spec_io.hpp"
#include "symrd/sweep.hpp"
#include "symrd/upper_bound.hpp"

namespace {

using namespace symrd;

constexpr int kExitUsage = 2;
constexpr int kExitConvergence = 3;

void report_error(const std::string& msg) {
  const bool color = std::getenv("NO_COLOR") == nullptr && isatty(fileno(stderr));
  std::cerr << (color ? "\033[1;31merror:\033[0m " : "error: ") << msg << '\n';
}

struct Common {
  std::string spec_path;
  bool bits = false;
  bool serial = false;
  int threads = 0;

  [[nodiscard]] double scale() const { return bits ? 1.0 / std::numbers::ln2 : 1.0; }
  [[nodiscard]] std::string unit() const { return bits ? "bits" : "nats"; }
  void apply_threads() const {
    if (threads > 0) omp_set_num_threads(threads);
  }
};

void add_spec(CLI::App* cmd, Common& c) {
  cmd->add_option("spec", c.spec_path, "Spec file (key = value lines)")->required();
}

void add_rate_flags(CLI::App* cmd, Common& c) { cmd->add_flag("--bits", c.bits, "Report rates in bits"); }

void add_parallel_flags(CLI::App* cmd, Common& c) {
  cmd->add_flag("--serial", c.serial, "Use the single-threaded reference kernel");
  cmd->add_option("--threads", c.threads, "OpenMP thread count (default: runtime choice)")
      ->check(CLI::PositiveNumber);
}

std::string fmt6(double v) { return format_number(v, 6); }

void print_kv(const std::string& k, double v) { std::cout << k << " = " << fmt6(v) << '\n'; }
void print_kv(const std::string& k, const std::optional<double>& v) {
  if (v) print_kv(k, *v);
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const double v = parse_double(item, what);
    if (v != std::floor(v) || v < 2 || v > 1e9) throw ParseError(what + ": '" + item + "' must be an integer >= 2");
    out.push_back(static_cast<int>(v));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::int64_t parse_count(const std::string& text, const std::string& what) {
  const double v = parse_double(text, what);
  if (v != std::floor(v) || v > 9e15) throw ParseError(what + ": '" + text + "' must be an integer");
  return static_cast<std::int64_t>(v);
}

// ---- info ----

int cmd_info(const Common& c) {
  const Model m = load_spec(c.spec_path);
  const SourceSpec& sp = m.spec();
  const Spectrum& s = m.spectrum();
  std::cout << "L = " << m.L() << '\n';
  print_kv("sigma_x_sq", m.sigma_x_sq());
  print_kv("rho_x", sp.rho_x);
  print_kv("sigma_z_sq", sp.sigma_z_sq);
  print_kv("rho_z", sp.rho_z);
  print_kv("lambda_x", s.lambda_x);
  print_kv("gamma_x", s.gamma_x);
  print_kv("lambda_z", s.lambda_z);
  print_kv("gamma_z", s.gamma_z);
  print_kv("lambda_y", s.lambda_y);
  print_kv("gamma_y", s.gamma_y);
  print_kv("d_min", m.d_min());

  const RegimeParams r = classify_regime(s, m.L());
  std::cout << "branch = " << to_string(r.branch) << '\n';
  print_kv("mu1", r.mu1);
  print_kv("mu2", r.mu2);
  print_kv("nu1", r.nu1);
  print_kv("nu2", r.nu2);
  print_kv("d_th_1", r.d_th_1);
  print_kv("d_th_2", r.d_th_2);
  print_kv("d_th_c", r.d_th_c);
  print_kv("d_th_1_hat", r.d_th_1_hat);
  print_kv("d_th_2_hat", r.d_th_2_hat);
  print_kv("d_th_c_hat", r.d_th_c_hat);

  try {
    const AsymptoticRegime a = asymptotic_regime(sp);
    std::cout << "asymptotic = " << to_string(a.condition) << '\n';
    print_kv("xi", a.xi);
    print_kv("d_min_inf", a.d_min_inf);
    print_kv("d_th0_inf", a.d_th0_inf);
    print_kv("d_th1_inf", a.d_th1_inf);
    print_kv("d_th2_inf", a.d_th2_inf);
  } catch (const PreconditionError& e) {
    std::cout << "asymptotic = n/a (" << e.what() << ")\n";
  }
  return 0;
}

// ---- sweep ----

struct SweepArgs {
  std::optional<double> from, to;
  int n = 50;
  bool certify = false;
  std::string asymptotic;
  bool endpoints_eps = false;
};

int cmd_sweep(const Common& c, const SweepArgs& a) {
  const Model m = load_spec(c.spec_path);
  const double lo = a.from.value_or(m.d_min());
  const double hi = a.to.value_or(m.sigma_x_sq());
  validate_sweep_range(m, lo, hi, a.n);
  SweepOptions opt;
  opt.certify = a.certify;
  if (!a.asymptotic.empty()) opt.asymptotic_L = parse_int_list(a.asymptotic, "--asymptotic");
  const auto grid = distortion_grid(lo, hi, a.n, a.endpoints_eps);
  c.apply_threads();
  const auto rows = c.serial ? sweep_serial(m, grid, opt) : sweep(m, grid, opt);
  write_sweep_csv(std::cout, rows, opt, c.bits);
  return 0;
}

// ---- classify ----

// Intervals of (d_min, sigma_x^2) on which one lower-bound piece is active.
int cmd_classify(const Common& c) {
  const Model m = load_spec(c.spec_path);
  const RegimeParams r = classify_regime(m.spectrum(), m.L());
  const double lo = m.d_min(), hi = m.sigma_x_sq();
  // Thresholds that coincide with an endpoint up to round-off would give
  // empty intervals.
  const double eps = 1e-12 * (hi - lo);
  std::vector<double> cuts{lo, hi};
  for (const auto& t : {r.d_th_1, r.d_th_2, r.d_th_c, r.d_th_1_hat, r.d_th_2_hat, r.d_th_c_hat}) {
    if (t && *t > lo + eps && *t < hi - eps) cuts.push_back(*t);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::cout << "branch,start,end,piece\n";
  double start = cuts.front();
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Piece p = active_piece(r, 0.5 * (cuts[i] + cuts[i + 1]));
    const bool last = i + 2 == cuts.size();
    if (!last && active_piece(r, 0.5 * (cuts[i + 1] + cuts[i + 2])) == p) continue;
    std::cout << to_string(r.branch) << ',' << format_number(start) << ',' << format_number(cuts[i + 1]) << ','
              << to_string(p) << '\n';
    start = cuts[i + 1];
  }
  return 0;
}

// ---- asymptotic ----

struct AsymArgs {
  std::vector<double> D;
  std::string L = "250,500,1000,2000";
  bool as_printed = false;
};

int cmd_asymptotic(const Common& c, const AsymArgs& a) {
  const Model m = load_spec(c.spec_path);
  const auto Ls = parse_int_list(a.L, "--L");
  const auto constant = a.as_printed ? DthZeroConstant::AsPrinted : DthZeroConstant::ProofDerived;
  const double k = c.scale();
  const auto cell = [&](auto&& f) {
    try {
      return format_number(f() * k);
    } catch (const DomainError&) {
      return std::string("nan");
    }
  };
  // Fail early on specs outside the large-L preconditions.
  (void)asymptotic_regime(m.spec());
  const std::string u = c.unit();
  std::cout << "D,L,upper_" << u << ",upper_asym_" << u << ",lower_" << u << ",lower_asym_" << u << '\n';
  for (double D : a.D) {
    for (int L : Ls) {
      const Model mL = m.with_L(L);
      std::cout << format_number(D) << ',' << L << ','
                << cell([&] { return upper_bound_rate(mL.spectrum(), L, D); }) << ','
                << cell([&] { return upper_asymptotic(m.spec(), L, D, constant); }) << ','
                << cell([&] { return lower_bound_rate(mL.spectrum(), L, D); }) << ','
                << cell([&] { return lower_asymptotic(m.spec(), L, D, constant); }) << '\n';
    }
  }
  return 0;
}

// ---- gap-inf ----

struct GapArgs {
  std::optional<double> from, to;
  int n = 50;
};

int cmd_gap_inf(const Common& c, const GapArgs& a) {
  const Model m = load_spec(c.spec_path);
  const AsymptoticRegime r = asymptotic_regime(m.spec());
  const double lo = a.from.value_or(r.d_min_inf);
  const double hi = a.to.value_or(m.sigma_x_sq());
  if (a.n < 2) throw ValidationError("-n must be >= 2");
  if (!(lo < hi)) throw DomainError("--from must be below --to");
  const double k = c.scale();
  std::cout << "D,gap_inf_" << c.unit() << '\n';
  for (double D : distortion_grid(lo, hi, a.n)) {
    double g = 0.0;
    switch (r.condition) {
      case AsymptoticCondition::PosMixPosRho_XiLtHalf:
        g = asymptotic_gap(m.spec(), D);
        break;
      case AsymptoticCondition::ZeroMix:
      case AsymptoticCondition::PosMixPosRho_XiGeHalf:
        break;
      case AsymptoticCondition::PosMixZeroRho:
        throw PreconditionError("no limiting gap expression for rho_x = 0 with a positive mixture");
    }
    std::cout << format_number(D) << ',' << format_number(g * k) << '\n';
  }
  return 0;
}

// ---- simulate ----

struct SimArgs {
  double D = 0.0;
  std::string n = "1000000";
  std::uint64_t seed = 0;
};

int cmd_simulate(const Common& c, const SimArgs& a) {
  const Model m = load_spec(c.spec_path);
  SimConfig cfg;
  cfg.spec = m.spec();
  cfg.n_samples = parse_count(a.n, "-n");
  cfg.seed = a.seed;
  if (cfg.n_samples < 1) throw ValidationError("-n must be >= 1");
  cfg.lambda_q = solve_lambda_q(m.spectrum(), m.L(), a.D).lambda_q;
  c.apply_threads();
  const SimResult r = c.serial ? simulate_serial(cfg) : simulate(cfg);

  const double k = c.scale();
  const std::string u = c.unit();
  std::cout << "n,lambda_q,distortion_empirical,distortion_closed_form,rate_closed_form_" << u << ",rate_empirical_"
            << u << ",std_err\n";
  std::cout << r.n << ',' << format_number(r.lambda_q) << ',' << format_number(r.distortion_empirical) << ','
            << format_number(r.distortion_closed_form) << ',' << format_number(r.rate_closed_form * k) << ','
            << format_number(r.rate_empirical * k) << ',' << format_number(r.std_err) << '\n';

  std::cerr << "V = Y + Q: distortion " << format_number(r.distortion_empirical) << " vs closed form "
            << format_number(r.distortion_closed_form) << " (" << (r.distortion_within(4.0) ? "within" : "outside")
            << " 4 std err)\n";
  std::cerr << "V = X + Q: distortion " << format_number(r.direct_distortion_empirical) << " vs closed form "
            << format_number(r.direct_distortion_closed_form) << " (" << (r.direct_distortion_within(4.0) ? "within" : "outside")
            << " 4 std err)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sum-rate bounds for the symmetric Gaussian remote source problem"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;
  SweepArgs sweep_args;
  AsymArgs asym_args;
  GapArgs gap_args;
  SimArgs sim_args;

  auto* info = app.add_subcommand("info", "Spectrum, d_min, regime and thresholds");
  add_spec(info, common);

  auto* sw = app.add_subcommand("sweep", "Upper and lower bound over a D grid (CSV)");
  add_spec(sw, common);
  add_rate_flags(sw, common);
  add_parallel_flags(sw, common);
  sw->add_option("--from", sweep_args.from, "Grid start (default d_min)");
  sw->add_option("--to", sweep_args.to, "Grid end (default sigma_x^2)");
  sw->add_option("-n,--points", sweep_args.n, "Number of interior grid points")->capture_default_str();
  sw->add_flag("--certify", sweep_args.certify, "Also solve the convex program and report KKT residuals");
  sw->add_option("--asymptotic", sweep_args.asymptotic, "Comma-separated L values for large-L columns");
  sw->add_flag("--include-endpoints-eps", sweep_args.endpoints_eps,
               "Grid runs from start to end, each moved inward by 1e-9 of the range");

  auto* cl = app.add_subcommand("classify", "Active lower-bound piece on each D interval (CSV)");
  add_spec(cl, common);

  auto* as = app.add_subcommand("asymptotic", "Exact bounds against their large-L expressions (CSV)");
  add_spec(as, common);
  add_rate_flags(as, common);
  as->add_option("--D", asym_args.D, "Distortion value(s)")->required()->delimiter(',');
  as->add_option("--L", asym_args.L, "Comma-separated L values")->capture_default_str();
  as->add_flag("--as-printed-constant", asym_args.as_printed,
               "Use the closed-form constant at D = D_th0 instead of the one derived from the expansion");

  auto* gi = app.add_subcommand("gap-inf", "Limit of the bound gap as L grows (CSV)");
  add_spec(gi, common);
  add_rate_flags(gi, common);
  gi->add_option("--from", gap_args.from, "Grid start (default d_min as L grows)");
  gi->add_option("--to", gap_args.to, "Grid end (default sigma_x^2)");
  gi->add_option("-n,--points", gap_args.n, "Number of interior grid points")->capture_default_str();

  auto* sim = app.add_subcommand("simulate", "Monte-Carlo check of the test channel at D (CSV)");
  add_spec(sim, common);
  add_rate_flags(sim, common);
  add_parallel_flags(sim, common);
  sim->add_option("--D", sim_args.D, "Target distortion")->required();
  sim->add_option("-n,--samples", sim_args.n, "Sample count")->capture_default_str();
  sim->add_option("--seed", sim_args.seed, "Generator seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error(e.what());
    std::cerr << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (info->parsed()) return cmd_info(common);
    if (sw->parsed()) return cmd_sweep(common, sweep_args);
    if (cl->parsed()) return cmd_classify(common);
    if (as->parsed()) return cmd_asymptotic(common, asym_args);
    if (gi->parsed()) return cmd_gap_inf(common, gap_args);
    if (sim->parsed()) return cmd_simulate(common, sim_args);
  } catch (const ConvergenceError& e) {
    report_error(e.what());
    return kExitConvergence;
  } catch (const Error& e) {
    report_error(e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
