#pragma once

// Shared fixtures: the worked spectra and a generator of random valid specs.

#include <algorithm>
#include <cmath>
#include <random>

#include "symrd/model.hpp"

namespace symrd::test {

inline Model case1() { return Model::from_eigenvalues(10, 0.8, 1.0, 5.0, 4.0); }
inline Model case2() { return Model::from_eigenvalues(10, 0.5, 1.0, 6.0, 3.0); }
inline Model case3() { return Model::from_eigenvalues(10, 1.0, 0.45, 12.0, 2.4); }

// rho_y = 0.5, sigma_y^2 = 5.
inline SourceSpec gap_example_spec(int L = 10) {
  SourceSpec s;
  s.L = L;
  s.sigma_x_sq = 1.0;
  s.rho_x = 0.3;
  s.sigma_z_sq = 4.0;
  s.rho_z = 0.55;
  return s;
}

// gamma_y > lambda_y examples, one per non-trivial case.
inline Model gam2() { return Model::from_eigenvalues(10, 1.17, 0.063, 1.26, 4.24); }
inline Model gam3() { return Model::from_eigenvalues(5, 0.26, 0.272, 0.654, 3.41); }
inline Model lam4() { return Model::from_eigenvalues(4, 0.0, 1.0, 2.0, 1.5); }
inline Model gam4() { return Model::from_eigenvalues(4, 1.0, 0.0, 1.5, 2.0); }

/// Random valid spec with rho kept a little inside [-1/(L-1), 1] and both
/// variances log-uniform, so every bound is well conditioned.
class SpecGenerator {
 public:
  explicit SpecGenerator(std::uint64_t seed) : rng_(seed) {}

  SourceSpec operator()() {
    std::uniform_int_distribution<int> pick_L(2, 40);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SourceSpec s;
    s.L = pick_L(rng_);
    const double lo = -1.0 / (s.L - 1);
    const auto rho = [&] { return lo + (1.0 - lo) * (0.02 + 0.96 * u(rng_)); };
    s.sigma_x_sq = std::exp(std::log(0.1) + u(rng_) * std::log(100.0));
    s.sigma_z_sq = std::exp(std::log(0.05) + u(rng_) * std::log(200.0));
    s.rho_x = rho();
    s.rho_z = rho();
    return s;
  }

  /// A point at fraction t of the way through (lo, hi).
  static double interior(double lo, double hi, double t) { return lo + t * (hi - lo); }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace symrd::test
