#include "symrd/achievability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "symrd/error.hpp"
#include "symrd/philox.hpp"
#include "symrd/summation.hpp"
#include "symrd/upper_bound.hpp"

namespace symrd {
namespace {

// Draws one symmetric Gaussian L-vector into out.
struct VectorSampler {
  int L;
  bool eigen;  // eigenbasis synthesis (negative rho)
  double common, own;  // two-factor scales
  double sqrt_lambda, sqrt_gamma;
  const std::vector<double>* theta;

  void draw(NormalStream& ns, double* out, std::vector<double>& scratch) const {
    if (!eigen) {
      const double s = common * ns.next();
      for (int l = 0; l < L; ++l) out[l] = s + own * ns.next();
      return;
    }
    scratch[0] = sqrt_lambda * ns.next();
    for (int j = 1; j < L; ++j) scratch[j] = sqrt_gamma * ns.next();
    const std::vector<double>& th = *theta;
    for (int l = 0; l < L; ++l) {
      double acc = 0.0;
      for (int j = 0; j < L; ++j) acc += th[l * L + j] * scratch[j];
      out[l] = acc;
    }
  }
};

VectorSampler make_sampler(int L, double sigma_sq, double rho, double lambda, double gamma,
                           const std::vector<double>* theta) {
  VectorSampler v;
  v.L = L;
  v.eigen = rho < 0.0;
  const double r = std::clamp(rho, 0.0, 1.0);
  v.common = std::sqrt(r * sigma_sq);
  v.own = std::sqrt((1.0 - r) * sigma_sq);
  v.sqrt_lambda = std::sqrt(std::max(lambda, 0.0));
  v.sqrt_gamma = std::sqrt(std::max(gamma, 0.0));
  v.theta = theta;
  return v;
}

struct Samplers {
  std::vector<double> theta;
  VectorSampler x, z;
  double sqrt_lq;
};

Samplers make_samplers(const SimConfig& c, const Spectrum& s) {
  Samplers sm;
  const int L = c.spec.L;
  if (c.spec.rho_x < 0.0 || c.spec.rho_z < 0.0) sm.theta = symmetric_eigenbasis(L);
  sm.x = make_sampler(L, c.spec.sigma_x_sq, c.spec.rho_x, s.lambda_x, s.gamma_x, &sm.theta);
  sm.z = make_sampler(L, c.spec.sigma_z_sq, c.spec.rho_z, s.lambda_z, s.gamma_z, &sm.theta);
  sm.sqrt_lq = std::sqrt(c.lambda_q);
  return sm;
}

// Draw order inside a sample: X, then Z, then Q.
void draw_sample(const Samplers& sm, NormalStream& ns, double* x, double* z, double* q, std::vector<double>& scratch) {
  sm.x.draw(ns, x, scratch);
  sm.z.draw(ns, z, scratch);
  for (int l = 0; l < sm.x.L; ++l) q[l] = sm.sqrt_lq * ns.next();
}

enum Moment {
  kErr,
  kErrSq,
  kDirErr,
  kDirErrSq,
  kY0Y0,
  kY0V0,
  kV0V0,
  kYcYc,
  kYcVc,
  kVcVc,
  kXDiag,
  kXOff,
  kMoments
};
using Moments = std::array<double, kMoments>;

Moments run_block(const SimConfig& c, const Spectrum& s, const Samplers& sm, std::int64_t begin, std::int64_t end) {
  const int L = c.spec.L;
  const double g_lam = s.lambda_x / (s.lambda_y + c.lambda_q);
  const double g_gam = s.gamma_x / (s.gamma_y + c.lambda_q);
  const double d_lam = s.lambda_x / (s.lambda_x + c.lambda_q);
  const double d_gam = s.gamma_x / (s.gamma_x + c.lambda_q);

  std::vector<double> x(L), z(L), q(L), scratch(L);
  std::array<CompensatedSum, kMoments> acc;
  for (std::int64_t i = begin; i < end; ++i) {
    NormalStream ns(c.seed, static_cast<std::uint64_t>(i));
    draw_sample(sm, ns, x.data(), z.data(), q.data(), scratch);

    double sum_x = 0.0, sum_xx = 0.0, sum_y = 0.0, sum_v = 0.0, sum_w = 0.0;
    for (int l = 0; l < L; ++l) {
      const double y = x[l] + z[l];
      sum_x += x[l];
      sum_xx += x[l] * x[l];
      sum_y += y;
      sum_v += y + q[l];
      sum_w += x[l] + q[l];
    }
    const double m_y = sum_y / L, m_v = sum_v / L, m_w = sum_w / L;

    double err = 0.0, dir = 0.0, yc = 0.0, ycv = 0.0, vc = 0.0;
    for (int l = 0; l < L; ++l) {
      const double y = x[l] + z[l];
      const double v = y + q[l];
      const double w = x[l] + q[l];
      const double est = g_lam * m_v + g_gam * (v - m_v);
      const double est_dir = d_lam * m_w + d_gam * (w - m_w);
      err += (x[l] - est) * (x[l] - est);
      dir += (x[l] - est_dir) * (x[l] - est_dir);
      yc += (y - m_y) * (y - m_y);
      ycv += (y - m_y) * (v - m_v);
      vc += (v - m_v) * (v - m_v);
    }
    err /= L;
    dir /= L;
    const double y0 = sum_y / std::sqrt(static_cast<double>(L));
    const double v0 = sum_v / std::sqrt(static_cast<double>(L));

    acc[kErr].add(err);
    acc[kErrSq].add(err * err);
    acc[kDirErr].add(dir);
    acc[kDirErrSq].add(dir * dir);
    acc[kY0Y0].add(y0 * y0);
    acc[kY0V0].add(y0 * v0);
    acc[kV0V0].add(v0 * v0);
    acc[kYcYc].add(yc);
    acc[kYcVc].add(ycv);
    acc[kVcVc].add(vc);
    acc[kXDiag].add(sum_xx / L);
    acc[kXOff].add((sum_x * sum_x - sum_xx) / (static_cast<double>(L) * (L - 1)));
  }
  Moments out{};
  for (int k = 0; k < kMoments; ++k) out[k] = acc[k].value();
  return out;
}

double mean_and_se(double sum, double sum_sq, std::int64_t n, double* se) {
  const double nn = static_cast<double>(n);
  const double mean = sum / nn;
  if (n < 2) {
    *se = 0.0;
    return mean;
  }
  const double var = std::max(0.0, (sum_sq / nn - mean * mean) * nn / (nn - 1.0));
  *se = std::sqrt(var / nn);
  return mean;
}

/// 1/2 log(s_yy s_vv / det) for a 2x2 second-moment matrix.
double pair_information(double syy, double syv, double svv, const char* which) {
  const double prod = syy * svv;
  const double det = prod - syv * syv;
  if (!(prod > 0.0) || !(det > 1e-12 * prod)) {
    throw EstimationError(std::string("sample covariance of the ") + which +
                          " (Y, V) pair is not positive definite; increase n_samples");
  }
  return 0.5 * std::log(prod / det);
}

SimResult run(const SimConfig& c, bool parallel) {
  validate(c);
  const Spectrum s = spectral_decompose(c.spec);
  const Samplers sm = make_samplers(c, s);
  const int L = c.spec.L;

  const std::int64_t n_blocks = (c.n_samples + kSimBlock - 1) / kSimBlock;
  std::vector<Moments> blocks(static_cast<std::size_t>(n_blocks));
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t b = 0; b < n_blocks; ++b) {
    const std::int64_t begin = b * kSimBlock;
    const std::int64_t end = std::min(c.n_samples, begin + kSimBlock);
    blocks[static_cast<std::size_t>(b)] = run_block(c, s, sm, begin, end);
  }

  std::array<CompensatedSum, kMoments> total;
  for (const Moments& m : blocks) {
    for (int k = 0; k < kMoments; ++k) total[k].add(m[k]);
  }
  Moments t{};
  for (int k = 0; k < kMoments; ++k) t[k] = total[k].value();

  SimResult r;
  r.n = c.n_samples;
  r.lambda_q = c.lambda_q;
  r.distortion_empirical = mean_and_se(t[kErr], t[kErrSq], c.n_samples, &r.std_err);
  r.direct_distortion_empirical = mean_and_se(t[kDirErr], t[kDirErrSq], c.n_samples, &r.direct_std_err);
  r.distortion_closed_form = closed_form_distortion(s, L, c.lambda_q);
  r.direct_distortion_closed_form = direct_closed_form_distortion(s, L, c.lambda_q);
  r.rate_closed_form = test_channel_rate(s, L, c.lambda_q);
  r.rate_empirical = pair_information(t[kY0Y0], t[kY0V0], t[kV0V0], "common-mode") +
                     (L - 1) * pair_information(t[kYcYc], t[kYcVc], t[kVcVc], "complement");
  r.x_variance = t[kXDiag] / static_cast<double>(c.n_samples);
  r.x_covariance = t[kXOff] / static_cast<double>(c.n_samples);
  return r;
}

}  // namespace

bool SimResult::distortion_within(double k) const {
  return std::abs(distortion_empirical - distortion_closed_form) <= k * std_err;
}

bool SimResult::direct_distortion_within(double k) const {
  return std::abs(direct_distortion_empirical - direct_distortion_closed_form) <= k * direct_std_err;
}

void validate(const SimConfig& config) {
  validate(config.spec);
  if (!(config.lambda_q > 0.0) || !std::isfinite(config.lambda_q)) {
    throw ValidationError("lambda_q = " + std::to_string(config.lambda_q) + " must be a positive finite number");
  }
  if (config.n_samples < 1) {
    throw ValidationError("n_samples = " + std::to_string(config.n_samples) + " must be >= 1");
  }
}

std::vector<double> symmetric_eigenbasis(int L) {
  std::vector<std::vector<double>> basis;
  std::vector<std::vector<double>> candidates;
  candidates.emplace_back(L, 1.0);
  for (int i = 0; i < L; ++i) {
    std::vector<double> e(L, 0.0);
    e[i] = 1.0;
    candidates.push_back(std::move(e));
  }
  for (auto& v : candidates) {
    if (static_cast<int>(basis.size()) == L) break;
    for (const auto& b : basis) {
      double dot = 0.0;
      for (int l = 0; l < L; ++l) dot += v[l] * b[l];
      for (int l = 0; l < L; ++l) v[l] -= dot * b[l];
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-10) continue;
    for (double& x : v) x /= norm;
    basis.push_back(v);
  }
  std::vector<double> theta(static_cast<std::size_t>(L) * L);
  for (int j = 0; j < L; ++j) {
    for (int l = 0; l < L; ++l) theta[l * L + j] = basis[j][l];
  }
  return theta;
}

SampleBatch sample_model(const SimConfig& config) {
  validate(config);
  const Spectrum s = spectral_decompose(config.spec);
  const Samplers sm = make_samplers(config, s);
  const int L = config.spec.L;
  SampleBatch batch;
  batch.L = L;
  batch.n = config.n_samples;
  const auto size = static_cast<std::size_t>(config.n_samples) * L;
  batch.x.resize(size);
  batch.z.resize(size);
  batch.q.resize(size);
  std::vector<double> scratch(L);
  for (std::int64_t i = 0; i < config.n_samples; ++i) {
    NormalStream ns(config.seed, static_cast<std::uint64_t>(i));
    const auto off = static_cast<std::size_t>(i) * L;
    draw_sample(sm, ns, &batch.x[off], &batch.z[off], &batch.q[off], scratch);
  }
  return batch;
}

double closed_form_distortion(const Spectrum& s, int L, double lambda_q) {
  return test_channel_distortion_sum(s, L, lambda_q) / L;
}

double direct_closed_form_distortion(const Spectrum& s, int L, double lambda_q) {
  return (s.lambda_x * lambda_q / (s.lambda_x + lambda_q) + (L - 1) * s.gamma_x * lambda_q / (s.gamma_x + lambda_q)) /
         L;
}

double analytic_rate(const SimConfig& config) {
  validate(config);
  return test_channel_rate(spectral_decompose(config.spec), config.spec.L, config.lambda_q);
}

SimResult simulate(const SimConfig& config) { return run(config, true); }

SimResult simulate_serial(const SimConfig& config) { return run(config, false); }

double empirical_distortion(const SimConfig& config) { return simulate(config).distortion_empirical; }

}  // namespace symrd
