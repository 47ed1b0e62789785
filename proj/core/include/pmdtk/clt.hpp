#pragma once

#include <cstdint>
#include <vector>

#include "pmdtk/gaussian.hpp"
#include "pmdtk/params.hpp"

namespace pmdtk {

struct CltReport {
  int k = 0;
  int n = 0;
  double sigma2 = 0.0;  // min eigenvalue of the GMD covariance
  double empirical_tv = 0.0;
  double half_width = 0.0;  // 0 when the exact cell path applied
  double size_free_bound = 0.0;
  double vv_bound = 0.0;
  int mc_budget = 0;
  std::uint64_t seed = 0;
  bool exact = false;
};

// min(1, C k^{7/2} sigma^{-1/10}). C is a report parameter; the size-free
// bound is never asserted as a test because its constant is unspecified.
double size_free_bound(int k, double sigma, double C = 1.0);

// min(1, k^{4/3} sigma^{-1/3} * 2.2 (3.1 + 0.83 ln n)^{2/3}).
double vv_bound(int k, double sigma, int n);

// 0.56 * sum(rho_i) / (sum(sigma_i^2))^{3/2} for centered summands.
double berry_esseen_bound(const std::vector<double>& sigmas2,
                          const std::vector<double>& rhos);

enum class ProjectionKind { Gmd, Discretized };

// 1/sigma for GMD projections, sqrt(k)/(sqrt(2 pi) sigma) for discretized
// Gaussian projections.
double projection_dk_bounds(ProjectionKind kind, int k, double sigma);

// max(0, 1/2 - (sigma_y/sigma_x)^{2/3}); Kolmogorov lower bound when a
// distribution has much smaller variance than a Gaussian.
double variance_gap_lb(double sigma_x, double sigma_y);

// m sqrt(k) / (sqrt(2 pi) sigma): cost of dropping a {0..m}^k-supported
// summand from a discretized Gaussian.
double sparse_shift_bound(int m, int k, double sigma);

struct ParamClosenessBounds {
  double mean_bound = 0.0;
  double var_bound = 0.0;
};

// Univariate: d_K <= alpha/10 implies |mu2-mu1| <= alpha sigma1 and
// |sigma2^2-sigma1^2| <= 3 alpha sigma1^2.
ParamClosenessBounds param_closeness_univariate(double alpha, double sigma1);

// k-d: with alpha + 2 sqrt(k)/sigma <= 1/10, projections obey the univariate
// bounds with factors 10 and 30 at level alpha + 2 sqrt(k)/sigma.
ParamClosenessBounds param_closeness_kd(double alpha, int k, double sigma,
                                        double sigma_v);

struct CltExperimentOptions {
  int mc_budget = 100'000;
  std::uint64_t seed = 1;
  double size_free_C = 1.0;
  int pivot = -1;  // -1: last coordinate
  std::size_t support_cap = 2'000'000;
};

// Measures TV between the GMD of `params` (pivot dropped) and the
// moment-matched discretized Gaussian, and reports it against the size-free
// and Valiant-Valiant bounds. k=2 instances use the exact 1-d cell masses;
// higher dimensions fall back to Monte Carlo with a reported half-width.
CltReport clt_experiment(const PmdParams& params,
                         const CltExperimentOptions& options = {});

}  // namespace pmdtk
