#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pmdtk/lattice.hpp"
#include "pmdtk/params.hpp"

namespace pmdtk {

struct GaussianParams {
  Vec mean;
  Mat cov;

  int dims() const { return static_cast<int>(mean.size()); }
};

// Checks symmetry and PSD-ness (eigenvalues >= -1e-8).
GaussianParams validate_gaussian(const Vec& mean, const Mat& cov);

struct Block {
  std::vector<int> coords;  // coordinate indices of this block
  int pivot = 0;            // must be a member of `coords`
  int sum = 0;              // fixed integer coordinate total of the block
};

struct BlockStructure {
  std::vector<Block> blocks;
  void check(int dims) const;  // disjoint, covering, pivots inside blocks
};

// Discretized Gaussian whose covariance is zero outside the diagonal blocks;
// within each block one pivot coordinate absorbs the rounding so the block
// coordinate total is fixed.
struct StructuredGaussian {
  GaussianParams params;
  BlockStructure structure;

  int dims() const { return params.dims(); }
  void check() const;
};

// Draws from N(mean, cov) rounded coordinatewise to the nearest integer
// (ties half away from zero). Degenerate covariances are handled by clamping
// pivoted-Cholesky diagonal entries in [-1e-8, 0] to zero.
SampleBatch sample_discretized(const GaussianParams& g, int count,
                               std::uint64_t seed);

SampleBatch sample_structured(const StructuredGaussian& sg, int count,
                              std::uint64_t seed);

struct CellPmf {
  LatticeDistribution dist;
  double half_width = 0.0;  // per-cell confidence half-width (0 = exact path)
  bool exact = false;
};

// P(round(Y) = z) for each requested cell. Diagonal covariances use the exact
// product-of-erf formula, rank<=1 covariances an exact interval computation,
// 2-d full-rank covariances Gauss-Legendre quadrature per cell, and anything
// else Monte Carlo with the stated Hoeffding half-width.
CellPmf cell_pmf(const GaussianParams& g, const std::vector<LatticePoint>& cells,
                 int mc_budget, std::uint64_t seed = 0, double delta = 0.01);

// Cells within `radius` standard deviations of the mean along each
// eigendirection, intersected per-coordinate; convenience for TV estimation.
std::vector<LatticePoint> default_cell_set(const GaussianParams& g,
                                           double radius = 10.0,
                                           std::size_t cap = 2'000'000);

// TV bound between two Gaussians with entrywise-close covariances:
// ||mu1-mu2|| / sqrt(2 pi sigma^2) + k a / (sqrt(2 pi e) (sigma^2 - a)),
// where a is the max entrywise covariance gap and sigma^2 the minimum
// eigenvalue of cov1 (requires a <= sigma^2).
double tv_bound_gauss_pair(const GaussianParams& g1, const GaussianParams& g2);

struct SpectralCertificate {
  bool certified = false;
  double eps = 0.0;
  double mean_slack = 0.0;  // worst-case mean-premise margin (>=0 when ok)
  double cov_ratio_lo = 1.0;
  double cov_ratio_hi = 1.0;
};

// Certifies TV(g1,g2) <= eps by verifying, over all directions v,
//   |v^T d mu|  <= eps * s_v          and
//   |v^T dSigma v| <= eps * s_v^2 / (2 sqrt k),   s_v^2 = max variance.
// The covariance side reduces to a generalized eigenvalue range; the mean
// side to a 1-d convex minimization of d^T (t S1 + (1-t) S2)^{-1} d.
SpectralCertificate tv_bound_spectral(const GaussianParams& g1,
                                      const GaussianParams& g2, double eps);

double kl_gaussians(const GaussianParams& g1, const GaussianParams& g2);
double pinsker_tv(double kl);

// Smallest eigenvalue; with exclude_all_ones set, the all-ones direction is
// projected out first (PMD covariances are singular along it by construction).
double min_eigenvalue(const Mat& cov, bool exclude_all_ones = false);

}  // namespace pmdtk
