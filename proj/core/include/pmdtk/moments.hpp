#pragma once

#include <map>
#include <vector>

#include "pmdtk/lattice.hpp"
#include "pmdtk/params.hpp"

namespace pmdtk {

struct MomentProfile {
  Vec mean;
  Mat cov;
};

// Multi-index over the k coordinates; the 1-norm is its total degree.
struct MultiIndex {
  std::vector<int> alpha;

  int norm() const {
    int s = 0;
    for (int a : alpha) s += a;
    return s;
  }
  bool operator<(const MultiIndex& other) const { return alpha < other.alpha; }
  bool operator==(const MultiIndex& other) const {
    return alpha == other.alpha;
  }
};

struct WeightedGraph {
  Mat weights;  // symmetric, zero diagonal

  Mat laplacian() const;
};

// Exact first two moments of the PMD: the covariance is the sum of the
// per-row CRV covariances diag(p) - p p^T.
MomentProfile mean_cov(const PmdParams& params);
MomentProfile mean_cov(const GmdParams& params);

// Graph with w(i,j) = sum_l pi(l,i) pi(l,j); its Laplacian equals the PMD
// covariance matrix.
WeightedGraph laplacian_graph(const PmdParams& params);

double raw_moment(const LatticeDistribution& dist, const MultiIndex& alpha);

// Elementary multisymmetric polynomial E_alpha: the coefficient of
// prod_j t_j^alpha_j in prod_i (1 + sum_j t_j P[i,j]).
double elementary_multisym(const Mat& P, const MultiIndex& alpha);

// Power sum P_alpha = sum_i prod_j P[i,j]^alpha_j (0^0 = 1).
double power_sum(const Mat& P, const MultiIndex& alpha);

// Evaluates Dalbec's relation
//   ||a|| E_a + sum_{a=b+c, b,c!=0} (-1)^{||b||} C(||b||;b) P_b E_c
//          + (-1)^{||a||} C(||a||;a) P_a
// which is identically zero; the returned value is the numerical residual.
double dalbec_residual(const Mat& P, const MultiIndex& alpha);

// Coefficients gamma_beta with M_alpha = sum_{beta <= alpha} gamma_beta E_beta.
// gamma_beta = prod_j Surj(alpha_j, beta_j), the number of surjections from
// alpha_j labeled slots onto beta_j rows. The leading coefficient is
// prod_j alpha_j!.
std::map<MultiIndex, double> moment_elementary_coeffs(const MultiIndex& alpha);

// delta * m^{-||alpha||_1}: a TV lower bound from a moment gap of delta
// between two (m,k)-PMDs.
double tv_lower_bound_from_moment_gap(int m, const MultiIndex& alpha,
                                      double delta);

// Sample mean and unbiased sample covariance.
MomentProfile empirical_moments(const SampleBatch& samples);

}  // namespace pmdtk
