#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "pmdtk/error.hpp"

namespace pmdtk {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Parameter matrix of an (n,k)-PMD: n rows, each a probability vector over
// the k categories.
struct PmdParams {
  Mat rows;  // n x k, row-stochastic

  int n() const { return static_cast<int>(rows.rows()); }
  int k() const { return static_cast<int>(rows.cols()); }
};

// Parameter matrix of an (n,k)-GMD: the pivot column has been dropped, so
// rows sum to at most 1. `pivot` records which original column was removed.
struct GmdParams {
  Mat rows;  // n x (k-1), row sums <= 1
  int pivot = 0;

  int n() const { return static_cast<int>(rows.rows()); }
  int dims() const { return static_cast<int>(rows.cols()); }
};

struct SampleBatch {
  std::vector<std::vector<int>> points;
  std::uint64_t seed = 0;
  int count = 0;
};

// Validates entries and row sums (1e-9 tolerance on the sums) and normalizes
// each row exactly.
PmdParams validate_params(const Mat& matrix);

GmdParams gmd_from_pmd(const PmdParams& params, int pivot);

// Reattaches the pivot column: row entries are 1 minus the GMD row sum.
PmdParams pmd_from_gmd(const GmdParams& params);

struct RoundedParams {
  PmdParams params;
  // Exact TV between input and output PMDs when the explicit PMFs fit the
  // support cap, NaN otherwise (callers may estimate empirically).
  double tv_to_input = 0.0;
  bool tv_is_exact = false;
};

// Pushes every parameter out of (0, c): sub-threshold entries are zeroed and
// their mass moves to the row's largest entry (ties to the lowest index).
// Entries that are exactly 0 stay 0. Requires c <= 1/(2k).
RoundedParams round_params(const PmdParams& params, double c);

}  // namespace pmdtk
