#include "pmdtk/params.hpp"

#include <cmath>

#include "pmdtk/pmf.hpp"

namespace pmdtk {

PmdParams validate_params(const Mat& matrix) {
  require(matrix.rows() >= 1, ErrorCode::InvalidArgument, "need n >= 1 rows");
  require(matrix.cols() >= 2, ErrorCode::InvalidArgument, "need k >= 2 columns");
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      double v = matrix(i, j);
      require(std::isfinite(v), ErrorCode::InvalidArgument,
              "non-finite entry at row " + std::to_string(i));
      require(v >= 0.0, ErrorCode::NegativeEntry,
              "entry (" + std::to_string(i) + "," + std::to_string(j) +
                  ") = " + std::to_string(v));
    }
    double sum = matrix.row(i).sum();
    require(std::abs(sum - 1.0) <= 1e-9, ErrorCode::RowSumViolation,
            "row " + std::to_string(i) + " sums to " + std::to_string(sum));
  }
  PmdParams params{matrix};
  for (Eigen::Index i = 0; i < params.rows.rows(); ++i) {
    params.rows.row(i) /= params.rows.row(i).sum();
  }
  return params;
}

GmdParams gmd_from_pmd(const PmdParams& params, int pivot) {
  require(pivot >= 0 && pivot < params.k(), ErrorCode::BadPivot,
          "pivot " + std::to_string(pivot) + " outside [0," +
              std::to_string(params.k()) + ")");
  Mat rows(params.n(), params.k() - 1);
  for (int j = 0, out = 0; j < params.k(); ++j) {
    if (j == pivot) continue;
    rows.col(out++) = params.rows.col(j);
  }
  return GmdParams{rows, pivot};
}

PmdParams pmd_from_gmd(const GmdParams& params) {
  Mat rows(params.n(), params.dims() + 1);
  for (int i = 0; i < params.n(); ++i) {
    double rest = params.rows.row(i).sum();
    require(rest <= 1.0 + 1e-9, ErrorCode::RowSumViolation,
            "GMD row " + std::to_string(i) + " sums to " + std::to_string(rest));
    for (int j = 0, in = 0; j <= params.dims(); ++j) {
      rows(i, j) = (j == params.pivot) ? std::max(0.0, 1.0 - rest)
                                       : params.rows(i, in++);
    }
  }
  return validate_params(rows);
}

RoundedParams round_params(const PmdParams& params, double c) {
  require(c > 0.0 && c <= 0.5 / params.k(), ErrorCode::BadC,
          "c must lie in (0, 1/(2k)]");
  Mat rounded = params.rows;
  for (int i = 0; i < params.n(); ++i) {
    double moved = 0.0;
    for (int j = 0; j < params.k(); ++j) {
      if (rounded(i, j) > 0.0 && rounded(i, j) < c) {
        moved += rounded(i, j);
        rounded(i, j) = 0.0;
      }
    }
    if (moved > 0.0) {
      int target = 0;
      for (int j = 1; j < params.k(); ++j) {
        if (rounded(i, j) > rounded(i, target)) target = j;
      }
      rounded(i, target) += moved;
    }
  }
  RoundedParams result;
  result.params = PmdParams{rounded};

  double predicted = std::pow(params.n() + 1.0, params.k() - 1);
  if (predicted <= 200'000.0) {
    result.tv_to_input =
        tv_distance(exact_pmf(params), exact_pmf(result.params));
    result.tv_is_exact = true;
  } else {
    result.tv_to_input = std::nan("");
    result.tv_is_exact = false;
  }
  return result;
}

}  // namespace pmdtk
