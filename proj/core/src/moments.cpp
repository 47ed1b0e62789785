#include "pmdtk/moments.hpp"

#include <cmath>

namespace pmdtk {

namespace {

MomentProfile moments_of_rows(const Mat& rows, bool gmd_mode) {
  int dims = static_cast<int>(rows.cols());
  MomentProfile mp;
  mp.mean = rows.colwise().sum();
  mp.cov = Mat::Zero(dims, dims);
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    Vec p = rows.row(i);
    mp.cov += Mat(p.asDiagonal()) - p * p.transpose();
  }
  (void)gmd_mode;  // same formula: the invisible column never contributes
  return mp;
}

// Iterate all beta with 0 <= beta <= alpha componentwise. Calls f(beta).
template <typename F>
void for_each_sub_index(const std::vector<int>& alpha, F&& f) {
  std::vector<int> beta(alpha.size(), 0);
  while (true) {
    f(beta);
    std::size_t j = 0;
    while (j < alpha.size() && beta[j] == alpha[j]) {
      beta[j] = 0;
      ++j;
    }
    if (j == alpha.size()) break;
    ++beta[j];
  }
}

double multinomial_coeff(int total, const std::vector<int>& parts) {
  double log_c = std::lgamma(total + 1.0);
  for (int p : parts) log_c -= std::lgamma(p + 1.0);
  return std::round(std::exp(log_c));
}

// Surj(a, b): surjections from a labeled elements onto b labeled cells,
// via inclusion-exclusion. Surj(0, 0) = 1.
double surjection_count(int a, int b) {
  if (b == 0) return a == 0 ? 1.0 : 0.0;
  if (b > a) return 0.0;
  double total = 0.0;
  for (int j = 0; j <= b; ++j) {
    double binom = std::round(
        std::exp(std::lgamma(b + 1.0) - std::lgamma(j + 1.0) -
                 std::lgamma(b - j + 1.0)));
    double term = binom * std::pow(static_cast<double>(b - j), a);
    total += (j % 2 == 0) ? term : -term;
  }
  return std::round(total);
}

}  // namespace

Mat WeightedGraph::laplacian() const {
  Mat lap = -weights;
  for (Eigen::Index i = 0; i < weights.rows(); ++i) {
    lap(i, i) = weights.row(i).sum();
  }
  return lap;
}

MomentProfile mean_cov(const PmdParams& params) {
  return moments_of_rows(params.rows, false);
}

MomentProfile mean_cov(const GmdParams& params) {
  return moments_of_rows(params.rows, true);
}

WeightedGraph laplacian_graph(const PmdParams& params) {
  int k = params.k();
  Mat w = Mat::Zero(k, k);
  for (int i = 0; i < params.n(); ++i) {
    for (int a = 0; a < k; ++a) {
      for (int b = a + 1; b < k; ++b) {
        double inc = params.rows(i, a) * params.rows(i, b);
        w(a, b) += inc;
        w(b, a) += inc;
      }
    }
  }
  return WeightedGraph{w};
}

double raw_moment(const LatticeDistribution& dist, const MultiIndex& alpha) {
  require(static_cast<int>(alpha.alpha.size()) == dist.dimension(),
          ErrorCode::DimensionMismatch, "alpha of wrong dimension");
  double total = 0.0;
  for (const auto& [z, p] : dist.support()) {
    double term = p;
    for (std::size_t j = 0; j < alpha.alpha.size(); ++j) {
      for (int e = 0; e < alpha.alpha[j]; ++e) term *= z[j];
    }
    total += term;
  }
  return total;
}

double elementary_multisym(const Mat& P, const MultiIndex& alpha) {
  require(static_cast<int>(alpha.alpha.size()) == P.cols(),
          ErrorCode::DimensionMismatch, "alpha size must match columns");
  require(alpha.norm() <= P.rows(), ErrorCode::AlphaTooLarge,
          "||alpha|| exceeds the number of rows");
  // DP over rows on the coefficient table indexed by beta <= alpha.
  std::vector<int> dims = alpha.alpha;
  std::vector<int> strides(dims.size());
  int size = 1;
  for (std::size_t j = 0; j < dims.size(); ++j) {
    strides[j] = size;
    size *= dims[j] + 1;
  }
  std::vector<double> coeff(size, 0.0);
  coeff[0] = 1.0;
  for (Eigen::Index i = 0; i < P.rows(); ++i) {
    std::vector<double> next = coeff;
    for (int idx = 0; idx < size; ++idx) {
      if (coeff[idx] == 0.0) continue;
      for (std::size_t j = 0; j < dims.size(); ++j) {
        int bj = (idx / strides[j]) % (dims[j] + 1);
        if (bj < dims[j] && P(i, j) != 0.0) {
          next[idx + strides[j]] += coeff[idx] * P(i, j);
        }
      }
    }
    coeff = std::move(next);
  }
  return coeff[size - 1];
}

double power_sum(const Mat& P, const MultiIndex& alpha) {
  require(static_cast<int>(alpha.alpha.size()) == P.cols(),
          ErrorCode::DimensionMismatch, "alpha size must match columns");
  double total = 0.0;
  for (Eigen::Index i = 0; i < P.rows(); ++i) {
    double term = 1.0;
    for (std::size_t j = 0; j < alpha.alpha.size(); ++j) {
      for (int e = 0; e < alpha.alpha[j]; ++e) term *= P(i, j);
    }
    total += term;
  }
  return total;
}

double dalbec_residual(const Mat& P, const MultiIndex& alpha) {
  int norm = alpha.norm();
  require(norm >= 1, ErrorCode::InvalidArgument, "need ||alpha|| >= 1");
  double residual = norm * elementary_multisym(P, alpha);
  for_each_sub_index(alpha.alpha, [&](const std::vector<int>& beta) {
    int beta_norm = 0;
    for (int b : beta) beta_norm += b;
    if (beta_norm == 0 || beta_norm == norm) return;
    std::vector<int> gamma(alpha.alpha.size());
    for (std::size_t j = 0; j < gamma.size(); ++j) {
      gamma[j] = alpha.alpha[j] - beta[j];
    }
    double sign = (beta_norm % 2 == 0) ? 1.0 : -1.0;
    residual += sign * multinomial_coeff(beta_norm, beta) *
                power_sum(P, MultiIndex{beta}) *
                elementary_multisym(P, MultiIndex{gamma});
  });
  double sign = (norm % 2 == 0) ? 1.0 : -1.0;
  residual += sign * multinomial_coeff(norm, alpha.alpha) *
              power_sum(P, alpha);
  return residual;
}

std::map<MultiIndex, double> moment_elementary_coeffs(const MultiIndex& alpha) {
  std::map<MultiIndex, double> coeffs;
  for_each_sub_index(alpha.alpha, [&](const std::vector<int>& beta) {
    double gamma = 1.0;
    bool valid = true;
    for (std::size_t j = 0; j < beta.size(); ++j) {
      if (alpha.alpha[j] > 0 && beta[j] == 0) valid = false;
      gamma *= surjection_count(alpha.alpha[j], beta[j]);
    }
    if (valid && gamma != 0.0) coeffs[MultiIndex{beta}] = gamma;
  });
  return coeffs;
}

double tv_lower_bound_from_moment_gap(int m, const MultiIndex& alpha,
                                      double delta) {
  require(delta >= 0.0, ErrorCode::InvalidArgument, "delta must be >= 0");
  require(m >= 1, ErrorCode::InvalidArgument, "m must be >= 1");
  return delta * std::pow(static_cast<double>(m), -alpha.norm());
}

MomentProfile empirical_moments(const SampleBatch& samples) {
  require(samples.points.size() >= 2, ErrorCode::TooFewSamples,
          "need at least 2 samples");
  int dims = static_cast<int>(samples.points.front().size());
  int count = static_cast<int>(samples.points.size());
  MomentProfile mp;
  mp.mean = Vec::Zero(dims);
  for (const auto& point : samples.points) {
    for (int j = 0; j < dims; ++j) mp.mean[j] += point[j];
  }
  mp.mean /= count;
  mp.cov = Mat::Zero(dims, dims);
  Vec centered(dims);
  for (const auto& point : samples.points) {
    for (int j = 0; j < dims; ++j) centered[j] = point[j] - mp.mean[j];
    mp.cov += centered * centered.transpose();
  }
  mp.cov /= (count - 1);
  return mp;
}

}  // namespace pmdtk
