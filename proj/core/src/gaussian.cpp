#include "pmdtk/gaussian.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "pmdtk/rng.hpp"

namespace pmdtk {

namespace {

constexpr double kEigenTol = 1e-8;

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

int round_half_away(double x) {
  return static_cast<int>(x < 0.0 ? std::ceil(x - 0.5) : std::floor(x + 0.5));
}

// Square-root factor F with cov = F F^T from the pivoted LDLT, clamping
// diagonal entries in [-1e-8, 0] to zero.
Mat psd_factor(const Mat& cov) {
  Eigen::LDLT<Mat> ldlt(cov);
  Vec d = ldlt.vectorD();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    require(d[i] >= -kEigenTol * std::max(1.0, cov.norm()), ErrorCode::NotPSD,
            "LDLT pivot " + std::to_string(d[i]));
    if (d[i] < 0.0) d[i] = 0.0;
  }
  Mat l = ldlt.matrixL();
  Mat f = ldlt.transpositionsP().transpose() *
          Mat(l * d.cwiseSqrt().asDiagonal());
  return f;
}

// Orthonormal basis of the orthogonal complement of `null_dirs` columns.
Mat complement_basis(int dims, const Mat& null_dirs) {
  if (null_dirs.cols() == 0) return Mat::Identity(dims, dims);
  Eigen::FullPivHouseholderQR<Mat> qr(null_dirs);
  Mat q = qr.matrixQ();
  return q.rightCols(dims - null_dirs.cols());
}

struct ProjectedPair {
  Mat a, b;   // projected covariances
  Vec d;      // projected mean difference
  Vec d_null; // mean difference inside the joint nullspace
  int rank = 0;
};

ProjectedPair project_joint_nullspace(const GaussianParams& g1,
                                      const GaussianParams& g2) {
  require(g1.dims() == g2.dims(), ErrorCode::DimensionMismatch,
          "gaussian dimensions differ");
  Mat sum = g1.cov + g2.cov;
  Eigen::SelfAdjointEigenSolver<Mat> es(sum);
  double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<int> null_idx, live_idx;
  for (int i = 0; i < g1.dims(); ++i) {
    (es.eigenvalues()[i] <= kEigenTol * scale ? null_idx : live_idx)
        .push_back(i);
  }
  Mat q(g1.dims(), live_idx.size());
  Mat nq(g1.dims(), null_idx.size());
  for (std::size_t c = 0; c < live_idx.size(); ++c)
    q.col(c) = es.eigenvectors().col(live_idx[c]);
  for (std::size_t c = 0; c < null_idx.size(); ++c)
    nq.col(c) = es.eigenvectors().col(null_idx[c]);
  ProjectedPair out;
  out.a = q.transpose() * g1.cov * q;
  out.b = q.transpose() * g2.cov * q;
  out.d = q.transpose() * (g1.mean - g2.mean);
  out.d_null = nq.transpose() * (g1.mean - g2.mean);
  out.rank = static_cast<int>(live_idx.size());
  return out;
}

// 16-point Gauss-Legendre nodes/weights on [-1,1], computed once by Newton
// iteration on the Legendre polynomial.
const std::vector<std::pair<double, double>>& gl16() {
  static const std::vector<std::pair<double, double>> table = [] {
    const int n = 16;
    std::vector<std::pair<double, double>> t(n);
    for (int i = 0; i < n; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
          double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      t[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
    }
    return t;
  }();
  return table;
}

}  // namespace

GaussianParams validate_gaussian(const Vec& mean, const Mat& cov) {
  require(cov.rows() == cov.cols() && cov.rows() == mean.size(),
          ErrorCode::DimensionMismatch, "mean/cov shapes disagree");
  require((cov - cov.transpose()).cwiseAbs().maxCoeff() <= 1e-10,
          ErrorCode::InvalidArgument, "covariance not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(cov, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= -kEigenTol * std::max(1.0, cov.norm()),
          ErrorCode::NotPSD, "covariance has negative eigenvalue");
  return GaussianParams{mean, cov};
}

void BlockStructure::check(int dims) const {
  std::vector<bool> seen(dims, false);
  for (const auto& block : blocks) {
    bool pivot_inside = false;
    for (int c : block.coords) {
      require(c >= 0 && c < dims, ErrorCode::InconsistentBlocks,
              "coordinate out of range");
      require(!seen[c], ErrorCode::InconsistentBlocks, "blocks overlap");
      seen[c] = true;
      if (c == block.pivot) pivot_inside = true;
    }
    require(pivot_inside, ErrorCode::InconsistentBlocks,
            "pivot outside its block");
  }
  for (int c = 0; c < dims; ++c) {
    require(seen[c], ErrorCode::InconsistentBlocks,
            "blocks do not cover coordinate " + std::to_string(c));
  }
}

void StructuredGaussian::check() const {
  structure.check(dims());
  std::vector<int> owner(dims(), -1);
  for (std::size_t b = 0; b < structure.blocks.size(); ++b) {
    for (int c : structure.blocks[b].coords) owner[c] = static_cast<int>(b);
  }
  for (int i = 0; i < dims(); ++i) {
    for (int j = 0; j < dims(); ++j) {
      if (owner[i] != owner[j]) {
        require(std::abs(params.cov(i, j)) <= 1e-10,
                ErrorCode::InconsistentBlocks,
                "covariance crosses block boundary");
      }
    }
  }
}

SampleBatch sample_discretized(const GaussianParams& g, int count,
                               std::uint64_t seed) {
  require(count >= 1, ErrorCode::InvalidArgument, "count must be >= 1");
  Mat factor = psd_factor(g.cov);
  Rng rng(seed);
  SampleBatch batch;
  batch.seed = seed;
  batch.count = count;
  batch.points.reserve(count);
  Vec z(g.dims());
  for (int s = 0; s < count; ++s) {
    for (int j = 0; j < g.dims(); ++j) z[j] = rng.normal();
    Vec y = g.mean + factor * z;
    LatticePoint point(g.dims());
    for (int j = 0; j < g.dims(); ++j) point[j] = round_half_away(y[j]);
    batch.points.push_back(std::move(point));
  }
  return batch;
}

SampleBatch sample_structured(const StructuredGaussian& sg, int count,
                              std::uint64_t seed) {
  sg.check();
  require(count >= 1, ErrorCode::InvalidArgument, "count must be >= 1");
  Rng rng(seed);
  SampleBatch batch;
  batch.seed = seed;
  batch.count = count;
  batch.points.reserve(count);

  // Pre-extract per-block non-pivot marginals.
  struct BlockSampler {
    std::vector<int> free_coords;
    int pivot;
    int sum;
    Vec mean;
    Mat factor;
  };
  std::vector<BlockSampler> samplers;
  for (const auto& block : sg.structure.blocks) {
    BlockSampler bs;
    bs.pivot = block.pivot;
    bs.sum = block.sum;
    for (int c : block.coords) {
      if (c != block.pivot) bs.free_coords.push_back(c);
    }
    int m = static_cast<int>(bs.free_coords.size());
    bs.mean = Vec(m);
    Mat cov(m, m);
    for (int a = 0; a < m; ++a) {
      bs.mean[a] = sg.params.mean[bs.free_coords[a]];
      for (int b = 0; b < m; ++b) {
        cov(a, b) = sg.params.cov(bs.free_coords[a], bs.free_coords[b]);
      }
    }
    bs.factor = m > 0 ? psd_factor(cov) : Mat(0, 0);
    samplers.push_back(std::move(bs));
  }

  for (int s = 0; s < count; ++s) {
    LatticePoint point(sg.dims(), 0);
    for (const auto& bs : samplers) {
      int m = static_cast<int>(bs.free_coords.size());
      int used = 0;
      if (m > 0) {
        Vec z(m);
        for (int j = 0; j < m; ++j) z[j] = rng.normal();
        Vec y = bs.mean + bs.factor * z;
        for (int j = 0; j < m; ++j) {
          int v = round_half_away(y[j]);
          point[bs.free_coords[j]] = v;
          used += v;
        }
      }
      point[bs.pivot] = bs.sum - used;
    }
    batch.points.push_back(std::move(point));
  }
  return batch;
}

CellPmf cell_pmf(const GaussianParams& g, const std::vector<LatticePoint>& cells,
                 int mc_budget, std::uint64_t seed, double delta) {
  CellPmf out;
  out.dist = LatticeDistribution(g.dims());

  Eigen::SelfAdjointEigenSolver<Mat> es(g.cov);
  double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  int rank = 0;
  for (int i = 0; i < g.dims(); ++i) {
    if (es.eigenvalues()[i] > kEigenTol * scale) ++rank;
  }
  bool diagonal = true;
  for (int i = 0; i < g.dims() && diagonal; ++i) {
    for (int j = 0; j < g.dims(); ++j) {
      if (i != j && std::abs(g.cov(i, j)) > 1e-12) {
        diagonal = false;
        break;
      }
    }
  }

  if (diagonal) {
    for (const auto& z : cells) {
      double p = 1.0;
      for (int j = 0; j < g.dims(); ++j) {
        double var = std::max(0.0, g.cov(j, j));
        if (var <= 0.0) {
          if (round_half_away(g.mean[j]) != z[j]) {
            p = 0.0;
            break;
          }
        } else {
          double sd = std::sqrt(var);
          p *= normal_cdf((z[j] + 0.5 - g.mean[j]) / sd) -
               normal_cdf((z[j] - 0.5 - g.mean[j]) / sd);
        }
      }
      if (p > 0.0) out.dist.add(z, p);
    }
    out.exact = true;
    return out;
  }

  if (rank <= 1) {
    // y = mean + u * sqrt(lambda) * t with t ~ N(0,1); each coordinate pins t
    // to an interval.
    Vec u = es.eigenvectors().col(g.dims() - 1) *
            std::sqrt(std::max(0.0, es.eigenvalues()[g.dims() - 1]));
    for (const auto& z : cells) {
      double lo = -std::numeric_limits<double>::infinity();
      double hi = std::numeric_limits<double>::infinity();
      bool empty = false;
      for (int j = 0; j < g.dims() && !empty; ++j) {
        double a = z[j] - 0.5 - g.mean[j];
        double b = z[j] + 0.5 - g.mean[j];
        if (std::abs(u[j]) < 1e-14) {
          if (round_half_away(g.mean[j]) != z[j]) empty = true;
        } else if (u[j] > 0.0) {
          lo = std::max(lo, a / u[j]);
          hi = std::min(hi, b / u[j]);
        } else {
          lo = std::max(lo, b / u[j]);
          hi = std::min(hi, a / u[j]);
        }
      }
      if (!empty && hi > lo) {
        double p = normal_cdf(hi) - normal_cdf(lo);
        if (p > 0.0) out.dist.add(z, p);
      }
    }
    out.exact = true;
    return out;
  }

  if (g.dims() == 2) {
    // Full-rank 2-d: Gauss-Legendre product quadrature over each unit square.
    Mat inv = g.cov.inverse();
    double det = g.cov.determinant();
    double norm_const = 1.0 / (2.0 * M_PI * std::sqrt(det));
    const auto& nodes = gl16();
    for (const auto& z : cells) {
      double p = 0.0;
      for (const auto& [x1, w1] : nodes) {
        for (const auto& [x2, w2] : nodes) {
          Vec y(2);
          y[0] = z[0] + 0.5 * x1 - g.mean[0];
          y[1] = z[1] + 0.5 * x2 - g.mean[1];
          p += w1 * w2 * std::exp(-0.5 * y.dot(inv * y));
        }
      }
      p *= 0.25 * norm_const;
      if (p > 0.0) out.dist.add(z, p);
    }
    out.exact = true;
    return out;
  }

  require(mc_budget >= 10'000, ErrorCode::BudgetTooSmall,
          "Monte Carlo cell estimation needs a budget of at least 1e4");
  SampleBatch batch = sample_discretized(g, mc_budget, seed);
  std::map<LatticePoint, int> counts;
  for (const auto& point : batch.points) ++counts[point];
  for (const auto& z : cells) {
    auto it = counts.find(z);
    if (it != counts.end()) {
      out.dist.add(z, static_cast<double>(it->second) / mc_budget);
    }
  }
  out.half_width = 2.0 * std::sqrt(std::log(2.0 / delta) / (2.0 * mc_budget));
  out.exact = false;
  return out;
}

std::vector<LatticePoint> default_cell_set(const GaussianParams& g,
                                           double radius, std::size_t cap) {
  std::vector<int> lo(g.dims()), hi(g.dims());
  double count = 1.0;
  for (int j = 0; j < g.dims(); ++j) {
    double sd = std::sqrt(std::max(0.0, g.cov(j, j)));
    lo[j] = round_half_away(g.mean[j] - radius * sd - 1.0);
    hi[j] = round_half_away(g.mean[j] + radius * sd + 1.0);
    count *= hi[j] - lo[j] + 1;
  }
  require(count <= static_cast<double>(cap), ErrorCode::CapExceeded,
          "cell box of size " + std::to_string(count));
  std::vector<LatticePoint> cells;
  cells.reserve(static_cast<std::size_t>(count));
  LatticePoint z(lo.begin(), lo.end());
  while (true) {
    cells.push_back(z);
    int j = 0;
    while (j < g.dims() && z[j] == hi[j]) {
      z[j] = lo[j];
      ++j;
    }
    if (j == g.dims()) break;
    ++z[j];
  }
  return cells;
}

double tv_bound_gauss_pair(const GaussianParams& g1, const GaussianParams& g2) {
  require(g1.dims() == g2.dims(), ErrorCode::DimensionMismatch,
          "dimension mismatch");
  double alpha = (g1.cov - g2.cov).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Mat> es(g1.cov, Eigen::EigenvaluesOnly);
  double sigma2 = es.eigenvalues().minCoeff();
  require(alpha <= sigma2, ErrorCode::PremiseViolated,
          "entrywise gap exceeds the minimum eigenvalue of cov1");
  double mean_term =
      (g1.mean - g2.mean).norm() / std::sqrt(2.0 * M_PI * sigma2);
  double cov_term =
      alpha == 0.0
          ? 0.0
          : g1.dims() * alpha / (std::sqrt(2.0 * M_PI * M_E) * (sigma2 - alpha));
  return mean_term + cov_term;
}

SpectralCertificate tv_bound_spectral(const GaussianParams& g1,
                                      const GaussianParams& g2, double eps) {
  require(eps >= 0.0, ErrorCode::InvalidArgument, "eps must be >= 0");
  SpectralCertificate cert;
  cert.eps = eps;

  ProjectedPair pp = project_joint_nullspace(g1, g2);
  if (pp.d_null.size() > 0 && pp.d_null.cwiseAbs().maxCoeff() > 1e-9) {
    // Means differ along a direction where both variances vanish.
    cert.certified = false;
    return cert;
  }
  if (pp.rank == 0) {
    cert.certified = true;
    return cert;
  }

  // Ranks must agree inside the live subspace for the ratio test.
  Eigen::SelfAdjointEigenSolver<Mat> ea(pp.a, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Mat> eb(pp.b, Eigen::EigenvaluesOnly);
  double sa = std::max(1.0, ea.eigenvalues().cwiseAbs().maxCoeff());
  double sb = std::max(1.0, eb.eigenvalues().cwiseAbs().maxCoeff());
  bool a_sing = ea.eigenvalues().minCoeff() <= kEigenTol * sa;
  bool b_sing = eb.eigenvalues().minCoeff() <= kEigenTol * sb;
  require(!a_sing && !b_sing, ErrorCode::NullspaceMismatch,
          "covariances do not share a nullspace");

  double c = eps / (2.0 * std::sqrt(static_cast<double>(g1.dims())));
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(pp.a, pp.b,
                                                    Eigen::EigenvaluesOnly);
  cert.cov_ratio_lo = ges.eigenvalues().minCoeff();
  cert.cov_ratio_hi = ges.eigenvalues().maxCoeff();
  bool cov_ok;
  if (c >= 1.0) {
    cov_ok = true;
  } else {
    cov_ok = cert.cov_ratio_lo >= (1.0 - c) - 1e-12 &&
             cert.cov_ratio_hi <= 1.0 / (1.0 - c) + 1e-12;
  }

  // Mean premise: exists v with |v^T d| > eps s_v iff
  // min_t d^T (t A + (1-t) B)^{-1} d < 1/eps^2. Golden-section on the convex
  // 1-d function.
  bool mean_ok;
  if (pp.d.norm() <= 1e-14) {
    mean_ok = true;
    cert.mean_slack = 0.0;
  } else if (eps == 0.0) {
    mean_ok = false;
  } else {
    auto h = [&](double t) {
      Mat mix = t * pp.a + (1.0 - t) * pp.b;
      return pp.d.dot(mix.ldlt().solve(pp.d));
    };
    double lo = 0.0, hi = 1.0;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = h(x1), f2 = h(x2);
    for (int it = 0; it < 200; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = h(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = h(x2);
      }
    }
    double hmin = std::min({h(lo), h(hi), f1, f2});
    cert.mean_slack = hmin;
    mean_ok = hmin <= 1.0 / (eps * eps) + 1e-12;
  }

  cert.certified = cov_ok && mean_ok;
  return cert;
}

double kl_gaussians(const GaussianParams& g1, const GaussianParams& g2) {
  ProjectedPair pp = project_joint_nullspace(g1, g2);
  if (pp.d_null.size() > 0 && pp.d_null.cwiseAbs().maxCoeff() > 1e-9) {
    return std::numeric_limits<double>::infinity();
  }
  if (pp.rank == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> eb(pp.b, Eigen::EigenvaluesOnly);
  require(eb.eigenvalues().minCoeff() >
              kEigenTol * std::max(1.0, eb.eigenvalues().cwiseAbs().maxCoeff()),
          ErrorCode::Singular, "second covariance singular off the nullspace");
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(pp.a, pp.b,
                                                    Eigen::EigenvaluesOnly);
  double kl = pp.d.dot(pp.b.ldlt().solve(pp.d));
  for (Eigen::Index i = 0; i < ges.eigenvalues().size(); ++i) {
    double lambda = ges.eigenvalues()[i];
    if (lambda <= 0.0) return std::numeric_limits<double>::infinity();
    kl += lambda - std::log(lambda) - 1.0;
  }
  return 0.5 * kl;
}

double pinsker_tv(double kl) { return std::sqrt(kl / 2.0); }

double min_eigenvalue(const Mat& cov, bool exclude_all_ones) {
  require((cov - cov.transpose()).cwiseAbs().maxCoeff() <= 1e-8,
          ErrorCode::InvalidArgument, "matrix not symmetric");
  if (!exclude_all_ones) {
    Eigen::SelfAdjointEigenSolver<Mat> es(cov, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }
  int k = static_cast<int>(cov.rows());
  Mat ones = Mat::Ones(k, 1);
  Mat q = complement_basis(k, ones);
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat(q.transpose() * cov * q),
                                        Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace pmdtk
