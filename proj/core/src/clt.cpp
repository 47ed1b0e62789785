#include "pmdtk/clt.hpp"

#include <cmath>

#include "pmdtk/moments.hpp"
#include "pmdtk/pmf.hpp"

namespace pmdtk {

double size_free_bound(int k, double sigma, double C) {
  require(sigma > 0.0, ErrorCode::InvalidArgument, "sigma must be positive");
  return std::min(1.0, C * std::pow(static_cast<double>(k), 3.5) *
                           std::pow(sigma, -0.1));
}

double vv_bound(int k, double sigma, int n) {
  require(sigma > 0.0, ErrorCode::InvalidArgument, "sigma must be positive");
  require(n >= 1, ErrorCode::InvalidArgument, "n must be >= 1");
  double bound = std::pow(static_cast<double>(k), 4.0 / 3.0) *
                 std::pow(sigma, -1.0 / 3.0) * 2.2 *
                 std::pow(3.1 + 0.83 * std::log(static_cast<double>(n)),
                          2.0 / 3.0);
  return std::min(1.0, bound);
}

double berry_esseen_bound(const std::vector<double>& sigmas2,
                          const std::vector<double>& rhos) {
  require(sigmas2.size() == rhos.size(), ErrorCode::DimensionMismatch,
          "sigma/rho lists differ in length");
  double var = 0.0, rho = 0.0;
  for (double s : sigmas2) {
    require(s >= 0.0, ErrorCode::InvalidArgument, "negative variance");
    var += s;
  }
  for (double r : rhos) {
    require(r >= 0.0, ErrorCode::InvalidArgument, "negative third moment");
    rho += r;
  }
  require(var > 0.0, ErrorCode::ZeroVariance, "total variance is zero");
  return 0.56 * rho / std::pow(var, 1.5);
}

double projection_dk_bounds(ProjectionKind kind, int k, double sigma) {
  require(sigma > 0.0, ErrorCode::InvalidArgument, "sigma must be positive");
  if (kind == ProjectionKind::Gmd) return 1.0 / sigma;
  return std::sqrt(static_cast<double>(k)) / (std::sqrt(2.0 * M_PI) * sigma);
}

double variance_gap_lb(double sigma_x, double sigma_y) {
  require(sigma_y >= 0.0 && sigma_y < sigma_x, ErrorCode::BadOrder,
          "need 0 <= sigma_y < sigma_x");
  return std::max(0.0, 0.5 - std::pow(sigma_y / sigma_x, 2.0 / 3.0));
}

double sparse_shift_bound(int m, int k, double sigma) {
  require(sigma > 0.0, ErrorCode::InvalidArgument, "sigma must be positive");
  require(m >= 0, ErrorCode::InvalidArgument, "m must be >= 0");
  return m * std::sqrt(static_cast<double>(k)) /
         (std::sqrt(2.0 * M_PI) * sigma);
}

ParamClosenessBounds param_closeness_univariate(double alpha, double sigma1) {
  require(alpha > 0.0 && alpha < 1.0, ErrorCode::PremiseViolated,
          "alpha must lie in (0,1)");
  return {alpha * sigma1, 3.0 * alpha * sigma1 * sigma1};
}

ParamClosenessBounds param_closeness_kd(double alpha, int k, double sigma,
                                        double sigma_v) {
  double level = alpha + 2.0 * std::sqrt(static_cast<double>(k)) / sigma;
  require(level <= 0.1, ErrorCode::PremiseViolated,
          "alpha + 2 sqrt(k)/sigma exceeds 1/10");
  return {10.0 * level * sigma_v, 30.0 * level * sigma_v * sigma_v};
}

CltReport clt_experiment(const PmdParams& params,
                         const CltExperimentOptions& options) {
  CltReport report;
  report.k = params.k();
  report.n = params.n();
  report.mc_budget = options.mc_budget;
  report.seed = options.seed;

  int pivot = options.pivot < 0 ? params.k() - 1 : options.pivot;
  GmdParams gmd = gmd_from_pmd(params, pivot);
  MomentProfile mp = mean_cov(gmd);
  report.sigma2 = min_eigenvalue(mp.cov);
  double sigma = std::sqrt(std::max(report.sigma2, 0.0));
  if (sigma > 0.0) {
    report.size_free_bound = size_free_bound(params.k(), sigma,
                                             options.size_free_C);
    report.vv_bound = vv_bound(params.k(), sigma, params.n());
  } else {
    report.size_free_bound = 1.0;
    report.vv_bound = 1.0;
  }

  // Degenerate GMD: both sides are the same point mass.
  if (mp.cov.cwiseAbs().maxCoeff() <= 1e-12) {
    report.empirical_tv = 0.0;
    report.half_width = 0.0;
    report.exact = true;
    return report;
  }

  PmfOptions pmf_options;
  pmf_options.support_cap = options.support_cap;
  GaussianParams gauss = validate_gaussian(mp.mean, mp.cov);

  double predicted =
      std::pow(params.n() + 1.0, params.k() - 1);
  LatticeDistribution target(gmd.dims());
  if (predicted <= static_cast<double>(options.support_cap)) {
    target = exact_pmf(gmd, pmf_options);
  } else {
    target = histogram(sample_gmd(gmd, options.mc_budget,
                                  derive_seed(options.seed, 17)),
                       gmd.dims());
  }

  // Cell set: the target support plus the Gaussian's bulk.
  std::map<LatticePoint, bool> cell_set;
  for (const auto& [z, p] : target.support()) cell_set[z] = true;
  for (const auto& z : default_cell_set(gauss)) cell_set[z] = true;
  std::vector<LatticePoint> cells;
  cells.reserve(cell_set.size());
  for (const auto& [z, used] : cell_set) cells.push_back(z);

  CellPmf gcells = cell_pmf(gauss, cells, options.mc_budget,
                            derive_seed(options.seed, 23));
  double l1 = 0.0, gmass = 0.0;
  for (const auto& z : cells) {
    double p = target.mass(z);
    double q = gcells.dist.mass(z);
    l1 += std::abs(p - q);
    gmass += q;
  }
  // Gaussian mass outside the cell set is counted in full.
  report.empirical_tv = std::min(1.0, 0.5 * l1 + 0.5 * (1.0 - gmass));
  report.exact = gcells.exact && predicted <= options.support_cap;
  if (!report.exact) {
    double n_used = static_cast<double>(options.mc_budget);
    report.half_width =
        0.5 * std::sqrt(static_cast<double>(cells.size()) / n_used) +
        std::sqrt(std::log(200.0) / (2.0 * n_used));
  }
  return report;
}

}  // namespace pmdtk
