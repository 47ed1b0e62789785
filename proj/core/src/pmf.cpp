#include "pmdtk/pmf.hpp"

#include <cmath>

namespace pmdtk {

namespace {

// Shared convolution driver. Each row contributes outcomes (offset basis
// vectors) with their probabilities; a nullopt outcome index means "stay put"
// (the invisible GMD column).
LatticeDistribution convolve_rows(const Mat& rows, int dims, bool gmd_mode,
                                  const PmfOptions& options) {
  int n = static_cast<int>(rows.rows());
  double predicted = std::pow(n + 1.0, dims - (gmd_mode ? 0 : 1));
  require(predicted <= static_cast<double>(options.support_cap),
          ErrorCode::SupportTooLarge,
          "predicted support " + std::to_string(predicted) + " exceeds cap");

  LatticeDistribution acc(dims);
  acc.add(LatticePoint(dims, 0), 1.0);
  double lost = 0.0;
  for (int i = 0; i < n; ++i) {
    LatticeDistribution next(dims);
    double invisible =
        gmd_mode ? std::max(0.0, 1.0 - rows.row(i).sum()) : 0.0;
    for (const auto& [z, p] : acc.support()) {
      if (gmd_mode && invisible > 0.0) next.add(z, p * invisible);
      for (int j = 0; j < rows.cols(); ++j) {
        double q = rows(i, j);
        if (q <= 0.0) continue;
        LatticePoint w = z;
        ++w[j];
        next.add(w, p * q);
      }
    }
    lost += next.prune(options.prune_threshold);
    require(next.support().size() <= options.support_cap,
            ErrorCode::SupportTooLarge, "support cap exceeded mid-convolution");
    acc = std::move(next);
  }
  require(lost < 1e-10, ErrorCode::InvalidArgument,
          "pruning lost too much mass: " + std::to_string(lost));
  return acc;
}

}  // namespace

LatticeDistribution exact_pmf(const PmdParams& params,
                              const PmfOptions& options) {
  return convolve_rows(params.rows, params.k(), false, options);
}

LatticeDistribution exact_pmf(const GmdParams& params,
                              const PmfOptions& options) {
  return convolve_rows(params.rows, params.dims(), true, options);
}

SampleBatch sample_pmd(const PmdParams& params, int count, std::uint64_t seed) {
  require(count >= 1, ErrorCode::InvalidArgument, "count must be >= 1");
  Rng rng(seed);
  SampleBatch batch;
  batch.seed = seed;
  batch.count = count;
  batch.points.reserve(count);
  std::vector<double> row(params.k());
  for (int s = 0; s < count; ++s) {
    std::vector<int> point(params.k(), 0);
    for (int i = 0; i < params.n(); ++i) {
      for (int j = 0; j < params.k(); ++j) row[j] = params.rows(i, j);
      ++point[rng.categorical(row)];
    }
    batch.points.push_back(std::move(point));
  }
  return batch;
}

SampleBatch sample_gmd(const GmdParams& params, int count, std::uint64_t seed) {
  require(count >= 1, ErrorCode::InvalidArgument, "count must be >= 1");
  Rng rng(seed);
  SampleBatch batch;
  batch.seed = seed;
  batch.count = count;
  batch.points.reserve(count);
  std::vector<double> row(params.dims() + 1);
  for (int s = 0; s < count; ++s) {
    std::vector<int> point(params.dims(), 0);
    for (int i = 0; i < params.n(); ++i) {
      double rest = 1.0;
      for (int j = 0; j < params.dims(); ++j) {
        row[j] = params.rows(i, j);
        rest -= row[j];
      }
      row[params.dims()] = std::max(0.0, rest);
      std::size_t outcome = rng.categorical(row);
      if (outcome < static_cast<std::size_t>(params.dims())) ++point[outcome];
    }
    batch.points.push_back(std::move(point));
  }
  return batch;
}

LatticeDistribution histogram(const SampleBatch& batch, int dimension) {
  require(batch.count >= 1 && !batch.points.empty(),
          ErrorCode::TooFewSamples, "empty batch");
  LatticeDistribution out(dimension);
  double w = 1.0 / static_cast<double>(batch.points.size());
  for (const auto& point : batch.points) out.add(point, w);
  return out;
}

}  // namespace pmdtk
