#pragma once

#include <cstdint>

#include "pmdtk/lattice.hpp"
#include "pmdtk/params.hpp"
#include "pmdtk/rng.hpp"

namespace pmdtk {

struct PmfOptions {
  // Upper bound on both the predicted support size (n+1)^(k-1) and the live
  // accumulator size during convolution.
  std::size_t support_cap = 4'000'000;
  // Entries below this are dropped between convolution steps. The discarded
  // mass is tracked and must stay below 1e-10.
  double prune_threshold = 1e-15;
};

// Exact PMF of the sum of the n CRVs by sequential sparse convolution.
LatticeDistribution exact_pmf(const PmdParams& params,
                              const PmfOptions& options = {});

// Same for a GMD; the "invisible" outcome contributes the zero vector.
LatticeDistribution exact_pmf(const GmdParams& params,
                              const PmfOptions& options = {});

SampleBatch sample_pmd(const PmdParams& params, int count, std::uint64_t seed);
SampleBatch sample_gmd(const GmdParams& params, int count, std::uint64_t seed);

LatticeDistribution histogram(const SampleBatch& batch, int dimension);

}  // namespace pmdtk
