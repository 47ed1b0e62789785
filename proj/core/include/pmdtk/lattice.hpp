#pragma once

#include <functional>
#include <map>
#include <vector>

#include "pmdtk/error.hpp"

namespace pmdtk {

using LatticePoint = std::vector<int>;

// Explicit probability mass function on the integer lattice Z^k. The ordered
// map keeps iteration deterministic, which every report format relies on.
class LatticeDistribution {
 public:
  using Support = std::map<LatticePoint, double>;

  LatticeDistribution() = default;
  explicit LatticeDistribution(int dimension) : dimension_(dimension) {}
  LatticeDistribution(int dimension, Support support);

  int dimension() const { return dimension_; }
  const Support& support() const { return support_; }

  double mass(const LatticePoint& z) const;
  double total_mass() const;

  void add(const LatticePoint& z, double p);
  // Removes entries below `threshold`; returns the removed mass.
  double prune(double threshold);
  void normalize();

  // Checks nonnegativity and total mass within 1e-9 of 1.
  void check_invariants() const;

 private:
  int dimension_ = 0;
  Support support_;
};

// One-dimensional real-valued distribution (projections land off the integer
// lattice in general).
using Dist1d = std::map<double, double>;

double tv_distance(const LatticeDistribution& a, const LatticeDistribution& b);
double tv_distance_1d(const Dist1d& a, const Dist1d& b);

Dist1d project_direction(const LatticeDistribution& dist,
                         const std::vector<double>& v);

double kolmogorov_distance_1d(const Dist1d& a, const Dist1d& b);
// Against a continuous CDF; the sup is attained next to an atom of `a`.
double kolmogorov_distance_1d(const Dist1d& a,
                              const std::function<double(double)>& cdf_b);

LatticeDistribution convolve(const LatticeDistribution& a,
                             const LatticeDistribution& b,
                             double prune_threshold = 0.0);

LatticeDistribution shift(const LatticeDistribution& a, const LatticePoint& z);

}  // namespace pmdtk
