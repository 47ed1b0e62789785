#include "pmdtk/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace pmdtk {

LatticeDistribution::LatticeDistribution(int dimension, Support support)
    : dimension_(dimension), support_(std::move(support)) {
  for (const auto& [z, p] : support_) {
    require(static_cast<int>(z.size()) == dimension_,
            ErrorCode::DimensionMismatch, "support point of wrong dimension");
    require(p >= 0.0, ErrorCode::InvalidArgument, "negative probability");
  }
}

double LatticeDistribution::mass(const LatticePoint& z) const {
  auto it = support_.find(z);
  return it == support_.end() ? 0.0 : it->second;
}

double LatticeDistribution::total_mass() const {
  double total = 0.0;
  for (const auto& [z, p] : support_) total += p;
  return total;
}

void LatticeDistribution::add(const LatticePoint& z, double p) {
  require(static_cast<int>(z.size()) == dimension_,
          ErrorCode::DimensionMismatch, "point of wrong dimension");
  support_[z] += p;
}

double LatticeDistribution::prune(double threshold) {
  double removed = 0.0;
  for (auto it = support_.begin(); it != support_.end();) {
    if (it->second < threshold) {
      removed += it->second;
      it = support_.erase(it);
    } else {
      ++it;
    }
  }
  return removed;
}

void LatticeDistribution::normalize() {
  double total = total_mass();
  require(total > 0.0, ErrorCode::InvalidArgument, "empty distribution");
  for (auto& [z, p] : support_) p /= total;
}

void LatticeDistribution::check_invariants() const {
  for (const auto& [z, p] : support_) {
    require(p >= 0.0, ErrorCode::InvalidArgument, "negative probability");
  }
  double total = total_mass();
  require(std::abs(total - 1.0) <= 1e-9, ErrorCode::InvalidArgument,
          "total mass " + std::to_string(total));
}

double tv_distance(const LatticeDistribution& a, const LatticeDistribution& b) {
  require(a.dimension() == b.dimension(), ErrorCode::DimensionMismatch,
          "distributions of different dimension");
  double l1 = 0.0;
  auto ia = a.support().begin();
  auto ib = b.support().begin();
  while (ia != a.support().end() || ib != b.support().end()) {
    if (ib == b.support().end() ||
        (ia != a.support().end() && ia->first < ib->first)) {
      l1 += ia->second;
      ++ia;
    } else if (ia == a.support().end() || ib->first < ia->first) {
      l1 += ib->second;
      ++ib;
    } else {
      l1 += std::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return 0.5 * l1;
}

double tv_distance_1d(const Dist1d& a, const Dist1d& b) {
  double l1 = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      l1 += ia->second;
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      l1 += ib->second;
      ++ib;
    } else {
      l1 += std::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return 0.5 * l1;
}

Dist1d project_direction(const LatticeDistribution& dist,
                         const std::vector<double>& v) {
  require(static_cast<int>(v.size()) == dist.dimension(),
          ErrorCode::DimensionMismatch, "direction of wrong dimension");
  double norm2 = 0.0;
  for (double x : v) norm2 += x * x;
  require(norm2 > 0.0, ErrorCode::ZeroDirection, "zero direction");
  Dist1d out;
  for (const auto& [z, p] : dist.support()) {
    double t = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) t += v[j] * z[j];
    out[t] += p;
  }
  return out;
}

double kolmogorov_distance_1d(const Dist1d& a, const Dist1d& b) {
  std::set<double> points;
  for (const auto& [x, p] : a) points.insert(x);
  for (const auto& [x, p] : b) points.insert(x);
  double fa = 0.0, fb = 0.0, sup = 0.0;
  for (double x : points) {
    auto ia = a.find(x);
    auto ib = b.find(x);
    if (ia != a.end()) fa += ia->second;
    if (ib != b.end()) fb += ib->second;
    sup = std::max(sup, std::abs(fa - fb));
  }
  return sup;
}

double kolmogorov_distance_1d(const Dist1d& a,
                              const std::function<double(double)>& cdf_b) {
  // F_a is a step function, so the sup lives at an atom: compare both the
  // left limit and the value of F_a against the continuous CDF there.
  double fa = 0.0, sup = 0.0;
  for (const auto& [x, p] : a) {
    double fb = cdf_b(x);
    sup = std::max(sup, std::abs(fa - fb));
    fa += p;
    sup = std::max(sup, std::abs(fa - fb));
  }
  return sup;
}

LatticeDistribution convolve(const LatticeDistribution& a,
                             const LatticeDistribution& b,
                             double prune_threshold) {
  require(a.dimension() == b.dimension(), ErrorCode::DimensionMismatch,
          "convolution dimension mismatch");
  LatticeDistribution out(a.dimension());
  for (const auto& [za, pa] : a.support()) {
    for (const auto& [zb, pb] : b.support()) {
      LatticePoint z(za.size());
      for (std::size_t j = 0; j < z.size(); ++j) z[j] = za[j] + zb[j];
      out.add(z, pa * pb);
    }
  }
  if (prune_threshold > 0.0) out.prune(prune_threshold);
  return out;
}

LatticeDistribution shift(const LatticeDistribution& a, const LatticePoint& z) {
  require(static_cast<int>(z.size()) == a.dimension(),
          ErrorCode::DimensionMismatch, "shift dimension mismatch");
  LatticeDistribution out(a.dimension());
  for (const auto& [za, pa] : a.support()) {
    LatticePoint w(za.size());
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = za[j] + z[j];
    out.add(w, pa);
  }
  return out;
}

}  // namespace pmdtk
