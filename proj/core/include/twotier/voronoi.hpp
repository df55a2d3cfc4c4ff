#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "twotier/model.hpp"

namespace twotier {

/// Cost tables for the generalized Voronoi diagram of a deployment.
///
/// AP n serves point w at cost a_n |p_n - w|^2 + k_n, where the additive term
/// k_n = beta b_{n,t(n)} |p_n - q_{t(n)}|^2 is fixed by the deployment. The
/// owner of w is the AP with the least cost; ties go to the smaller index,
/// compared exactly.
class GeneralizedVoronoi {
 public:
  GeneralizedVoronoi(const Scenario& s, const Deployment& d);

  /// Owner under explicit multiplicative weights and additive terms. Used by
  /// baselines and the brute-force oracle, which vary the additive term.
  GeneralizedVoronoi(std::vector<double> a, std::vector<Vec2> p,
                     std::vector<double> additive);

  int size() const { return static_cast<int>(a_.size()); }
  double cost(int n, Vec2 w) const {
    const auto i = static_cast<std::size_t>(n);
    return a_[i] * dist2(p_[i], w) + k_[i];
  }
  double additive(int n) const { return k_[static_cast<std::size_t>(n)]; }

  int owner(Vec2 w) const {
    int best = 0;
    double best_cost = cost(0, w);
    for (int n = 1; n < size(); ++n) {
      const double c = cost(n, w);
      if (c < best_cost) {
        best_cost = c;
        best = n;
      }
    }
    return best;
  }

  double min_cost(Vec2 w) const {
    double best_cost = cost(0, w);
    for (int n = 1; n < size(); ++n) best_cost = std::min(best_cost, cost(n, w));
    return best_cost;
  }

 private:
  std::vector<double> a_;
  std::vector<Vec2> p_;
  std::vector<double> k_;
};

/// a_n |p_n - w|^2 + beta b_{n,t(n)} |p_n - q_{t(n)}|^2. Throws
/// std::out_of_range for a bad index.
double cell_cost(int n, Vec2 w, const Scenario& s, const Deployment& d);

/// Index of the generalized Voronoi cell containing w.
int owner(Vec2 w, const Scenario& s, const Deployment& d);

enum class RegionKind { HalfSpace, Disk, DiskComplement, Empty, WholePlane };

const char* to_string(RegionKind kind);

/// Set where AP i's cost does not exceed AP j's, considering only that pair.
///
/// For equal a the set is the half-plane {w : normal . w + offset <= 0} with
/// normal = a_j p_j - a_i p_i. Otherwise it is a disk (a_i > a_j) or a disk
/// complement (a_i < a_j) about `center` with squared radius `l`; a negative
/// `l` degenerates to Empty or WholePlane. `radius` is sqrt(l) or 0.
struct PairwiseRegion {
  RegionKind kind = RegionKind::WholePlane;
  Vec2 normal;
  double offset = 0.0;
  Vec2 center;
  double l = 0.0;
  double radius = 0.0;

  bool contains(Vec2 w) const;
};

/// Throws std::domain_error when i == j.
PairwiseRegion pairwise_region(int i, int j, const Scenario& s,
                               const Deployment& d);

/// Fraction of samples on which the intersection-of-pairwise-regions route
/// selects exactly the cell owner() returns. Throws std::invalid_argument
/// for an empty sample set.
double membership_agreement(const Scenario& s, const Deployment& d,
                            std::span<const Vec2> samples);

}  // namespace twotier
