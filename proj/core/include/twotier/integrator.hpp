#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "twotier/model.hpp"

namespace twotier {

enum class IntegratorMode { MidpointGrid, MonteCarlo };

/// How integrals of the density over omega are discretized.
///
/// MidpointGrid lays square cells over omega's bounding box with
/// `resolution` cells along the longer side (the shorter side gets
/// proportionally many, at least one) and keeps the cell midpoints that fall
/// inside omega. MonteCarlo draws `resolution` seeded uniform points inside
/// omega. Either way the sample weights are density * cell area, renormalized
/// to total mass one.
struct Integrator {
  IntegratorMode mode = IntegratorMode::MidpointGrid;
  int resolution = 512;
  std::uint64_t seed = 0;
  /// Worker threads for sample loops; 0 means hardware concurrency. Results
  /// do not depend on this value.
  int threads = 1;

  static constexpr int kMinResolution = 16;
};

/// Weighted point set standing in for the density over omega.
///
/// Samples are stored row-major (ascending y, then ascending x for grids) and
/// split into fixed-size blocks; per-block partial sums are combined in block
/// order so every reduction is bit-identical regardless of thread count.
class Quadrature {
 public:
  static constexpr std::size_t kBlockSize = 4096;

  Quadrature(std::vector<Vec2> points, std::vector<double> weights,
             double cell_area, int threads = 1);

  std::size_t size() const { return points_.size(); }
  std::span<const Vec2> points() const { return points_; }
  std::span<const double> weights() const { return weights_; }
  /// Area represented by one sample before renormalization.
  double cell_area() const { return cell_area_; }
  std::size_t block_count() const {
    return (points_.size() + kBlockSize - 1) / kBlockSize;
  }
  std::size_t block_begin(std::size_t block) const { return block * kBlockSize; }
  std::size_t block_end(std::size_t block) const {
    return std::min(points_.size(), (block + 1) * kBlockSize);
  }

  /// Runs fn(block) for every block, possibly concurrently. fn must only
  /// write to per-block state.
  void for_each_block(const std::function<void(std::size_t)>& fn) const;

  int threads() const { return threads_; }

 private:
  std::vector<Vec2> points_;
  std::vector<double> weights_;
  double cell_area_;
  int threads_;
};

/// Throws ValidationError if the resolution is below the minimum or omega
/// holds no sample.
Quadrature build_quadrature(const Scenario& s, const Integrator& g);

}  // namespace twotier
