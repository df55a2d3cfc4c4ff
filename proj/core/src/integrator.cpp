#include "twotier/integrator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

namespace twotier {

Quadrature::Quadrature(std::vector<Vec2> points, std::vector<double> weights,
                       double cell_area, int threads)
    : points_(std::move(points)),
      weights_(std::move(weights)),
      cell_area_(cell_area),
      threads_(threads) {
  if (threads_ <= 0) {
    threads_ = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
}

void Quadrature::for_each_block(const std::function<void(std::size_t)>& fn) const {
  const std::size_t blocks = block_count();
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads_), blocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) fn(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t b = next++; b < blocks; b = next++) fn(b);
    });
  }
}

Quadrature build_quadrature(const Scenario& s, const Integrator& g) {
  if (g.resolution < Integrator::kMinResolution) {
    throw ValidationError("integrator resolution " + std::to_string(g.resolution) +
                          " is below the minimum of " +
                          std::to_string(Integrator::kMinResolution));
  }
  const ConvexPolygon& omega = s.omega();
  const BoundingBox& box = omega.bounds();
  std::vector<Vec2> points;
  std::vector<double> weights;
  double cell_area = 0.0;

  if (g.mode == IntegratorMode::MidpointGrid) {
    const double longer = std::max(box.width(), box.height());
    const double h = longer / g.resolution;
    const int nx = std::max(1, static_cast<int>(std::lround(box.width() / h)));
    const int ny = std::max(1, static_cast<int>(std::lround(box.height() / h)));
    const double dx = box.width() / nx;
    const double dy = box.height() / ny;
    cell_area = dx * dy;
    points.reserve(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
      const double y = box.lo.y + (j + 0.5) * dy;
      for (int i = 0; i < nx; ++i) {
        const Vec2 w{box.lo.x + (i + 0.5) * dx, y};
        if (!omega.contains(w)) continue;
        const double f = s.density(w);
        if (f <= 0.0) continue;
        points.push_back(w);
        weights.push_back(f * cell_area);
      }
    }
  } else {
    std::mt19937_64 rng(g.seed);
    std::uniform_real_distribution<double> ux(box.lo.x, box.hi.x);
    std::uniform_real_distribution<double> uy(box.lo.y, box.hi.y);
    cell_area = omega.area() / g.resolution;
    points.reserve(static_cast<std::size_t>(g.resolution));
    while (points.size() < static_cast<std::size_t>(g.resolution)) {
      const Vec2 w{ux(rng), uy(rng)};
      if (!omega.contains(w)) continue;
      points.push_back(w);
      weights.push_back(s.density(w) * cell_area);
    }
    // Monte Carlo order follows generation; sort row-major so block layout
    // matches the grid convention.
    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return points[a].y < points[b].y ||
             (points[a].y == points[b].y && points[a].x < points[b].x);
    });
    std::vector<Vec2> sorted_points;
    std::vector<double> sorted_weights;
    sorted_points.reserve(order.size());
    sorted_weights.reserve(order.size());
    for (std::size_t i : order) {
      sorted_points.push_back(points[i]);
      sorted_weights.push_back(weights[i]);
    }
    points = std::move(sorted_points);
    weights = std::move(sorted_weights);
  }

  if (points.empty()) {
    throw ValidationError("integrator found no samples with positive density "
                          "inside omega");
  }
  // Blocked total for a reproducible normalizer.
  double total = 0.0;
  for (std::size_t b = 0; b < points.size(); b += Quadrature::kBlockSize) {
    double partial = 0.0;
    const std::size_t e = std::min(points.size(), b + Quadrature::kBlockSize);
    for (std::size_t i = b; i < e; ++i) partial += weights[i];
    total += partial;
  }
  for (double& w : weights) w /= total;
  return Quadrature(std::move(points), std::move(weights), cell_area, g.threads);
}

}  // namespace twotier
