#pragma once

#include <random>
#include <vector>

#include "twotier/httl.hpp"
#include "twotier/model.hpp"
#include "twotier/presets.hpp"

namespace twotier::testing {

inline ConvexPolygon unit_square() { return ConvexPolygon::rectangle({0, 0}, {1, 1}); }

inline Scenario single_node(double beta = 1.0, ConvexPolygon omega = unit_square()) {
  return Scenario(std::move(omega), UniformDensity{}, {1.0}, {1.0}, 1, beta);
}

/// Random weights in [0.5, 3] on [0, 10]^2.
inline Scenario random_heterogeneous(int n, int m, double beta, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> w(0.5, 3.0);
  std::vector<double> a(static_cast<std::size_t>(n));
  std::vector<double> b(static_cast<std::size_t>(n * m));
  for (double& x : a) x = w(rng);
  for (double& x : b) x = w(rng);
  return Scenario(ConvexPolygon::rectangle({0, 0}, {10, 10}), UniformDensity{}, a, b, m, beta);
}

inline Scenario preset(const char* name) { return load_preset(name).scenario; }

}  // namespace twotier::testing
