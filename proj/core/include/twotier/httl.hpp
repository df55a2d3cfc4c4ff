#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "twotier/distortion.hpp"
#include "twotier/integrator.hpp"
#include "twotier/model.hpp"

namespace twotier {

enum class InitMode { UniformRandom, Provided };
enum class StopReason { RelativeDrop, MaxIters };

const char* to_string(StopReason reason);

struct HttlConfig {
  double epsilon = 1e-5;
  int max_iters = 100;
  std::uint64_t seed = 1;
  InitMode init = InitMode::UniformRandom;
};

/// One row of a run trace. Iteration 0 is the initial deployment.
struct IterationRecord {
  int iter = 0;
  double distortion = 0.0;
  double sensor_power = 0.0;
  double ap_power = 0.0;
  double max_ap_res = 0.0;
  double max_fc_res = 0.0;
  double seconds = 0.0;
};

struct RunTrace {
  std::vector<IterationRecord> iterations;
  Deployment final;
  /// Moments of the final deployment's own partition.
  CellMoments final_moments;
  /// Moments the last AP update used; the final APs sit on the segments from
  /// these centroids to their FCs.
  CellMoments update_moments;
  bool converged = false;
  StopReason stop_reason = StopReason::MaxIters;

  double final_distortion() const { return iterations.back().distortion; }
  /// Number of update passes performed (excludes the initial evaluation).
  int iteration_count() const { return static_cast<int>(iterations.size()) - 1; }
};

/// Independent uniform positions over omega for every AP and FC, with the
/// index map chosen by update_index_map.
Deployment random_deployment(const Scenario& s, std::uint64_t seed);

/// t[n] = argmin_m b_{n,m} |p_n - q_m|^2, ties to the smaller m.
std::vector<int> update_index_map(const Scenario& s, const Deployment& d);

/// Moves each FC to the b*v-weighted mean of its APs. FCs without assigned
/// mass keep their position.
std::vector<Vec2> update_fc_positions(const Scenario& s, const Deployment& d,
                                      const CellMoments& m);

/// Moves each AP to (a_n c_n + beta b q) / (a_n + beta b) on the segment from
/// its centroid to its FC. APs with empty cells move onto their FC.
std::vector<Vec2> update_ap_positions(const Scenario& s, const Deployment& d,
                                      const CellMoments& m);

/// Runs the four-step loop (index map, partition and moments, FCs, APs)
/// until the relative distortion drop falls below epsilon or max_iters
/// passes have run. `init` is required when cfg.init is Provided.
RunTrace httl_run(const Scenario& s, const HttlConfig& cfg, const Quadrature& quad,
                  const std::optional<Deployment>& init = std::nullopt);
RunTrace httl_run(const Scenario& s, const HttlConfig& cfg, const Integrator& g,
                  const std::optional<Deployment>& init = std::nullopt);

/// Distortion change caused by each of the four steps applied in sequence to
/// d. The index-map, FC and AP steps are evaluated at a fixed partition; the
/// partition step re-partitions. `fc_identity` is the closed-form FC-step
/// change -beta sum_m (sum b v) |q_m - q'_m|^2 for comparison.
struct StepDeltas {
  std::array<double, 4> delta{};
  double fc_identity = 0.0;
  double initial = 0.0;
};
StepDeltas step_monotonicity_probe(const Scenario& s, const Deployment& d,
                                   const Quadrature& quad);

}  // namespace twotier
