#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "twotier/model.hpp"

namespace twotier {

enum class Algorithm { Httl, NearestFcLloyd };

const char* to_string(Algorithm algorithm);
/// Accepts "httl" and "nearest_fc_lloyd". Throws ValidationError otherwise.
Algorithm parse_algorithm(const std::string& name);

/// Default seeds 1..10.
std::vector<std::uint64_t> default_seeds();

struct ExperimentSpec {
  ScenarioConfig config;
  std::vector<double> betas;
  std::vector<std::uint64_t> seeds = default_seeds();
  std::vector<Algorithm> algorithms = {Algorithm::Httl};
  /// Empty path: nothing is written.
  std::filesystem::path out_dir{};
  /// Concurrent runs; 0 means hardware concurrency. Output does not depend
  /// on it.
  int threads = 0;
};

/// Builds a spec from JSON: exactly one of "preset" (name) or "scenario"
/// (inline config object), plus "betas", optional "seeds", "algorithms",
/// "out", "epsilon", "max_iters", "grid": {"resolution"}.
ExperimentSpec parse_experiment_spec(const std::string& text);

/// Throws ValidationError for empty betas, seeds or algorithms, or a
/// negative beta.
void validate_experiment_spec(const ExperimentSpec& spec);

struct RunResult {
  Algorithm algorithm = Algorithm::Httl;
  double beta = 0.0;
  std::uint64_t seed = 0;
  double final_distortion = 0.0;
  int iters = 0;
  bool converged = false;
};

struct MeanRow {
  Algorithm algorithm = Algorithm::Httl;
  double beta = 0.0;
  double mean_final_distortion = 0.0;
  int runs = 0;
  int converged_runs = 0;
};

struct ExperimentResult {
  /// Ordered by algorithm, then beta, then seed, as listed in the spec.
  std::vector<RunResult> runs;
  std::vector<MeanRow> means;
};

/// Runs every (algorithm, beta, seed) combination. With an output directory
/// it writes traces/<algorithm>_beta<beta>_seed<seed>.csv, the matching
/// deployments/ file, summary.csv (one row per run) and means.csv.
ExperimentResult run_experiment(const ExperimentSpec& spec);

struct SweepRow {
  double beta = 0.0;
  Algorithm algorithm = Algorithm::Httl;
  double mean_final_distortion = 0.0;
};

/// run_experiment plus sweep.csv (beta,algorithm,mean_final_distortion).
std::vector<SweepRow> sweep_beta(const ExperimentSpec& spec);

std::string summary_csv(const ExperimentResult& result);
std::string means_csv(const ExperimentResult& result);
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace twotier
