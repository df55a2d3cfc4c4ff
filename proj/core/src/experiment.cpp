#include "twotier/experiment.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "twotier/baselines.hpp"
#include "twotier/csv.hpp"
#include "twotier/httl.hpp"
#include "twotier/presets.hpp"

namespace twotier {

const char* to_string(Algorithm algorithm) {
  return algorithm == Algorithm::Httl ? "httl" : "nearest_fc_lloyd";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "httl") return Algorithm::Httl;
  if (name == "nearest_fc_lloyd") return Algorithm::NearestFcLloyd;
  throw ValidationError("unknown algorithm '" + name + "' (expected httl or nearest_fc_lloyd)");
}

std::vector<std::uint64_t> default_seeds() {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
  return seeds;
}

ExperimentSpec parse_experiment_spec(const std::string& text) {
  using nlohmann::json;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("<document>", e.what());
  }
  if (!root.is_object()) throw ParseError("<document>", "expected an object");
  if (root.contains("preset") == root.contains("scenario")) {
    throw ParseError("preset", "give exactly one of 'preset' or 'scenario'");
  }
  ScenarioConfig config = root.contains("preset")
                              ? load_preset(root.at("preset").get<std::string>())
                              : parse_scenario_config(root.at("scenario").dump());
  ExperimentSpec spec{.config = std::move(config), .betas = {}};
  try {
    if (!root.contains("betas")) throw ParseError("betas", "missing required key");
    spec.betas = root.at("betas").get<std::vector<double>>();
    if (root.contains("seeds")) spec.seeds = root.at("seeds").get<std::vector<std::uint64_t>>();
    if (root.contains("algorithms")) {
      spec.algorithms.clear();
      for (const auto& name : root.at("algorithms").get<std::vector<std::string>>()) {
        spec.algorithms.push_back(parse_algorithm(name));
      }
    }
    if (root.contains("out")) spec.out_dir = root.at("out").get<std::string>();
    if (root.contains("epsilon")) spec.config.settings.epsilon = root.at("epsilon").get<double>();
    if (root.contains("max_iters")) spec.config.settings.max_iters = root.at("max_iters").get<int>();
    if (root.contains("grid")) {
      spec.config.settings.grid_resolution = root.at("grid").at("resolution").get<int>();
    }
    if (root.contains("threads")) spec.threads = root.at("threads").get<int>();
  } catch (const json::exception& e) {
    throw ParseError("experiment", e.what());
  }
  validate_experiment_spec(spec);
  return spec;
}

void validate_experiment_spec(const ExperimentSpec& spec) {
  if (spec.betas.empty()) throw ValidationError("experiment needs at least one beta");
  if (spec.seeds.empty()) throw ValidationError("experiment needs at least one seed");
  if (spec.algorithms.empty()) throw ValidationError("experiment needs at least one algorithm");
  for (double b : spec.betas) {
    if (!(b >= 0.0)) throw ValidationError("betas must be nonnegative");
  }
  if (!(spec.config.settings.epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  if (spec.config.settings.max_iters < 1) throw ValidationError("max_iters must be at least 1");
  if (spec.config.settings.grid_resolution < Integrator::kMinResolution) {
    throw ValidationError("grid resolution below minimum");
  }
}

namespace {

std::string run_stem(Algorithm algorithm, double beta, std::uint64_t seed) {
  return std::string(to_string(algorithm)) + "_beta" + format_double(beta) + "_seed" +
         std::to_string(seed);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  validate_experiment_spec(spec);
  const Scenario& base = spec.config.scenario;
  const RunSettings& settings = spec.config.settings;
  const Quadrature quad = build_quadrature(
      base, Integrator{IntegratorMode::MidpointGrid, settings.grid_resolution, 0, 1});

  struct Cell {
    Algorithm algorithm;
    double beta;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (Algorithm alg : spec.algorithms) {
    for (double beta : spec.betas) {
      for (std::uint64_t seed : spec.seeds) cells.push_back({alg, beta, seed});
    }
  }

  if (!spec.out_dir.empty()) {
    std::filesystem::create_directories(spec.out_dir / "traces");
    std::filesystem::create_directories(spec.out_dir / "deployments");
  }

  std::vector<RunResult> runs(cells.size());
  std::vector<std::exception_ptr> failures(cells.size());
  auto work = [&](std::size_t i) {
    try {
      const Cell& c = cells[i];
      const Scenario s = base.with_beta(c.beta);
      const HttlConfig cfg{settings.epsilon, settings.max_iters, c.seed, InitMode::UniformRandom};
      const RunTrace trace = c.algorithm == Algorithm::Httl ? httl_run(s, cfg, quad)
                                                             : nearest_fc_lloyd(s, cfg, quad);
      runs[i] = {c.algorithm, c.beta, c.seed, trace.final_distortion(), trace.iteration_count(),
                 trace.converged};
      if (!spec.out_dir.empty()) {
        const std::string stem = run_stem(c.algorithm, c.beta, c.seed);
        std::ostringstream tr;
        write_trace_csv(tr, trace);
        write_file(spec.out_dir / "traces" / (stem + ".csv"), tr.str());
        std::ostringstream dep;
        write_deployment_csv(dep, trace.final, trace.final_moments);
        write_file(spec.out_dir / "deployments" / (stem + ".csv"), dep.str());
      }
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };

  int threads = spec.threads > 0 ? spec.threads
                                 : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min<int>(threads, static_cast<int>(cells.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) work(i);
      });
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  ExperimentResult result;
  result.runs = std::move(runs);
  for (Algorithm alg : spec.algorithms) {
    for (double beta : spec.betas) {
      MeanRow row{alg, beta, 0.0, 0, 0};
      for (const RunResult& r : result.runs) {
        if (r.algorithm != alg || r.beta != beta) continue;
        row.mean_final_distortion += r.final_distortion;
        ++row.runs;
        row.converged_runs += r.converged ? 1 : 0;
      }
      row.mean_final_distortion /= row.runs;
      result.means.push_back(row);
    }
  }
  if (!spec.out_dir.empty()) {
    write_file(spec.out_dir / "summary.csv", summary_csv(result));
    write_file(spec.out_dir / "means.csv", means_csv(result));
  }
  return result;
}

std::vector<SweepRow> sweep_beta(const ExperimentSpec& spec) {
  const ExperimentResult result = run_experiment(spec);
  std::vector<SweepRow> rows;
  for (double beta : spec.betas) {
    for (Algorithm alg : spec.algorithms) {
      for (const MeanRow& m : result.means) {
        if (m.algorithm == alg && m.beta == beta) {
          rows.push_back({beta, alg, m.mean_final_distortion});
        }
      }
    }
  }
  if (!spec.out_dir.empty()) write_file(spec.out_dir / "sweep.csv", sweep_csv(rows));
  return rows;
}

std::string summary_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "algorithm,beta,seed,final_distortion,iters,converged\n";
  for (const RunResult& r : result.runs) {
    out << to_string(r.algorithm) << ',' << format_double(r.beta) << ',' << r.seed << ','
        << format_double(r.final_distortion) << ',' << r.iters << ','
        << (r.converged ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string means_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "algorithm,beta,mean_final_distortion,runs,converged_runs\n";
  for (const MeanRow& m : result.means) {
    out << to_string(m.algorithm) << ',' << format_double(m.beta) << ','
        << format_double(m.mean_final_distortion) << ',' << m.runs << ',' << m.converged_runs
        << '\n';
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "beta,algorithm,mean_final_distortion\n";
  for (const SweepRow& r : rows) {
    out << format_double(r.beta) << ',' << to_string(r.algorithm) << ','
        << format_double(r.mean_final_distortion) << '\n';
  }
  return out.str();
}

}  // namespace twotier
