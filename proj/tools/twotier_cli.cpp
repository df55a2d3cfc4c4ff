// Command-line front end for the two-tier deployment library.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twotier/baselines.hpp"
#include "twotier/csv.hpp"
#include "twotier/experiment.hpp"
#include "twotier/httl.hpp"
#include "twotier/oracle.hpp"
#include "twotier/presets.hpp"
#include "twotier/svg.hpp"
#include "twotier/voronoi.hpp"

namespace fs = std::filesystem;
using namespace twotier;

namespace {

constexpr const char* kBaselineLabel = "baseline (simplified)";

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

// Scenario source plus the overrides shared by several subcommands.
struct ScenarioArgs {
  std::string preset;
  std::string config;
  std::optional<double> beta;
  std::optional<std::uint64_t> seed;
  std::optional<double> epsilon;
  std::optional<int> max_iters;
  std::optional<int> grid;

  void attach(CLI::App* app, bool with_beta = true) {
    auto* p = app->add_option("--preset", preset, "Built-in scenario (wsn1, wsn2)");
    auto* c = app->add_option("--config", config, "Scenario config JSON file");
    p->excludes(c);
    if (with_beta) app->add_option("--beta", beta, "Override beta")->check(CLI::NonNegativeNumber);
    app->add_option("--seed", seed, "Override seed");
    app->add_option("--epsilon", epsilon, "Relative-drop stopping threshold");
    app->add_option("--max-iters", max_iters, "Iteration cap");
    app->add_option("--grid", grid, "Quadrature cells along the longer side");
  }

  ScenarioConfig load() const {
    if (preset.empty() && config.empty()) throw ValidationError("give --preset or --config");
    ScenarioConfig cfg =
        preset.empty() ? parse_scenario_config(read_text(config)) : load_preset(preset);
    if (beta) cfg.scenario = cfg.scenario.with_beta(*beta);
    if (seed) cfg.settings.seed = *seed;
    if (epsilon) cfg.settings.epsilon = *epsilon;
    if (max_iters) cfg.settings.max_iters = *max_iters;
    if (grid) cfg.settings.grid_resolution = *grid;
    return cfg;
  }
};

Quadrature quadrature_for(const ScenarioConfig& cfg, int threads) {
  return build_quadrature(cfg.scenario, Integrator{IntegratorMode::MidpointGrid,
                                                   cfg.settings.grid_resolution, 0, threads});
}

void emit_run(const ScenarioConfig& cfg, const RunTrace& trace, const std::string& label,
              const fs::path& out_dir) {
  std::cout << label << ": final_distortion=" << format_double(trace.final_distortion())
            << " iters=" << trace.iteration_count()
            << " stop=" << to_string(trace.stop_reason) << '\n';
  if (out_dir.empty()) return;
  fs::create_directories(out_dir);
  std::ostringstream tr;
  write_trace_csv(tr, trace);
  write_text(out_dir / "trace.csv", tr.str());
  std::ostringstream dep;
  write_deployment_csv(dep, trace.final, trace.final_moments);
  write_text(out_dir / "deployment.csv", dep.str());
  emit_deployment_svg(cfg.scenario, trace.final, trace.final_moments, cfg.display,
                      out_dir / "deployment.svg");
  write_text(out_dir / "label.txt", label + "\n");
}

std::optional<Deployment> load_deployment(const std::string& path) {
  if (path.empty()) return std::nullopt;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return read_deployment_csv(in);
}

std::vector<Algorithm> parse_algorithms(const std::vector<std::string>& names) {
  std::vector<Algorithm> out;
  for (const auto& n : names) out.push_back(parse_algorithm(n));
  return out;
}

void print_means(const ExperimentResult& r) {
  for (const MeanRow& m : r.means) {
    const std::string label =
        m.algorithm == Algorithm::Httl ? "httl" : std::string(kBaselineLabel);
    std::cout << label << " beta=" << format_double(m.beta)
              << " mean_final_distortion=" << format_double(m.mean_final_distortion)
              << " converged=" << m.converged_runs << '/' << m.runs << '\n';
  }
}

struct OracleArgs {
  std::vector<double> a{1.0, 100.0};
  std::vector<double> b{1.0, 100.0};
  int fcs = 1;
  double beta = 1.0;
  double step = 0.01;
  bool increment = false;
  std::string out;
};

int run_oracle(const OracleArgs& args) {
  const Scenario s = make_strip_scenario(args.a, args.b, args.fcs, args.beta);
  std::ostringstream csv;
  if (args.increment) {
    const FcIncrementResult r = fc_increment_check(s, args.step);
    csv << "fcs,";
    std::ostringstream row1, row2;
    write_brute_force_csv(row1, r.fewer);
    write_brute_force_csv(row2, r.more);
    // Prefix each table row with its FC count.
    auto prefixed = [](const std::string& table, const std::string& prefix) {
      std::istringstream in(table);
      std::string header, line, body;
      std::getline(in, header);
      while (std::getline(in, line)) body += prefix + "," + line + "\n";
      return std::pair{header, body};
    };
    const auto [header, body1] = prefixed(row1.str(), std::to_string(args.fcs - 1));
    const auto body2 = prefixed(row2.str(), std::to_string(args.fcs)).second;
    csv << header << '\n' << body1 << body2;
    std::cout << "d_with_m=" << format_double(r.d_with_m())
              << " d_with_m_plus_1=" << format_double(r.d_with_m_plus_1()) << " fc_volume=";
    for (std::size_t k = 0; k < r.fc_volume.size(); ++k) {
      std::cout << (k ? ";" : "") << format_double(r.fc_volume[k]);
    }
    std::cout << '\n';
  } else {
    const BruteForceResult r = brute_force_1d(s, args.step);
    write_brute_force_csv(csv, r);
    std::ostringstream dep;
    write_deployment_csv(dep, r.best, r.moments);
    std::cout << dep.str();
  }
  if (args.out.empty()) {
    std::cout << csv.str();
  } else {
    write_text(args.out, csv.str());
  }
  return 0;
}

// Quick end-to-end sanity checks on small instances.
int run_selftest() {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
    if (!ok) ++failures;
  };

  const Scenario square(ConvexPolygon::rectangle({0, 0}, {1, 1}), UniformDensity{}, {1.0},
                        {1.0}, 1, 1.0);
  const Quadrature q = build_quadrature(square, Integrator{});
  const Deployment centered{{{0.5, 0.5}}, {{0.5, 0.5}}, {0}};
  check("unit-square sensor power is 1/6",
        std::abs(sensor_power(q, square, centered) - 1.0 / 6.0) < 1e-5);

  const RunTrace trace = httl_run(square, HttlConfig{}, q);
  check("single node approaches the centroid optimum",
        std::abs(trace.final_distortion() - 1.0 / 6.0) < 1e-4 &&
            dist2(trace.final.p[0], {0.5, 0.5}) < 1e-3);

  const ScenarioConfig wsn1 = load_preset("wsn1");
  const Quadrature coarse = build_quadrature(wsn1.scenario, Integrator{IntegratorMode::MidpointGrid, 96});
  const RunTrace run = httl_run(wsn1.scenario, HttlConfig{}, coarse);
  bool monotone = true;
  for (std::size_t i = 1; i < run.iterations.size(); ++i) {
    monotone = monotone &&
               run.iterations[i].distortion <= run.iterations[i - 1].distortion * (1 + 1e-9);
  }
  check("wsn1 descent is monotone", monotone);

  const Scenario strip = make_strip_scenario({1.0}, {1.0}, 1, 1.0);
  const BruteForceResult bf = brute_force_1d(strip, 0.05);
  check("one-node strip optimum is 1/12", std::abs(bf.distortion - 1.0 / 12.0) < 1e-3);

  // Pairwise-region route against the owner rule on a converged deployment.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<Vec2> samples(20000);
  for (Vec2& w : samples) w = {u(rng), u(rng)};
  const double agreement = membership_agreement(wsn1.scenario, run.final, samples);
  check("membership agreement " + format_double(agreement) + " >= 0.999", agreement >= 0.999);

  return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-tier sensor network deployment optimizer"};
  app.require_subcommand(1);

  // run / baseline
  ScenarioArgs run_args, base_args;
  std::string run_out, base_out, run_init, base_init;
  auto* run = app.add_subcommand("run", "Optimize one scenario with the two-tier Lloyd loop");
  run_args.attach(run);
  run->add_option("--out", run_out, "Directory for trace.csv, deployment.csv, deployment.svg");
  run->add_option("--deployment", run_init, "Initial deployment CSV");
  auto* baseline = app.add_subcommand("baseline", "Run the simplified nearest-FC Lloyd baseline");
  base_args.attach(baseline);
  baseline->add_option("--out", base_out, "Output directory (same layout as run)");
  baseline->add_option("--deployment", base_init, "Initial deployment CSV");

  // experiment
  std::string exp_config, exp_out;
  int exp_threads = -1;
  auto* experiment = app.add_subcommand("experiment", "Run a multi-seed experiment spec");
  experiment->add_option("--config", exp_config, "Experiment spec JSON")->required();
  experiment->add_option("--out", exp_out, "Override the output directory");
  experiment->add_option("--threads", exp_threads, "Concurrent runs (0 = all cores)");

  // sweep
  ScenarioArgs sweep_args;
  std::vector<double> sweep_betas;
  std::vector<std::uint64_t> sweep_seeds;
  std::vector<std::string> sweep_algs{"httl", "nearest_fc_lloyd"};
  std::string sweep_out;
  int sweep_threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Mean final distortion over seeds for several betas");
  sweep_args.attach(sweep, false);
  sweep->add_option("--beta", sweep_betas, "Beta values (repeatable)")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--seeds", sweep_seeds, "Seeds (default 1..10)");
  sweep->add_option("--algorithms", sweep_algs, "httl and/or nearest_fc_lloyd");
  sweep->add_option("--out", sweep_out, "Output directory");
  sweep->add_option("--threads", sweep_threads, "Concurrent runs (0 = all cores)");

  // oracle
  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "Brute-force optimum on a unit strip");
  oracle->add_option("--a", oracle_args.a, "AP sensor-tier weights");
  oracle->add_option("--b", oracle_args.b, "AP-FC weights, row-major N x M");
  oracle->add_option("--fcs", oracle_args.fcs, "Number of FCs");
  oracle->add_option("--beta", oracle_args.beta, "Beta")->check(CLI::NonNegativeNumber);
  oracle->add_option("--step", oracle_args.step, "Lattice step");
  oracle->add_flag("--increment", oracle_args.increment,
                   "Compare the optimum without and with the last FC");
  oracle->add_option("--out", oracle_args.out, "CSV output file (default stdout)");

  auto* selftest = app.add_subcommand("selftest", "Quick internal consistency checks");

  // render
  ScenarioArgs render_args;
  std::string render_dep, render_out;
  int render_raster = SvgOptions{}.raster;
  auto* render = app.add_subcommand("render", "Render a deployment CSV as SVG");
  render_args.attach(render);
  render->add_option("--deployment", render_dep, "Deployment CSV")->required();
  render->add_option("--out", render_out, "SVG file")->required();
  render->add_option("--raster", render_raster, "Raster cells along the longer side");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (run->parsed() || baseline->parsed()) {
      const bool is_run = run->parsed();
      const ScenarioConfig cfg = (is_run ? run_args : base_args).load();
      const HttlConfig hc{cfg.settings.epsilon, cfg.settings.max_iters, cfg.settings.seed,
                          InitMode::UniformRandom};
      const Quadrature q = quadrature_for(cfg, 0);
      const auto init = load_deployment(is_run ? run_init : base_init);
      const RunTrace trace =
          is_run ? httl_run(cfg.scenario, hc, q, init) : nearest_fc_lloyd(cfg.scenario, hc, q, init);
      emit_run(cfg, trace, is_run ? "httl" : kBaselineLabel, is_run ? run_out : base_out);
    } else if (experiment->parsed()) {
      ExperimentSpec spec = parse_experiment_spec(read_text(exp_config));
      if (!exp_out.empty()) spec.out_dir = exp_out;
      if (exp_threads >= 0) spec.threads = exp_threads;
      print_means(run_experiment(spec));
    } else if (sweep->parsed()) {
      ExperimentSpec spec{.config = sweep_args.load(), .betas = sweep_betas};
      if (spec.betas.empty()) spec.betas = {0.05, 0.15, 0.25, 0.35, 0.45};
      if (!sweep_seeds.empty()) spec.seeds = sweep_seeds;
      spec.algorithms = parse_algorithms(sweep_algs);
      spec.out_dir = sweep_out;
      spec.threads = sweep_threads;
      const auto rows = sweep_beta(spec);
      std::cout << sweep_csv(rows);
    } else if (oracle->parsed()) {
      return run_oracle(oracle_args);
    } else if (selftest->parsed()) {
      return run_selftest();
    } else if (render->parsed()) {
      const ScenarioConfig cfg = render_args.load();
      const auto d = load_deployment(render_dep);
      if (const auto errors = validate_deployment(cfg.scenario, *d); !errors.empty()) {
        throw ValidationError("deployment does not fit the scenario: " + errors.front());
      }
      const Quadrature q = quadrature_for(cfg, 0);
      SvgOptions opts;
      opts.raster = render_raster;
      emit_deployment_svg(cfg.scenario, *d, cell_moments(q, cfg.scenario, *d), cfg.display,
                          render_out, opts);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
