#include "twotier/httl.hpp"

#include <chrono>
#include <random>

namespace twotier {

const char* to_string(StopReason reason) {
  return reason == StopReason::RelativeDrop ? "relative_drop" : "max_iters";
}

Deployment random_deployment(const Scenario& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const BoundingBox& box = s.omega().bounds();
  std::uniform_real_distribution<double> ux(box.lo.x, box.hi.x);
  std::uniform_real_distribution<double> uy(box.lo.y, box.hi.y);
  auto draw = [&] {
    for (;;) {
      const Vec2 w{ux(rng), uy(rng)};
      if (s.omega().contains(w)) return w;
    }
  };
  Deployment d;
  d.p.reserve(static_cast<std::size_t>(s.num_aps()));
  for (int n = 0; n < s.num_aps(); ++n) d.p.push_back(draw());
  d.q.reserve(static_cast<std::size_t>(s.num_fcs()));
  for (int m = 0; m < s.num_fcs(); ++m) d.q.push_back(draw());
  d.t = update_index_map(s, d);
  return d;
}

std::vector<int> update_index_map(const Scenario& s, const Deployment& d) {
  std::vector<int> t(static_cast<std::size_t>(s.num_aps()));
  for (int n = 0; n < s.num_aps(); ++n) {
    const Vec2 p = d.p[static_cast<std::size_t>(n)];
    int best = 0;
    double best_cost = s.b(n, 0) * dist2(p, d.q[0]);
    for (int m = 1; m < s.num_fcs(); ++m) {
      const double c = s.b(n, m) * dist2(p, d.q[static_cast<std::size_t>(m)]);
      if (c < best_cost) {
        best_cost = c;
        best = m;
      }
    }
    t[static_cast<std::size_t>(n)] = best;
  }
  return t;
}

std::vector<Vec2> update_fc_positions(const Scenario& s, const Deployment& d,
                                      const CellMoments& m) {
  const auto fcs = static_cast<std::size_t>(s.num_fcs());
  std::vector<Vec2> num(fcs);
  std::vector<double> den(fcs, 0.0);
  for (int n = 0; n < s.num_aps(); ++n) {
    const auto i = static_cast<std::size_t>(n);
    const auto fc = static_cast<std::size_t>(d.t[i]);
    const double w = s.b(n, d.t[i]) * m.v[i];
    num[fc] = num[fc] + w * d.p[i];
    den[fc] += w;
  }
  std::vector<Vec2> q = d.q;
  for (std::size_t k = 0; k < fcs; ++k) {
    if (den[k] > 0.0) q[k] = num[k] / den[k];
  }
  return q;
}

std::vector<Vec2> update_ap_positions(const Scenario& s, const Deployment& d,
                                      const CellMoments& m) {
  std::vector<Vec2> p(d.p.size());
  for (int n = 0; n < s.num_aps(); ++n) {
    const auto i = static_cast<std::size_t>(n);
    const int fc = d.t[i];
    const Vec2 q = d.q[static_cast<std::size_t>(fc)];
    if (m.empty(n)) {
      p[i] = q;
      continue;
    }
    const double wa = s.a(n);
    const double wb = s.beta() * s.b(n, fc);
    p[i] = (wa * *m.c[i] + wb * q) / (wa + wb);
  }
  return p;
}

namespace {

IterationRecord make_record(int iter, const Evaluation& e, const Scenario& s,
                            const Deployment& d, double seconds) {
  const GradientResidual res = gradient_residual(s, d, e.moments);
  return {iter,         e.report.distortion, e.report.sensor_power, e.report.ap_power,
          res.max_ap(), res.max_fc(),        seconds};
}

}  // namespace

RunTrace httl_run(const Scenario& s, const HttlConfig& cfg, const Quadrature& quad,
                  const std::optional<Deployment>& init) {
  if (!(cfg.epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  if (cfg.max_iters < 1) throw ValidationError("max_iters must be at least 1");
  Deployment d;
  if (cfg.init == InitMode::Provided) {
    if (!init) throw ValidationError("init mode Provided requires a deployment");
    d = *init;
  } else {
    d = init ? *init : random_deployment(s, cfg.seed);
  }
  if (const auto errors = validate_deployment(s, d); !errors.empty()) {
    throw ValidationError("invalid initial deployment: " + errors.front());
  }

  using Clock = std::chrono::steady_clock;
  RunTrace trace;
  Evaluation current = evaluate(quad, s, d);
  trace.iterations.push_back(make_record(0, current, s, d, 0.0));
  trace.update_moments = current.moments;

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    const auto start = Clock::now();
    const double d_old = current.report.distortion;

    std::vector<int> t = update_index_map(s, d);
    CellMoments moments;
    if (t == d.t) {
      // Same index map, same additive terms, same partition.
      moments = std::move(current.moments);
    } else {
      d.t = std::move(t);
      moments = cell_moments(quad, s, d);
    }
    d.q = update_fc_positions(s, d, moments);
    d.p = update_ap_positions(s, d, moments);

    current = evaluate(quad, s, d);
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    trace.iterations.push_back(make_record(iter, current, s, d, seconds));
    trace.update_moments = std::move(moments);

    const double d_new = current.report.distortion;
    const double drop = d_old > 0.0 ? (d_old - d_new) / d_old : 0.0;
    if (drop < cfg.epsilon) {
      trace.converged = true;
      trace.stop_reason = StopReason::RelativeDrop;
      break;
    }
  }
  trace.final = std::move(d);
  trace.final_moments = std::move(current.moments);
  return trace;
}

RunTrace httl_run(const Scenario& s, const HttlConfig& cfg, const Integrator& g,
                  const std::optional<Deployment>& init) {
  return httl_run(s, cfg, build_quadrature(s, g), init);
}

StepDeltas step_monotonicity_probe(const Scenario& s, const Deployment& d,
                                   const Quadrature& quad) {
  StepDeltas out;
  const std::vector<int> start_cells = assign_cells(quad, s, d);
  const double d0 = distortion_on_partition(quad, s, d, start_cells).distortion;
  out.initial = d0;

  Deployment next = d;
  next.t = update_index_map(s, next);
  const double d1 = distortion_on_partition(quad, s, next, start_cells).distortion;

  const std::vector<int> cells = assign_cells(quad, s, next);
  const CellMoments m = moments_of_partition(quad, cells, s.num_aps());
  const double d2 = distortion_on_partition(quad, s, next, cells).distortion;

  const std::vector<Vec2> q_new = update_fc_positions(s, next, m);
  std::vector<double> mass(static_cast<std::size_t>(s.num_fcs()), 0.0);
  for (int n = 0; n < s.num_aps(); ++n) {
    const auto i = static_cast<std::size_t>(n);
    mass[static_cast<std::size_t>(next.t[i])] += s.b(n, next.t[i]) * m.v[i];
  }
  for (std::size_t k = 0; k < mass.size(); ++k) {
    out.fc_identity -= s.beta() * mass[k] * dist2(next.q[k], q_new[k]);
  }
  next.q = q_new;
  const double d3 = distortion_on_partition(quad, s, next, cells).distortion;

  next.p = update_ap_positions(s, next, m);
  const double d4 = distortion_on_partition(quad, s, next, cells).distortion;

  out.delta = {d1 - d0, d2 - d1, d3 - d2, d4 - d3};
  return out;
}

}  // namespace twotier
