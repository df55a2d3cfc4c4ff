#include "twotier/baselines.hpp"

#include <chrono>
#include <cmath>

#include "twotier/voronoi.hpp"

namespace twotier {

namespace {

std::vector<int> nearest_fc(const Deployment& d) {
  std::vector<int> t(d.p.size());
  for (std::size_t n = 0; n < d.p.size(); ++n) {
    int best = 0;
    for (std::size_t m = 1; m < d.q.size(); ++m) {
      if (dist2(d.p[n], d.q[m]) < dist2(d.p[n], d.q[static_cast<std::size_t>(best)])) {
        best = static_cast<int>(m);
      }
    }
    t[n] = best;
  }
  return t;
}

std::vector<int> plain_voronoi(const Quadrature& quad, const std::vector<Vec2>& p) {
  const GeneralizedVoronoi cells(std::vector<double>(p.size(), 1.0), p,
                                 std::vector<double>(p.size(), 0.0));
  std::vector<int> out(quad.size());
  const auto pts = quad.points();
  quad.for_each_block([&](std::size_t b) {
    for (std::size_t i = quad.block_begin(b); i < quad.block_end(b); ++i) {
      out[i] = cells.owner(pts[i]);
    }
  });
  return out;
}

struct BaselineState {
  std::vector<int> cells;
  CellMoments moments;
  PowerReport report;
};

BaselineState assess(const Quadrature& quad, const Scenario& s, const Deployment& d) {
  BaselineState st;
  st.cells = plain_voronoi(quad, d.p);
  st.moments = moments_of_partition(quad, st.cells, s.num_aps());
  st.report = distortion_on_partition(quad, s, d, st.cells);
  return st;
}

IterationRecord record(int iter, const BaselineState& st, const Scenario& s,
                       const Deployment& d, double seconds) {
  const GradientResidual res = gradient_residual(s, d, st.moments);
  return {iter,         st.report.distortion, st.report.sensor_power, st.report.ap_power,
          res.max_ap(), res.max_fc(),         seconds};
}

}  // namespace

RunTrace nearest_fc_lloyd(const Scenario& s, const HttlConfig& cfg, const Quadrature& quad,
                          const std::optional<Deployment>& init) {
  if (!(cfg.epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  if (cfg.max_iters < 1) throw ValidationError("max_iters must be at least 1");
  Deployment d;
  if (cfg.init == InitMode::Provided && !init) {
    throw ValidationError("init mode Provided requires a deployment");
  }
  d = init ? *init : random_deployment(s, cfg.seed);
  if (const auto errors = validate_deployment(s, d); !errors.empty()) {
    throw ValidationError("invalid initial deployment: " + errors.front());
  }
  d.t = nearest_fc(d);

  using Clock = std::chrono::steady_clock;
  RunTrace trace;
  BaselineState current = assess(quad, s, d);
  trace.iterations.push_back(record(0, current, s, d, 0.0));
  trace.update_moments = current.moments;

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    const auto start = Clock::now();
    const double d_old = current.report.distortion;
    const CellMoments& m = current.moments;

    for (int n = 0; n < s.num_aps(); ++n) {
      const auto i = static_cast<std::size_t>(n);
      if (!m.empty(n)) d.p[i] = *m.c[i];
    }
    std::vector<Vec2> sum(d.q.size());
    std::vector<int> count(d.q.size(), 0);
    for (std::size_t n = 0; n < d.p.size(); ++n) {
      const auto fc = static_cast<std::size_t>(d.t[n]);
      sum[fc] = sum[fc] + d.p[n];
      ++count[fc];
    }
    for (std::size_t k = 0; k < d.q.size(); ++k) {
      if (count[k] > 0) d.q[k] = sum[k] / count[k];
    }
    d.t = nearest_fc(d);

    trace.update_moments = current.moments;
    current = assess(quad, s, d);
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    trace.iterations.push_back(record(iter, current, s, d, seconds));

    const double d_new = current.report.distortion;
    const double change = d_old > 0.0 ? std::abs(d_old - d_new) / d_old : 0.0;
    if (change < cfg.epsilon) {
      trace.converged = true;
      trace.stop_reason = StopReason::RelativeDrop;
      break;
    }
  }
  trace.final = std::move(d);
  trace.final_moments = std::move(current.moments);
  return trace;
}

std::vector<int> mw_voronoi_partition_baseline(const Scenario& s, const Deployment& d,
                                               const Quadrature& quad) {
  const GeneralizedVoronoi cells(s.a_weights(), d.p,
                                 std::vector<double>(d.p.size(), 0.0));
  std::vector<int> out(quad.size());
  const auto pts = quad.points();
  quad.for_each_block([&](std::size_t b) {
    for (std::size_t i = quad.block_begin(b); i < quad.block_end(b); ++i) {
      out[i] = cells.owner(pts[i]);
    }
  });
  return out;
}

}  // namespace twotier
