#include "twotier/distortion.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "twotier/voronoi.hpp"

namespace twotier {

namespace {

// Per-cell sums of w, w*x, w*y and w*a_n|p_n - x|^2.
struct CellSums {
  std::vector<double> mass, mx, my, sensor;

  explicit CellSums(std::size_t n) : mass(n), mx(n), my(n), sensor(n) {}

  void add(const CellSums& o) {
    for (std::size_t i = 0; i < mass.size(); ++i) {
      mass[i] += o.mass[i];
      mx[i] += o.mx[i];
      my[i] += o.my[i];
      sensor[i] += o.sensor[i];
    }
  }
};

// cell_of(i) gives the cell of sample i.
template <typename CellOf>
CellSums accumulate(const Quadrature& quad, std::span<const double> a,
                    std::span<const Vec2> p, CellOf&& cell_of) {
  const std::size_t n = a.size();
  std::vector<CellSums> partial(quad.block_count(), CellSums(n));
  const auto pts = quad.points();
  const auto wts = quad.weights();
  quad.for_each_block([&](std::size_t b) {
    CellSums& acc = partial[b];
    for (std::size_t i = quad.block_begin(b); i < quad.block_end(b); ++i) {
      const auto k = static_cast<std::size_t>(cell_of(i));
      const Vec2 w = pts[i];
      const double wt = wts[i];
      acc.mass[k] += wt;
      acc.mx[k] += wt * w.x;
      acc.my[k] += wt * w.y;
      acc.sensor[k] += wt * a[k] * dist2(p[k], w);
    }
  });
  CellSums total(n);
  for (const CellSums& part : partial) total.add(part);
  return total;
}

CellMoments moments_from(const CellSums& sums) {
  CellMoments m;
  m.v = sums.mass;
  m.c.resize(sums.mass.size());
  for (std::size_t k = 0; k < sums.mass.size(); ++k) {
    if (sums.mass[k] >= kEmptyCellMass) {
      m.c[k] = Vec2{sums.mx[k] / sums.mass[k], sums.my[k] / sums.mass[k]};
    }
  }
  return m;
}

PowerReport report_from(const CellSums& sums, const Scenario& s, const Deployment& d) {
  PowerReport r;
  r.per_cell.resize(sums.mass.size());
  for (int n = 0; n < s.num_aps(); ++n) {
    const auto k = static_cast<std::size_t>(n);
    const int m = d.t[k];
    const double link = s.b(n, m) * dist2(d.p[k], d.q[static_cast<std::size_t>(m)]) *
                        sums.mass[k];
    r.sensor_power += sums.sensor[k];
    r.ap_power += link;
    r.per_cell[k] = sums.sensor[k] + s.beta() * link;
  }
  r.distortion = r.sensor_power + s.beta() * r.ap_power;
  return r;
}

void check_cells(std::span<const int> cells, const Quadrature& quad, int num_cells) {
  if (cells.size() != quad.size()) {
    throw std::invalid_argument("partition size does not match the quadrature");
  }
  for (int c : cells) {
    if (c < 0 || c >= num_cells) throw std::out_of_range("partition cell index out of range");
  }
}

}  // namespace

std::vector<int> assign_cells(const Quadrature& quad, const Scenario& s,
                              const Deployment& d) {
  const GeneralizedVoronoi cells(s, d);
  std::vector<int> out(quad.size());
  const auto pts = quad.points();
  quad.for_each_block([&](std::size_t b) {
    for (std::size_t i = quad.block_begin(b); i < quad.block_end(b); ++i) {
      out[i] = cells.owner(pts[i]);
    }
  });
  return out;
}

CellMoments moments_of_partition(const Quadrature& quad, std::span<const int> cells,
                                 int num_cells) {
  check_cells(cells, quad, num_cells);
  const std::vector<double> zero_a(static_cast<std::size_t>(num_cells), 0.0);
  const std::vector<Vec2> origin(static_cast<std::size_t>(num_cells));
  return moments_from(
      accumulate(quad, zero_a, origin, [&](std::size_t i) { return cells[i]; }));
}

CellMoments cell_moments(const Quadrature& quad, const Scenario& s, const Deployment& d) {
  return evaluate(quad, s, d).moments;
}

CellMoments cell_moments(const Scenario& s, const Deployment& d, const Integrator& g) {
  return cell_moments(build_quadrature(s, g), s, d);
}

PowerReport distortion_on_partition(const Quadrature& quad, const Scenario& s,
                                    const Deployment& d, std::span<const int> cells) {
  check_cells(cells, quad, s.num_aps());
  const CellSums sums =
      accumulate(quad, s.a_weights(), d.p, [&](std::size_t i) { return cells[i]; });
  return report_from(sums, s, d);
}

Evaluation evaluate(const Quadrature& quad, const Scenario& s, const Deployment& d) {
  const GeneralizedVoronoi cells(s, d);
  const auto pts = quad.points();
  const CellSums sums = accumulate(quad, s.a_weights(), d.p,
                                   [&](std::size_t i) { return cells.owner(pts[i]); });
  return {report_from(sums, s, d), moments_from(sums)};
}

PowerReport distortion(const Quadrature& quad, const Scenario& s, const Deployment& d) {
  return evaluate(quad, s, d).report;
}

PowerReport distortion(const Scenario& s, const Deployment& d, const Integrator& g) {
  return distortion(build_quadrature(s, g), s, d);
}

double sensor_power(const Quadrature& quad, const Scenario& s, const Deployment& d) {
  return distortion(quad, s, d).sensor_power;
}

double sensor_power(const Scenario& s, const Deployment& d, const Integrator& g) {
  return distortion(s, d, g).sensor_power;
}

double ap_power(const Quadrature& quad, const Scenario& s, const Deployment& d) {
  return distortion(quad, s, d).ap_power;
}

double ap_power(const Scenario& s, const Deployment& d, const Integrator& g) {
  return distortion(s, d, g).ap_power;
}

namespace {

double envelope_block(const Quadrature& quad, std::size_t b, std::span<const double> a,
                      std::span<const Vec2> p, std::span<const double> additive) {
  const auto pts = quad.points();
  const auto wts = quad.weights();
  const std::size_t lo = quad.block_begin(b);
  const std::size_t hi = quad.block_end(b);
  std::array<double, Quadrature::kBlockSize> best;
  for (std::size_t i = lo; i < hi; ++i) {
    best[i - lo] = a[0] * dist2(p[0], pts[i]) + additive[0];
  }
  for (std::size_t k = 1; k < a.size(); ++k) {
    const double ak = a[k];
    const Vec2 pk = p[k];
    const double kk = additive[k];
    for (std::size_t i = lo; i < hi; ++i) {
      best[i - lo] = std::min(best[i - lo], ak * dist2(pk, pts[i]) + kk);
    }
  }
  double sum = 0.0;
  for (std::size_t i = lo; i < hi; ++i) sum += wts[i] * best[i - lo];
  return sum;
}

}  // namespace

double envelope_distortion(const Quadrature& quad, std::span<const double> a,
                           std::span<const Vec2> p, std::span<const double> additive) {
  if (a.empty() || a.size() != p.size() || a.size() != additive.size()) {
    throw std::invalid_argument("envelope_distortion: inconsistent sizes");
  }
  if (quad.block_count() == 1) return envelope_block(quad, 0, a, p, additive);
  std::vector<double> partial(quad.block_count(), 0.0);
  quad.for_each_block(
      [&](std::size_t b) { partial[b] = envelope_block(quad, b, a, p, additive); });
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

double distortion_parallel_axis(const Quadrature& quad, const Scenario& s,
                                const Deployment& d, const CellMoments& m) {
  const int n = s.num_aps();
  for (int k = 0; k < n; ++k) {
    if (m.v[static_cast<std::size_t>(k)] > 0.0 && m.empty(k) &&
        m.v[static_cast<std::size_t>(k)] >= kEmptyCellMass) {
      throw std::logic_error("cell with positive mass has no centroid");
    }
  }
  const std::vector<int> cells = assign_cells(quad, s, d);
  // Second moment of each cell about its own centroid.
  std::vector<Vec2> centroids(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    centroids[static_cast<std::size_t>(k)] = m.c[static_cast<std::size_t>(k)].value_or(Vec2{});
  }
  const CellSums about_centroid =
      accumulate(quad, s.a_weights(), centroids, [&](std::size_t i) { return cells[i]; });

  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (m.empty(k)) continue;  // zero mass: every term vanishes
    const Vec2 c = *m.c[i];
    const int fc = d.t[i];
    total += about_centroid.sensor[i] + s.a(k) * dist2(d.p[i], c) * m.v[i] +
             s.beta() * s.b(k, fc) * dist2(d.p[i], d.q[static_cast<std::size_t>(fc)]) * m.v[i];
  }
  return total;
}

double GradientResidual::max_ap() const {
  return ap.empty() ? 0.0 : *std::max_element(ap.begin(), ap.end());
}

double GradientResidual::max_fc() const {
  return fc.empty() ? 0.0 : *std::max_element(fc.begin(), fc.end());
}

GradientResidual gradient_residual(const Scenario& s, const Deployment& d,
                                   const CellMoments& m) {
  GradientResidual r;
  r.ap.assign(static_cast<std::size_t>(s.num_aps()), 0.0);
  std::vector<Vec2> fc_grad(static_cast<std::size_t>(s.num_fcs()));
  for (int n = 0; n < s.num_aps(); ++n) {
    const auto i = static_cast<std::size_t>(n);
    if (m.empty(n)) continue;
    const int fc = d.t[i];
    const Vec2 q = d.q[static_cast<std::size_t>(fc)];
    const double bw = s.beta() * s.b(n, fc);
    const Vec2 g = 2.0 * m.v[i] * (s.a(n) * (d.p[i] - *m.c[i]) + bw * (d.p[i] - q));
    r.ap[i] = norm(g);
    fc_grad[static_cast<std::size_t>(fc)] =
        fc_grad[static_cast<std::size_t>(fc)] + 2.0 * bw * m.v[i] * (q - d.p[i]);
  }
  r.fc.reserve(fc_grad.size());
  for (const Vec2& g : fc_grad) r.fc.push_back(norm(g));
  return r;
}

}  // namespace twotier
