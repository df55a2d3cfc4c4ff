#pragma once

#include <optional>
#include <span>
#include <vector>

#include "twotier/integrator.hpp"
#include "twotier/model.hpp"

namespace twotier {

/// Cells with less mass than this are treated as empty.
inline constexpr double kEmptyCellMass = 1e-12;

/// Mass v_n and centroid c_n of each AP's cell. Empty cells have no centroid.
struct CellMoments {
  std::vector<double> v;
  std::vector<std::optional<Vec2>> c;

  bool empty(int n) const { return !c[static_cast<std::size_t>(n)].has_value(); }
};

/// Sensor-tier power, AP-tier power and their Lagrangian combination
/// distortion = sensor_power + beta * ap_power. per_cell[n] is AP n's share
/// of the distortion.
struct PowerReport {
  double sensor_power = 0.0;
  double ap_power = 0.0;
  double distortion = 0.0;
  std::vector<double> per_cell;
};

/// Owner of every quadrature sample under the generalized Voronoi partition.
std::vector<int> assign_cells(const Quadrature& quad, const Scenario& s,
                              const Deployment& d);

/// Moments of an arbitrary partition given as one cell index per sample.
CellMoments moments_of_partition(const Quadrature& quad, std::span<const int> cells,
                                 int num_cells);

CellMoments cell_moments(const Quadrature& quad, const Scenario& s, const Deployment& d);
CellMoments cell_moments(const Scenario& s, const Deployment& d, const Integrator& g);

/// Distortion of deployment d evaluated on an arbitrary partition. This is
/// the objective before the partition is optimized; the generalized Voronoi
/// partition minimizes it.
PowerReport distortion_on_partition(const Quadrature& quad, const Scenario& s,
                                    const Deployment& d, std::span<const int> cells);

PowerReport distortion(const Quadrature& quad, const Scenario& s, const Deployment& d);
PowerReport distortion(const Scenario& s, const Deployment& d, const Integrator& g);
double sensor_power(const Quadrature& quad, const Scenario& s, const Deployment& d);
double sensor_power(const Scenario& s, const Deployment& d, const Integrator& g);
double ap_power(const Quadrature& quad, const Scenario& s, const Deployment& d);
double ap_power(const Scenario& s, const Deployment& d, const Integrator& g);

/// Power report and moments from one pass over the samples.
struct Evaluation {
  PowerReport report;
  CellMoments moments;
};
Evaluation evaluate(const Quadrature& quad, const Scenario& s, const Deployment& d);

/// sum_samples weight * min_n (a_n |p_n - w|^2 + additive_n): the distortion
/// of the partition-optimal cells without materializing the partition.
double envelope_distortion(const Quadrature& quad, std::span<const double> a,
                           std::span<const Vec2> p, std::span<const double> additive);

/// Distortion rebuilt from moments: per cell, the a-weighted second moment
/// about the centroid plus a_n |p_n - c_n|^2 v_n plus the AP-tier term.
/// Throws std::logic_error if a cell with mass lacks a centroid.
double distortion_parallel_axis(const Quadrature& quad, const Scenario& s,
                                const Deployment& d, const CellMoments& m);

/// Norms of dD/dp_n and dD/dq_m at fixed partition.
struct GradientResidual {
  std::vector<double> ap;
  std::vector<double> fc;

  double max_ap() const;
  double max_fc() const;
};
GradientResidual gradient_residual(const Scenario& s, const Deployment& d,
                                   const CellMoments& m);

}  // namespace twotier
