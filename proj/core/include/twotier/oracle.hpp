#pragma once

#include <cstdint>
#include <vector>

#include "twotier/distortion.hpp"
#include "twotier/model.hpp"

namespace twotier {

/// Raised when an exhaustive search would exceed its candidate budget.
class EnumerationTooLarge : public ValidationError {
 public:
  EnumerationTooLarge(const std::string& what, double candidates)
      : ValidationError(what), candidates_(candidates) {}
  double candidates() const { return candidates_; }

 private:
  double candidates_;
};

struct BruteForceOptions {
  /// Midpoint cells along the strip.
  int resolution = 200;
  /// Refuse instances whose nominal candidate count exceeds this.
  double max_candidates = 1.5e10;
  /// Stride of the seeding pass; 0 or 1 disables it.
  int coarse_factor = 5;
};

struct BruteForceResult {
  Deployment best;
  double distortion = 0.0;
  double grid_step = 0.0;
  /// Complete candidates whose distortion was evaluated.
  std::uint64_t evaluations = 0;
  PowerReport report;
  CellMoments moments;
};

/// Axis-aligned strip [0, length] x [0, height] with uniform density, the
/// two-dimensional stand-in for a segment.
Scenario make_strip_scenario(std::vector<double> a, std::vector<double> b, int num_fcs,
                             double beta, double length = 1.0, double height = 1e-3);

/// Exhaustive search over AP and FC positions on the strip's center line,
/// discretized with `step`. The index map follows the weighted nearest-FC
/// rule and the partition is the generalized Voronoi partition, so every
/// candidate is scored at its best T and R.
///
/// Lossless reductions keep desk-scale instances tractable. An AP tuple is
/// skipped when its one-tier distortion (every AP-tier term zero) already
/// exceeds the incumbent. FCs are only placed within the span of the APs,
/// since moving an FC into that span shortens every AP-FC link. FC
/// placements are searched by branch and bound over slot ranges, pruning a
/// range when the additive terms implied by the nearest point of each range
/// already give a larger distortion. Among equal minimizers the first in
/// lexicographic (p_1, ..., p_N, q_1, ..., q_M) index order wins.
///
/// Requires N <= 3, M <= 2, step >= 0.005 and a thin axis-aligned strip.
BruteForceResult brute_force_1d(const Scenario& s, double step,
                                const BruteForceOptions& opts = {});

struct FcIncrementResult {
  BruteForceResult fewer;  // first M FCs
  BruteForceResult more;   // all M + 1 FCs
  /// Total cell mass served by each FC at the M + 1 optimum.
  std::vector<double> fc_volume;

  double d_with_m() const { return fewer.distortion; }
  double d_with_m_plus_1() const { return more.distortion; }
};

/// Brute-force optimum with the last FC of `s` removed and with it present.
FcIncrementResult fc_increment_check(const Scenario& s, double step,
                                     const BruteForceOptions& opts = {});

}  // namespace twotier
