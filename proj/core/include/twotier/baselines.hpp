#pragma once

#include <optional>
#include <vector>

#include "twotier/httl.hpp"

namespace twotier {

/// Simplified comparison baseline, not a reproduction of published MER/AC/DC
/// methods. Plain Lloyd iterations that ignore every weight: cells are
/// unweighted Voronoi cells of the APs, each AP connects to its nearest FC,
/// APs move to their centroids and FCs to the plain mean of their APs. The
/// recorded distortion is the weighted two-tier objective of the deployment
/// under the baseline's own partition and index map. Stops when the
/// relative change |D_old - D_new| / D_old falls below epsilon.
RunTrace nearest_fc_lloyd(const Scenario& s, const HttlConfig& cfg, const Quadrature& quad,
                          const std::optional<Deployment>& init = std::nullopt);

/// Sample assignment by argmin_n a_n |p_n - w|^2 (multiplicative weights
/// only, no AP-tier term).
std::vector<int> mw_voronoi_partition_baseline(const Scenario& s, const Deployment& d,
                                               const Quadrature& quad);

}  // namespace twotier
