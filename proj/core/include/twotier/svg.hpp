#pragma once

#include <filesystem>
#include <string>

#include "twotier/distortion.hpp"
#include "twotier/model.hpp"

namespace twotier {

struct SvgOptions {
  /// Raster cells along the longer side of omega's bounding box.
  int raster = 120;
  /// Drawing size in pixels along the longer side.
  double size_px = 640.0;
};

/// Deployment plot: omega outline, cells shaded by owner, FC stars, AP
/// circles, centroid crosses and AP-to-FC links. Nodes listed in `display`
/// are drawn solid, all others hollow. Output is byte-stable for equal
/// inputs.
std::string render_deployment_svg(const Scenario& s, const Deployment& d, const CellMoments& m,
                                  const DisplayGroups& display, const SvgOptions& opts = {});

/// Writes render_deployment_svg to `path`. Throws std::runtime_error on I/O
/// failure.
void emit_deployment_svg(const Scenario& s, const Deployment& d, const CellMoments& m,
                         const DisplayGroups& display, const std::filesystem::path& path,
                         const SvgOptions& opts = {});

}  // namespace twotier
