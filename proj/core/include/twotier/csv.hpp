#pragma once

#include <iosfwd>
#include <string>

#include "twotier/httl.hpp"
#include "twotier/oracle.hpp"

namespace twotier {

/// Shortest decimal text that round-trips to the same double. Independent of
/// the global locale.
std::string format_double(double value);

inline constexpr const char* kTraceHeader =
    "iter,distortion,sensor_power,ap_power,max_ap_res,max_fc_res";
inline constexpr const char* kDeploymentHeader = "kind,index,x,y,assigned_fc,volume";

void write_trace_csv(std::ostream& out, const RunTrace& trace);

/// One `ap` row per AP (1-based FC in assigned_fc, cell mass in volume) and
/// one `fc` row per FC (assigned_fc empty, total mass of its APs in volume).
void write_deployment_csv(std::ostream& out, const Deployment& d, const CellMoments& m);

/// Reads the format written by write_deployment_csv. Throws ParseError.
Deployment read_deployment_csv(std::istream& in);

void write_brute_force_csv(std::ostream& out, const BruteForceResult& r);

}  // namespace twotier
