#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "twotier/geometry.hpp"

namespace twotier {

/// Malformed configuration text. `field()` names the offending key.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Well-formed input that violates a model invariant (e.g. N < M).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct UniformDensity {};

/// Piecewise-constant density on an nx-by-ny grid spanning omega's bounding
/// box. values[j * nx + i] covers column i (along x) and row j (along y),
/// both counted from the box's lower-left corner.
struct TabulatedDensity {
  int nx = 0;
  int ny = 0;
  std::vector<double> values;
};

using DensitySpec = std::variant<UniformDensity, TabulatedDensity>;

/// Deployment problem: target region, data-rate density, node weights and the
/// multiplier trading sensor power against AP power.
///
/// AP indices run over [0, num_aps()), FC indices over [0, num_fcs()).
/// The constructor enforces N >= M >= 1, positive weights, beta >= 0 and,
/// for tabulated densities, unit total mass over omega.
class Scenario {
 public:
  Scenario(ConvexPolygon omega, DensitySpec density, std::vector<double> a,
           std::vector<double> b, int num_fcs, double beta);

  const ConvexPolygon& omega() const { return omega_; }
  const DensitySpec& density_spec() const { return density_; }
  int num_aps() const { return static_cast<int>(a_.size()); }
  int num_fcs() const { return num_fcs_; }
  double a(int n) const { return a_[static_cast<std::size_t>(n)]; }
  double b(int n, int m) const {
    return b_[static_cast<std::size_t>(n) * static_cast<std::size_t>(num_fcs_) +
              static_cast<std::size_t>(m)];
  }
  double beta() const { return beta_; }
  const std::vector<double>& a_weights() const { return a_; }
  /// Row-major N x M.
  const std::vector<double>& b_weights() const { return b_; }

  /// Density value at w. Zero outside omega.
  double density(Vec2 w) const;

  Scenario with_beta(double beta) const;
  /// Drops FC columns beyond `num_fcs`.
  Scenario with_fc_count(int num_fcs) const;

 private:
  ConvexPolygon omega_;
  DensitySpec density_;
  std::vector<double> a_;
  std::vector<double> b_;
  int num_fcs_;
  double beta_;
  double uniform_value_;
};

/// AP positions p, FC positions q and the index map t (t[n] is the FC that
/// AP n reports to, 0-based).
struct Deployment {
  std::vector<Vec2> p;
  std::vector<Vec2> q;
  std::vector<int> t;

  friend bool operator==(const Deployment&, const Deployment&) = default;
};

struct PhysicalLayerParams {
  double g_t = 1.0;     // transmitter antenna gain
  double g_r = 1.0;     // receiver antenna gain
  double lambda = 1.0;  // wavelength, m
  double gamma = 1.0;   // SNR threshold
  double n0 = 1.0;      // noise power, W
  double zeta = 1.0;    // instantaneous transmitter data rate, bit/s
};

/// Free-space weight eta / zeta, where eta = 16 pi^2 gamma n0 / (g_t g_r
/// lambda^2) is the transmit power needed per squared meter to reach SNR
/// gamma. Throws std::domain_error on nonpositive input.
double derive_weight(const PhysicalLayerParams& params);

/// Returns one message per violated constraint; empty means consistent.
std::vector<std::string> validate_deployment(const Scenario& s,
                                             const Deployment& d);

struct RunSettings {
  std::uint64_t seed = 1;
  double epsilon = 1e-5;
  int max_iters = 100;
  int grid_resolution = 512;
};

/// Node groups drawn solid (strong) in renders; everything else is hollow.
struct DisplayGroups {
  std::vector<int> strong_aps;
  std::vector<int> strong_fcs;
};

/// Everything a config file carries.
struct ScenarioConfig {
  std::string name;
  Scenario scenario;
  RunSettings settings;
  DisplayGroups display;
  std::optional<double> rho;
};

/// Parses the JSON config schema described in the README. Indices in the
/// text (display groups) are 1-based. Throws ParseError for schema problems
/// and ValidationError for invariant violations.
ScenarioConfig parse_scenario_config(const std::string& text);
Scenario parse_scenario(const std::string& text);
std::string serialize_scenario_config(const ScenarioConfig& config);

}  // namespace twotier
