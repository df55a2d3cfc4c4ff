#include "twotier/model.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

namespace twotier {

namespace {

constexpr double kDensityMassTolerance = 1e-2;

double tabulated_value(const TabulatedDensity& table, const BoundingBox& box,
                       Vec2 w) {
  const double u = (w.x - box.lo.x) / box.width();
  const double v = (w.y - box.lo.y) / box.height();
  const int i = std::clamp(static_cast<int>(std::floor(u * table.nx)), 0,
                           table.nx - 1);
  const int j = std::clamp(static_cast<int>(std::floor(v * table.ny)), 0,
                           table.ny - 1);
  return table.values[static_cast<std::size_t>(j) * table.nx + i];
}

// Midpoint estimate of the density mass over omega; only used to validate
// tabulated densities.
double estimate_mass(const Scenario& s) {
  const BoundingBox& box = s.omega().bounds();
  constexpr int kCells = 256;
  const double dx = box.width() / kCells;
  const double dy = box.height() / kCells;
  double mass = 0.0;
  for (int j = 0; j < kCells; ++j) {
    for (int i = 0; i < kCells; ++i) {
      const Vec2 w{box.lo.x + (i + 0.5) * dx, box.lo.y + (j + 0.5) * dy};
      mass += s.density(w) * dx * dy;
    }
  }
  return mass;
}

}  // namespace

Scenario::Scenario(ConvexPolygon omega, DensitySpec density,
                   std::vector<double> a, std::vector<double> b, int num_fcs,
                   double beta)
    : omega_(std::move(omega)),
      density_(std::move(density)),
      a_(std::move(a)),
      b_(std::move(b)),
      num_fcs_(num_fcs),
      beta_(beta),
      uniform_value_(1.0 / omega_.area()) {
  const int n = num_aps();
  if (n < 1) throw ValidationError("n_aps must be positive");
  if (num_fcs_ < 1) throw ValidationError("n_fcs must be positive");
  if (n < num_fcs_) {
    throw ValidationError("N < M: " + std::to_string(n) + " APs for " +
                          std::to_string(num_fcs_) + " FCs");
  }
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (!(a_[i] > 0.0) || !std::isfinite(a_[i])) {
      throw ValidationError("a[" + std::to_string(i + 1) + "] must be positive");
    }
  }
  if (b_.size() != static_cast<std::size_t>(n) * num_fcs_) {
    throw ValidationError("b must have n_aps * n_fcs = " +
                          std::to_string(n * num_fcs_) + " entries, got " +
                          std::to_string(b_.size()));
  }
  for (std::size_t i = 0; i < b_.size(); ++i) {
    if (!(b_[i] > 0.0) || !std::isfinite(b_[i])) {
      throw ValidationError("b[" + std::to_string(i / num_fcs_ + 1) + "," +
                            std::to_string(i % num_fcs_ + 1) +
                            "] must be positive");
    }
  }
  if (!(beta_ >= 0.0) || !std::isfinite(beta_)) {
    throw ValidationError("beta must be nonnegative");
  }
  if (const auto* table = std::get_if<TabulatedDensity>(&density_)) {
    if (table->nx < 1 || table->ny < 1 ||
        table->values.size() != static_cast<std::size_t>(table->nx) * table->ny) {
      throw ValidationError("density.table has inconsistent shape");
    }
    for (double v : table->values) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw ValidationError("density.table values must be nonnegative");
      }
    }
    const double mass = estimate_mass(*this);
    if (std::abs(mass - 1.0) > kDensityMassTolerance) {
      std::ostringstream msg;
      msg << "density must integrate to 1 over omega, got " << mass;
      throw ValidationError(msg.str());
    }
  }
}

double Scenario::density(Vec2 w) const {
  if (!omega_.contains(w)) return 0.0;
  if (const auto* table = std::get_if<TabulatedDensity>(&density_)) {
    return tabulated_value(*table, omega_.bounds(), w);
  }
  return uniform_value_;
}

Scenario Scenario::with_beta(double beta) const {
  return Scenario(omega_, density_, a_, b_, num_fcs_, beta);
}

Scenario Scenario::with_fc_count(int num_fcs) const {
  if (num_fcs < 1 || num_fcs > num_fcs_) {
    throw ValidationError("with_fc_count: requested " + std::to_string(num_fcs) +
                          " of " + std::to_string(num_fcs_) + " FCs");
  }
  std::vector<double> b;
  b.reserve(static_cast<std::size_t>(num_aps()) * num_fcs);
  for (int n = 0; n < num_aps(); ++n) {
    for (int m = 0; m < num_fcs; ++m) b.push_back(this->b(n, m));
  }
  return Scenario(omega_, density_, a_, std::move(b), num_fcs, beta_);
}

double derive_weight(const PhysicalLayerParams& params) {
  for (double v : {params.g_t, params.g_r, params.lambda, params.gamma,
                   params.n0, params.zeta}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::domain_error("physical-layer parameters must be positive");
    }
  }
  constexpr double kPi = std::numbers::pi;
  const double eta = 16.0 * kPi * kPi * params.gamma * params.n0 /
                     (params.g_t * params.g_r * params.lambda * params.lambda);
  return eta / params.zeta;
}

std::vector<std::string> validate_deployment(const Scenario& s,
                                             const Deployment& d) {
  std::vector<std::string> errors;
  const auto n = static_cast<std::size_t>(s.num_aps());
  const auto m = static_cast<std::size_t>(s.num_fcs());
  if (d.p.size() != n) {
    errors.push_back("dimension: |p| = " + std::to_string(d.p.size()) +
                     ", expected " + std::to_string(n));
  }
  if (d.q.size() != m) {
    errors.push_back("dimension: |q| = " + std::to_string(d.q.size()) +
                     ", expected " + std::to_string(m));
  }
  if (d.t.size() != n) {
    errors.push_back("dimension: |t| = " + std::to_string(d.t.size()) +
                     ", expected " + std::to_string(n));
  }
  for (std::size_t i = 0; i < d.t.size(); ++i) {
    if (d.t[i] < 0 || d.t[i] >= static_cast<int>(m)) {
      errors.push_back("range: t[" + std::to_string(i + 1) + "] = " +
                       std::to_string(d.t[i] + 1) + " not in 1.." +
                       std::to_string(m));
    }
  }
  auto check_finite = [&](const std::vector<Vec2>& pts, const char* name) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!std::isfinite(pts[i].x) || !std::isfinite(pts[i].y)) {
        errors.push_back(std::string("value: ") + name + "[" +
                         std::to_string(i + 1) + "] is not finite");
      }
    }
  };
  check_finite(d.p, "p");
  check_finite(d.q, "q");
  return errors;
}

// --- config text ---------------------------------------------------------

namespace {

using nlohmann::json;

const json& require(const json& obj, const std::string& key,
                    const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(path, "missing required key");
  }
  return obj.at(key);
}

double as_double(const json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(path, "expected a number");
  return v.get<double>();
}

long long as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
  return v.get<long long>();
}

std::vector<double> as_doubles(const json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path, "expected a list of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_double(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<int> as_indices(const json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path, "expected a list of indices");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const long long k = as_int(v[i], path + "[" + std::to_string(i) + "]");
    if (k < 1) throw ParseError(path, "indices are 1-based");
    out.push_back(static_cast<int>(k - 1));
  }
  return out;
}

DensitySpec parse_density(const json& root) {
  const json& density = require(root, "density", "density");
  const json& kind = require(density, "kind", "density.kind");
  if (!kind.is_string()) throw ParseError("density.kind", "expected a string");
  const auto k = kind.get<std::string>();
  if (k == "uniform") return UniformDensity{};
  if (k != "table") {
    throw ParseError("density.kind", "must be 'uniform' or 'table', got '" + k + "'");
  }
  const json& table = require(density, "table", "density.table");
  TabulatedDensity out;
  out.nx = static_cast<int>(as_int(require(table, "nx", "density.table.nx"),
                                   "density.table.nx"));
  out.ny = static_cast<int>(as_int(require(table, "ny", "density.table.ny"),
                                   "density.table.ny"));
  out.values = as_doubles(require(table, "values", "density.table.values"),
                          "density.table.values");
  return out;
}

ConvexPolygon parse_omega(const json& root) {
  const json& verts =
      require(require(root, "omega", "omega"), "vertices", "omega.vertices");
  if (!verts.is_array()) {
    throw ParseError("omega.vertices", "expected a list of [x, y] pairs");
  }
  std::vector<Vec2> pts;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const std::string path = "omega.vertices[" + std::to_string(i) + "]";
    const auto xy = as_doubles(verts[i], path);
    if (xy.size() != 2) throw ParseError(path, "expected [x, y]");
    pts.push_back({xy[0], xy[1]});
  }
  try {
    return ConvexPolygon(std::move(pts));
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("omega.vertices: ") + e.what());
  }
}

}  // namespace

ScenarioConfig parse_scenario_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("<document>", e.what());
  }
  if (!root.is_object()) throw ParseError("<document>", "expected an object");

  ConvexPolygon omega = parse_omega(root);
  DensitySpec density = parse_density(root);
  const long long n = as_int(require(root, "n_aps", "n_aps"), "n_aps");
  const long long m = as_int(require(root, "n_fcs", "n_fcs"), "n_fcs");
  if (n < 1) throw ValidationError("n_aps must be positive");
  if (m < 1) throw ValidationError("n_fcs must be positive");
  auto a = as_doubles(require(root, "a", "a"), "a");
  auto b = as_doubles(require(root, "b", "b"), "b");
  if (a.size() != static_cast<std::size_t>(n)) {
    throw ParseError("a", "expected " + std::to_string(n) + " entries, got " +
                              std::to_string(a.size()));
  }
  if (b.size() != static_cast<std::size_t>(n * m)) {
    throw ParseError("b", "expected n_aps * n_fcs = " + std::to_string(n * m) +
                              " entries, got " + std::to_string(b.size()));
  }
  const double beta = as_double(require(root, "beta", "beta"), "beta");

  ScenarioConfig config{
      .name = root.value("name", std::string{}),
      .scenario = Scenario(std::move(omega), std::move(density), std::move(a),
                           std::move(b), static_cast<int>(m), beta),
      .settings = {},
      .display = {},
      .rho = std::nullopt,
  };

  if (root.contains("seed")) {
    const json& seed = root.at("seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
      throw ParseError("seed", "expected a nonnegative integer");
    }
    config.settings.seed = seed.get<std::uint64_t>();
  }
  if (root.contains("epsilon")) {
    config.settings.epsilon = as_double(root.at("epsilon"), "epsilon");
    if (!(config.settings.epsilon > 0.0)) {
      throw ValidationError("epsilon must be positive");
    }
  }
  if (root.contains("max_iters")) {
    const long long iters = as_int(root.at("max_iters"), "max_iters");
    if (iters < 1) throw ValidationError("max_iters must be at least 1");
    config.settings.max_iters = static_cast<int>(iters);
  }
  if (root.contains("grid")) {
    const long long res = as_int(require(root.at("grid"), "resolution", "grid.resolution"),
                                 "grid.resolution");
    if (res < 16) throw ValidationError("grid.resolution must be at least 16");
    config.settings.grid_resolution = static_cast<int>(res);
  }
  if (root.contains("display")) {
    const json& display = root.at("display");
    if (display.contains("strong_aps")) {
      config.display.strong_aps = as_indices(display.at("strong_aps"), "display.strong_aps");
    }
    if (display.contains("strong_fcs")) {
      config.display.strong_fcs = as_indices(display.at("strong_fcs"), "display.strong_fcs");
    }
  }
  if (root.contains("rho")) {
    config.rho = as_double(root.at("rho"), "rho");
    std::clog << "note: rho (receiver power coefficient) adds a constant to "
                 "the objective and is ignored\n";
  }
  return config;
}

Scenario parse_scenario(const std::string& text) {
  return parse_scenario_config(text).scenario;
}

std::string serialize_scenario_config(const ScenarioConfig& config) {
  const Scenario& s = config.scenario;
  json root;
  if (!config.name.empty()) root["name"] = config.name;
  json verts = json::array();
  for (const Vec2& v : s.omega().vertices()) verts.push_back({v.x, v.y});
  root["omega"]["vertices"] = verts;
  if (const auto* table = std::get_if<TabulatedDensity>(&s.density_spec())) {
    root["density"]["kind"] = "table";
    root["density"]["table"] = {
        {"nx", table->nx}, {"ny", table->ny}, {"values", table->values}};
  } else {
    root["density"]["kind"] = "uniform";
  }
  root["n_aps"] = s.num_aps();
  root["n_fcs"] = s.num_fcs();
  root["a"] = s.a_weights();
  root["b"] = s.b_weights();
  root["beta"] = s.beta();
  if (config.rho) root["rho"] = *config.rho;
  root["seed"] = config.settings.seed;
  root["epsilon"] = config.settings.epsilon;
  root["max_iters"] = config.settings.max_iters;
  root["grid"]["resolution"] = config.settings.grid_resolution;
  auto one_based = [](const std::vector<int>& idx) {
    json out = json::array();
    for (int i : idx) out.push_back(i + 1);
    return out;
  };
  if (!config.display.strong_aps.empty() || !config.display.strong_fcs.empty()) {
    root["display"]["strong_aps"] = one_based(config.display.strong_aps);
    root["display"]["strong_fcs"] = one_based(config.display.strong_fcs);
  }
  return root.dump(2) + "\n";
}

}  // namespace twotier
