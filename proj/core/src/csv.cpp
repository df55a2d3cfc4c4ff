#include "twotier/csv.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace twotier {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out << kTraceHeader << '\n';
  for (const IterationRecord& r : trace.iterations) {
    out << r.iter << ',' << format_double(r.distortion) << ','
        << format_double(r.sensor_power) << ',' << format_double(r.ap_power) << ','
        << format_double(r.max_ap_res) << ',' << format_double(r.max_fc_res) << '\n';
  }
}

void write_deployment_csv(std::ostream& out, const Deployment& d, const CellMoments& m) {
  out << kDeploymentHeader << '\n';
  std::vector<double> served(d.q.size(), 0.0);
  for (std::size_t n = 0; n < d.p.size(); ++n) {
    served[static_cast<std::size_t>(d.t[n])] += m.v[n];
    out << "ap," << n + 1 << ',' << format_double(d.p[n].x) << ','
        << format_double(d.p[n].y) << ',' << d.t[n] + 1 << ',' << format_double(m.v[n])
        << '\n';
  }
  for (std::size_t k = 0; k < d.q.size(); ++k) {
    out << "fc," << k + 1 << ',' << format_double(d.q[k].x) << ','
        << format_double(d.q[k].y) << ",," << format_double(served[k]) << '\n';
  }
}

namespace {

double parse_number(const std::string& text, const std::string& field) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) throw ParseError(field, "not a number: '" + text + "'");
  return v;
}

}  // namespace

Deployment read_deployment_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kDeploymentHeader) {
    throw ParseError("deployment.header", "expected '" + std::string(kDeploymentHeader) + "'");
  }
  std::map<int, Vec2> aps;
  std::map<int, int> links;
  std::map<int, Vec2> fcs;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(cell);
    if (line.back() == ',') cols.emplace_back();
    const std::string where = "deployment.row" + std::to_string(row);
    if (cols.size() != 6) throw ParseError(where, "expected 6 columns");
    const int index = static_cast<int>(parse_number(cols[1], where + ".index"));
    if (index < 1) throw ParseError(where + ".index", "indices are 1-based");
    const Vec2 pos{parse_number(cols[2], where + ".x"), parse_number(cols[3], where + ".y")};
    if (cols[0] == "ap") {
      aps[index - 1] = pos;
      links[index - 1] = static_cast<int>(parse_number(cols[4], where + ".assigned_fc")) - 1;
    } else if (cols[0] == "fc") {
      fcs[index - 1] = pos;
    } else {
      throw ParseError(where + ".kind", "expected 'ap' or 'fc'");
    }
  }
  Deployment d;
  for (const auto& [k, v] : aps) {
    if (k != static_cast<int>(d.p.size())) throw ParseError("deployment", "AP indices not contiguous");
    d.p.push_back(v);
    d.t.push_back(links[k]);
  }
  for (const auto& [k, v] : fcs) {
    if (k != static_cast<int>(d.q.size())) throw ParseError("deployment", "FC indices not contiguous");
    d.q.push_back(v);
  }
  return d;
}

void write_brute_force_csv(std::ostream& out, const BruteForceResult& r) {
  out << "distortion,sensor_power,ap_power,grid_step,evaluations\n"
      << format_double(r.distortion) << ',' << format_double(r.report.sensor_power) << ','
      << format_double(r.report.ap_power) << ',' << format_double(r.grid_step) << ','
      << r.evaluations << '\n';
}

}  // namespace twotier
