#include "twotier/svg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "twotier/voronoi.hpp"

namespace twotier {

namespace {

std::string fixed(double v) {
  std::array<char, 48> buf{};
  const auto [end, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 2);
  std::string s(buf.data(), ec == std::errc{} ? end : buf.data());
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string hex_color(double r, double g, double b) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out = "#";
  for (double c : {r, g, b}) {
    const int v = std::clamp(static_cast<int>(std::lround(c * 255.0)), 0, 255);
    out += kDigits[v / 16];
    out += kDigits[v % 16];
  }
  return out;
}

// Golden-angle hues, fixed saturation and lightness.
std::string palette(int index, double lightness) {
  const double hue = std::fmod(index * 137.508, 360.0) / 60.0;
  const double sat = 0.55;
  const double chroma = (1.0 - std::abs(2.0 * lightness - 1.0)) * sat;
  const double x = chroma * (1.0 - std::abs(std::fmod(hue, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hue)) {
    case 0: r = chroma; g = x; break;
    case 1: r = x; g = chroma; break;
    case 2: g = chroma; b = x; break;
    case 3: g = x; b = chroma; break;
    case 4: r = x; b = chroma; break;
    default: r = chroma; b = x; break;
  }
  const double m = lightness - chroma / 2.0;
  return hex_color(r + m, g + m, b + m);
}

constexpr std::array<const char*, 8> kFcColors = {"#c0392b", "#2471a3", "#1e8449", "#b9770e",
                                                  "#7d3c98", "#117a65", "#a04000", "#283747"};

bool listed(const std::vector<int>& group, int index) {
  return std::find(group.begin(), group.end(), index) != group.end();
}

}  // namespace

std::string render_deployment_svg(const Scenario& s, const Deployment& d, const CellMoments& m,
                                  const DisplayGroups& display, const SvgOptions& opts) {
  const BoundingBox& box = s.omega().bounds();
  const double longer = std::max(box.width(), box.height());
  const double scale = opts.size_px / longer;
  const double margin = 20.0;
  const double width_px = box.width() * scale + 2 * margin;
  const double height_px = box.height() * scale + 2 * margin;
  auto sx = [&](double x) { return margin + (x - box.lo.x) * scale; };
  auto sy = [&](double y) { return margin + (box.hi.y - y) * scale; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width_px)
      << "\" height=\"" << fixed(height_px) << "\" viewBox=\"0 0 " << fixed(width_px) << ' '
      << fixed(height_px) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  // Cells, rasterized with horizontal runs of equal owner merged.
  const GeneralizedVoronoi cells(s, d);
  const int nx = std::max(1, static_cast<int>(std::lround(opts.raster * box.width() / longer)));
  const int ny = std::max(1, static_cast<int>(std::lround(opts.raster * box.height() / longer)));
  const double dx = box.width() / nx;
  const double dy = box.height() / ny;
  out << "<g id=\"cells\" shape-rendering=\"crispEdges\">\n";
  for (int j = 0; j < ny; ++j) {
    const double y = box.lo.y + (j + 0.5) * dy;
    int run_start = 0;
    int run_owner = -1;
    auto flush = [&](int end) {
      if (run_owner < 0 || end <= run_start) return;
      const double x0 = box.lo.x + run_start * dx;
      const double x1 = box.lo.x + end * dx;
      const double y1 = box.lo.y + (j + 1) * dy;
      out << "<rect x=\"" << fixed(sx(x0)) << "\" y=\"" << fixed(sy(y1)) << "\" width=\""
          << fixed((x1 - x0) * scale) << "\" height=\"" << fixed(dy * scale) << "\" fill=\""
          << palette(run_owner, 0.85) << "\"/>\n";
    };
    for (int i = 0; i < nx; ++i) {
      const Vec2 w{box.lo.x + (i + 0.5) * dx, y};
      const int who = s.omega().contains(w) ? cells.owner(w) : -1;
      if (who != run_owner) {
        flush(i);
        run_start = i;
        run_owner = who;
      }
    }
    flush(nx);
  }
  out << "</g>\n";

  out << "<polygon id=\"omega\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.50\" points=\"";
  for (const Vec2& v : s.omega().vertices()) out << fixed(sx(v.x)) << ',' << fixed(sy(v.y)) << ' ';
  out << "\"/>\n";

  auto fc_color = [](int k) { return kFcColors[static_cast<std::size_t>(k) % kFcColors.size()]; };

  out << "<g id=\"links\" stroke-width=\"1.00\">\n";
  for (std::size_t n = 0; n < d.p.size(); ++n) {
    const Vec2 p = d.p[n];
    const Vec2 q = d.q[static_cast<std::size_t>(d.t[n])];
    out << "<line x1=\"" << fixed(sx(p.x)) << "\" y1=\"" << fixed(sy(p.y)) << "\" x2=\""
        << fixed(sx(q.x)) << "\" y2=\"" << fixed(sy(q.y)) << "\" stroke=\"" << fc_color(d.t[n])
        << "\"/>\n";
  }
  out << "</g>\n";

  out << "<g id=\"centroids\" stroke-width=\"1.50\">\n";
  for (std::size_t n = 0; n < d.p.size(); ++n) {
    if (m.empty(static_cast<int>(n))) continue;
    const Vec2 c = *m.c[n];
    const double r = 4.0;
    const char* color = fc_color(d.t[n]);
    out << "<path d=\"M" << fixed(sx(c.x) - r) << ',' << fixed(sy(c.y) - r) << " L"
        << fixed(sx(c.x) + r) << ',' << fixed(sy(c.y) + r) << " M" << fixed(sx(c.x) - r) << ','
        << fixed(sy(c.y) + r) << " L" << fixed(sx(c.x) + r) << ',' << fixed(sy(c.y) - r)
        << "\" stroke=\"" << color << "\"/>\n";
  }
  out << "</g>\n";

  out << "<g id=\"aps\" stroke-width=\"1.50\">\n";
  for (std::size_t n = 0; n < d.p.size(); ++n) {
    const char* color = fc_color(d.t[n]);
    const bool strong = listed(display.strong_aps, static_cast<int>(n));
    out << "<circle cx=\"" << fixed(sx(d.p[n].x)) << "\" cy=\"" << fixed(sy(d.p[n].y))
        << "\" r=\"5.00\" stroke=\"" << color << "\" fill=\"" << (strong ? color : "#ffffff")
        << "\"/>\n";
  }
  out << "</g>\n";

  out << "<g id=\"fcs\" stroke-width=\"1.50\">\n";
  for (std::size_t k = 0; k < d.q.size(); ++k) {
    const char* color = fc_color(static_cast<int>(k));
    const bool strong = listed(display.strong_fcs, static_cast<int>(k));
    out << "<path d=\"";
    for (int v = 0; v < 10; ++v) {
      const double radius = (v % 2 == 0) ? 10.0 : 4.0;
      const double angle = -std::numbers::pi / 2 + v * std::numbers::pi / 5;
      out << (v == 0 ? 'M' : 'L') << fixed(sx(d.q[k].x) + radius * std::cos(angle)) << ','
          << fixed(sy(d.q[k].y) + radius * std::sin(angle)) << ' ';
    }
    out << "Z\" stroke=\"" << color << "\" fill=\"" << (strong ? color : "#ffffff") << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

void emit_deployment_svg(const Scenario& s, const Deployment& d, const CellMoments& m,
                         const DisplayGroups& display, const std::filesystem::path& path,
                         const SvgOptions& opts) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << render_deployment_svg(s, d, m, display, opts);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace twotier
