#include "twotier/geometry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace twotier {

double distance_to_segment(Vec2 w, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = norm2(ab);
  if (len2 == 0.0) return norm(w - a);
  const double t = std::clamp(dot(w - a, ab) / len2, 0.0, 1.0);
  return norm(w - (a + t * ab));
}

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices)
    : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) {
    throw std::invalid_argument("polygon needs at least 3 vertices, got " +
                                std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = vertices_[i];
    const Vec2 b = vertices_[(i + 1) % n];
    const Vec2 c = vertices_[(i + 2) % n];
    if (!std::isfinite(a.x) || !std::isfinite(a.y)) {
      throw std::invalid_argument("polygon vertex is not finite");
    }
    const double turn = cross(b - a, c - b);
    if (turn < 0.0) {
      throw std::invalid_argument(
          "polygon must be convex and counter-clockwise (negative turn at "
          "vertex " + std::to_string((i + 1) % n + 1) + ")");
    }
    if (turn == 0.0) {
      throw std::invalid_argument("polygon has collinear or repeated vertex " +
                                  std::to_string((i + 1) % n + 1));
    }
  }
  // Local left turns everywhere can still wind twice around; a simple convex
  // polygon has total turning of exactly one revolution.
  double winding = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = vertices_[(i + 1) % n] - vertices_[i];
    const Vec2 e1 = vertices_[(i + 2) % n] - vertices_[(i + 1) % n];
    winding += std::atan2(cross(e0, e1), dot(e0, e1));
  }
  if (winding > 2.0 * M_PI + 1e-6) {
    throw std::invalid_argument("polygon is self-intersecting");
  }

  bounds_.lo = bounds_.hi = vertices_.front();
  for (const Vec2& v : vertices_) {
    bounds_.lo.x = std::min(bounds_.lo.x, v.x);
    bounds_.lo.y = std::min(bounds_.lo.y, v.y);
    bounds_.hi.x = std::max(bounds_.hi.x, v.x);
    bounds_.hi.y = std::max(bounds_.hi.y, v.y);
  }
}

ConvexPolygon ConvexPolygon::rectangle(Vec2 lo, Vec2 hi) {
  return ConvexPolygon({lo, {hi.x, lo.y}, hi, {lo.x, hi.y}});
}

bool ConvexPolygon::contains(Vec2 w) const {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = vertices_[i];
    const Vec2 b = vertices_[(i + 1) % n];
    if (cross(b - a, w - a) < 0.0) return false;
  }
  return true;
}

double ConvexPolygon::area() const {
  double twice = 0.0;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(vertices_[i], vertices_[(i + 1) % n]);
  }
  return 0.5 * twice;
}

Vec2 ConvexPolygon::centroid() const {
  // Fan triangulation about the first vertex.
  const Vec2 o = vertices_.front();
  Vec2 acc{};
  double total = 0.0;
  for (std::size_t i = 1; i + 1 < vertices_.size(); ++i) {
    const Vec2 a = vertices_[i];
    const Vec2 b = vertices_[i + 1];
    const double w = 0.5 * cross(a - o, b - o);
    acc = acc + w * ((o + a + b) / 3.0);
    total += w;
  }
  return acc / total;
}

double ConvexPolygon::diameter() const {
  double best = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      best = std::max(best, dist2(vertices_[i], vertices_[j]));
    }
  }
  return std::sqrt(best);
}

ConvexPolygon ConvexPolygon::translated(Vec2 offset) const {
  std::vector<Vec2> moved = vertices_;
  for (Vec2& v : moved) v = v + offset;
  return ConvexPolygon(std::move(moved));
}

ConvexPolygon ConvexPolygon::scaled(double factor) const {
  std::vector<Vec2> moved = vertices_;
  for (Vec2& v : moved) v = factor * v;
  return ConvexPolygon(std::move(moved));
}

}  // namespace twotier
