#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace twotier {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend constexpr Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
  friend constexpr Vec2 operator/(Vec2 v, double s) { return {v.x / s, v.y / s}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
constexpr double norm2(Vec2 v) { return v.x * v.x + v.y * v.y; }
constexpr double dist2(Vec2 a, Vec2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}
inline double norm(Vec2 v) { return std::sqrt(norm2(v)); }

/// Euclidean distance from `w` to the closed segment [a, b].
double distance_to_segment(Vec2 w, Vec2 a, Vec2 b);

struct BoundingBox {
  Vec2 lo;
  Vec2 hi;

  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  double area() const { return width() * height(); }
};

/// Convex polygon with counter-clockwise vertex order.
///
/// Construction validates the shape (at least three vertices, strictly
/// convex turns, positive orientation) and throws std::invalid_argument
/// otherwise. Membership is closed: boundary points are inside.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Vec2> vertices);

  static ConvexPolygon rectangle(Vec2 lo, Vec2 hi);

  std::span<const Vec2> vertices() const { return vertices_; }
  bool contains(Vec2 w) const;
  double area() const;
  Vec2 centroid() const;
  double diameter() const;
  const BoundingBox& bounds() const { return bounds_; }

  ConvexPolygon translated(Vec2 offset) const;
  ConvexPolygon scaled(double factor) const;

 private:
  std::vector<Vec2> vertices_;
  BoundingBox bounds_;
};

}  // namespace twotier
