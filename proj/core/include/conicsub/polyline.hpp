#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace conicsub {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(b - a); }

/// Exact averaging used for straight-line and inflection-edge midpoints.
constexpr Vec2 midpoint(Vec2 a, Vec2 b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

enum class Topology { Open, Closed };

struct BoundingBox {
  Vec2 min;
  Vec2 max;

  double diagonal() const { return distance(min, max); }
  Vec2 center() const { return midpoint(min, max); }
};

BoundingBox bounding_box(std::span<const Vec2> points);

/// Ordered affine vertex sequence. For closed topology the edge from the last
/// vertex back to the first is implicit; the first vertex is never repeated.
struct Polyline {
  std::vector<Vec2> points;
  Topology topology = Topology::Open;

  std::size_t size() const { return points.size(); }
  bool closed() const { return topology == Topology::Closed; }
  std::size_t edge_count() const;

  const Vec2& operator[](std::size_t i) const { return points[i]; }
  Vec2& operator[](std::size_t i) { return points[i]; }

  /// Index arithmetic modulo size(); only meaningful for closed polylines.
  const Vec2& wrapped(std::ptrdiff_t i) const;

  friend bool operator==(const Polyline&, const Polyline&) = default;
};

/// Inclusive vertex range [first, last]. On closed polylines `last` may exceed
/// size() - 1, in which case indices are taken modulo size().
struct IndexRange {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t count() const { return last - first + 1; }
  friend bool operator==(IndexRange, IndexRange) = default;
};

/// Vertices of `range` in order, resolving wraparound.
std::vector<Vec2> gather(const Polyline& poly, IndexRange range);

}  // namespace conicsub
