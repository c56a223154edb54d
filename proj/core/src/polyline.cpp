#include "conicsub/polyline.hpp"

#include <algorithm>

namespace conicsub {

BoundingBox bounding_box(std::span<const Vec2> points) {
  if (points.empty()) return {};
  BoundingBox box{points.front(), points.front()};
  for (const Vec2& p : points) {
    box.min.x = std::min(box.min.x, p.x);
    box.min.y = std::min(box.min.y, p.y);
    box.max.x = std::max(box.max.x, p.x);
    box.max.y = std::max(box.max.y, p.y);
  }
  return box;
}

std::size_t Polyline::edge_count() const {
  if (points.size() < 2) return 0;
  return closed() ? points.size() : points.size() - 1;
}

const Vec2& Polyline::wrapped(std::ptrdiff_t i) const {
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  return points[static_cast<std::size_t>(((i % n) + n) % n)];
}

std::vector<Vec2> gather(const Polyline& poly, IndexRange range) {
  std::vector<Vec2> out;
  out.reserve(range.count());
  for (std::size_t i = range.first; i <= range.last; ++i) out.push_back(poly.points[i % poly.size()]);
  return out;
}

}  // namespace conicsub
