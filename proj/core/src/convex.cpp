#include "conicsub/convex.hpp"

#include <cmath>

#include "conicsub/error.hpp"
#include "conicsub/tangent.hpp"

namespace conicsub {
namespace {

/// Sine of the angle at a between b - a and q - a; zero when q == a.
double side_sine(Vec2 a, Vec2 b, Vec2 q) {
  const Vec2 e = b - a;
  const Vec2 v = q - a;
  const double len = norm(e) * norm(v);
  return len == 0.0 ? 0.0 : cross(e, v) / len;
}

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

/// q on the same closed side of `line` as `ref`, which itself must be off the line.
bool same_side(const HLine& line, Vec2 ref, Vec2 q) {
  const double r = signed_distance(line, ref);
  if (std::abs(r) <= tol::proj) return false;
  return signed_distance(line, q) * sign_of(r) >= -tol::proj;
}

}  // namespace

ConvexLevelData ConvexLevelData::from_affine(std::span<const Vec2> pts, Topology topology) {
  ConvexLevelData d;
  d.topology = topology;
  d.vertices.reserve(pts.size());
  for (const Vec2& p : pts) d.vertices.push_back(HPoint::from_affine(p));
  d.tangents = build_tangent_field(pts, topology).lines;
  return d;
}

std::size_t ConvexLevelData::edge_count() const {
  if (vertices.size() < 2) return 0;
  return topology == Topology::Closed ? vertices.size() : vertices.size() - 1;
}

int ConvexLevelData::orientation() const {
  if (orientation_cache_ != 0) return orientation_cache_;
  const std::size_t n = vertices.size();
  double turning = 0.0;
  const bool closed = topology == Topology::Closed;
  const std::size_t first = closed ? 0 : 1;
  const std::size_t last = closed ? n : n - 1;
  for (std::size_t i = first; i < last; ++i) {
    const Vec2 a = affine((i + n - 1) % n);
    const Vec2 b = affine(i);
    const Vec2 c = affine((i + 1) % n);
    turning += cross(b - a, c - b);
  }
  orientation_cache_ = turning < 0.0 ? -1 : 1;
  return orientation_cache_;
}

const char* to_string(InsertionRule rule) {
  switch (rule) {
    case InsertionRule::Harmonic: return "harmonic";
    case InsertionRule::EndpointRule: return "endpoint";
    case InsertionRule::StraightMidpoint: return "straight-midpoint";
    case InsertionRule::SmallSegmentMidpoint: return "small-segment-midpoint";
    case InsertionRule::Fallback: return "fallback";
  }
  return "unknown";
}

std::vector<HPoint> tangent_intersections(const ConvexLevelData& d) {
  const std::size_t n = d.size();
  std::vector<HPoint> t;
  t.reserve(d.edge_count());
  for (std::size_t i = 0; i < d.edge_count(); ++i) {
    try {
      t.push_back(normalize(meet(d.tangents[i], d.tangents[(i + 1) % n])));
    } catch (const Error& e) {
      if (e.code() != Errc::CoincidentLines) throw;
      throw Error(Errc::CoincidentTangents, "tangents at both ends of edge " + std::to_string(i) + " coincide");
    }
  }
  return t;
}

std::size_t select_parameter_index(std::size_t i, const ConvexLevelData& d, const HPoint& t_i) {
  const std::size_t n = d.size();
  if (n < 3) throw Error(Errc::NoCandidates, "parameter selection needs a third vertex");
  const Vec2 m = midpoint(d.affine(i), d.affine((i + 1) % n));
  const HPoint t = normalize(t_i);
  const bool infinite = t.w == 0.0;
  const Vec2 apex = infinite ? Vec2{} : Vec2{t.x, t.y};
  const Vec2 g = infinite ? Vec2{t.x, t.y} : m - apex;

  // Angles are compared through tan(alpha) = |cross| / |dot| without atan2.
  // For an apex at infinity every line of the pencil is parallel; the limit
  // ordering is by perpendicular offset of p_j from the line through m_i.
  std::optional<std::size_t> best;
  double best_num = 0.0;
  double best_den = 1.0;
  for (std::size_t offset = 2; offset < n; ++offset) {
    const std::size_t j = (i + offset) % n;
    const Vec2 p = d.affine(j);
    double num = 0.0;
    double den = 1.0;
    if (infinite) {
      num = std::abs(cross(g, p - m));
    } else {
      const Vec2 h = p - apex;
      if (h.x == 0.0 && h.y == 0.0) continue;
      num = std::abs(cross(g, h));
      den = std::abs(dot(g, h));
    }
    if (!best) {
      best = j;
      best_num = num;
      best_den = den;
      continue;
    }
    const double lhs = num * best_den;
    const double rhs = best_num * den;
    if (lhs < rhs && rhs - lhs > 1e-12 * (lhs + rhs)) {
      best = j;
      best_num = num;
      best_den = den;
    }
  }
  if (!best) throw Error(Errc::NoCandidates, "no parameter vertex available for edge " + std::to_string(i));
  return *best;
}

bool parameter_admissible(std::size_t i, const ConvexLevelData& d, const HPoint& t_i, std::size_t j) {
  const std::size_t n = d.size();
  const std::size_t k = (i + 1) % n;
  const double s = d.orientation();
  const Vec2 a = d.affine(i);
  const Vec2 b = d.affine(k);
  const Vec2 q = d.affine(j);
  if (s * side_sine(a, b, q) <= tol::collinear) return false;
  const HPoint t = normalize(t_i);
  if (t.w != 0.0 && s * side_sine(a, b, {t.x, t.y}) >= -tol::collinear) return false;
  return same_side(d.tangents[i], b, q) && same_side(d.tangents[k], a, q);
}

bool inside_tangent_triangle(std::size_t i, const ConvexLevelData& d, const HPoint& t_i, const HPoint& u) {
  const HPoint un = normalize(u);
  if (un.w == 0.0) return false;
  const std::size_t k = (i + 1) % d.size();
  const Vec2 a = d.affine(i);
  const Vec2 b = d.affine(k);
  const Vec2 p{un.x, un.y};
  if (d.orientation() * side_sine(a, b, p) >= 0.0) return false;
  const HPoint t = normalize(t_i);
  if (t.w != 0.0 && d.orientation() * side_sine(a, b, {t.x, t.y}) >= 0.0) return false;
  return same_side(d.tangents[i], b, p) && same_side(d.tangents[k], a, p);
}

InsertionEvent harmonic_edge_insertion(std::size_t i, const ConvexLevelData& d, const HPoint& t_i, std::size_t j) {
  const std::size_t k = (i + 1) % d.size();
  if (j == i || j == k) throw Error(Errc::ParameterOutsideRegion, "parameter vertex is an edge corner");
  if (!parameter_admissible(i, d, t_i, j))
    throw Error(Errc::ParameterOutsideRegion,
                "parameter vertex " + std::to_string(j) + " outside the admissible region of edge " + std::to_string(i));

  const HLine edge_line = join(d.vertices[i], d.vertices[k]);
  const HLine pencil_line = join(d.vertices[j], t_i);
  const HPoint x = normalize(meet(edge_line, pencil_line));
  const HPoint u = harmonic_insert(x, t_i, d.vertices[j]);
  if (!inside_tangent_triangle(i, d, t_i, u))
    throw Error(Errc::ContainmentViolation, "inserted point leaves the tangent triangle of edge " + std::to_string(i));

  InsertionEvent ev;
  ev.rule = InsertionRule::Harmonic;
  ev.point = u;
  ev.parameter = j;
  ev.x = x;
  ev.cross_ratio = cross_ratio(u, d.vertices[j], x, t_i);
  return ev;
}

HPoint insert_edge_point(std::size_t i, const ConvexLevelData& d, const HPoint& t_i, std::size_t j) {
  return harmonic_edge_insertion(i, d, t_i, j).point;
}

InsertionEvent standard_insertion(std::size_t i, const ConvexLevelData& d, const HPoint& t_i, Strictness strictness) {
  auto fallback = [&](const Error& e) {
    InsertionEvent ev;
    ev.rule = InsertionRule::Fallback;
    ev.point = HPoint::from_affine(midpoint(d.affine(i), d.affine((i + 1) % d.size())));
    ev.note = e.what();
    return ev;
  };
  try {
    const std::size_t j = select_parameter_index(i, d, t_i);
    return harmonic_edge_insertion(i, d, t_i, j);
  } catch (const Error& e) {
    if (e.code() == Errc::DegenerateFrame) return fallback(e);
    if (strictness == Strictness::Strict) throw;
    return fallback(e);
  }
}

ConvexLevelData refine_convex_level(const ConvexLevelData& d, const RefinementConfig& cfg) {
  if (d.size() < 5) throw Error(Errc::TooFewPoints, "convex refinement needs at least five vertices");
  const std::vector<HPoint> t = tangent_intersections(d);
  std::vector<Vec2> out;
  out.reserve(d.size() + d.edge_count());
  for (std::size_t i = 0; i < d.size(); ++i) {
    out.push_back(d.affine(i));
    if (i < d.edge_count()) out.push_back(standard_insertion(i, d, t[i], cfg.strictness).point.affine());
  }
  return ConvexLevelData::from_affine(out, d.topology);
}

}  // namespace conicsub
