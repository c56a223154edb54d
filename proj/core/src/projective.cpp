#include "conicsub/projective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "conicsub/error.hpp"

namespace conicsub {
namespace {

using Vec3 = std::array<double, 3>;

Vec3 as_vec(const HPoint& p) { return {p.w, p.x, p.y}; }
Vec3 as_vec(const HLine& l) { return {l.l0, l.l1, l.l2}; }

Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm3(const Vec3& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

double max_abs(const Vec3& a) {
  return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}

Vec3 scaled_to_unit_max(const Vec3& a) {
  const double m = max_abs(a);
  if (m == 0.0) throw Error(Errc::ZeroVector, "homogeneous triple is zero");
  return {a[0] / m, a[1] / m, a[2] / m};
}

double det3(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 bc = cross3(b, c);
  return a[0] * bc[0] + a[1] * bc[1] + a[2] * bc[2];
}

/// True when the wedge of a and b is negligible relative to their magnitudes.
bool wedge_vanishes(const Vec3& a, const Vec3& b, const Vec3& w) {
  return norm3(w) <= tol::zero * norm3(a) * norm3(b);
}

constexpr std::array<std::array<int, 2>, 3> kMinors{{{0, 1}, {0, 2}, {1, 2}}};

double minor_det(const Vec3& a, const Vec3& b, const std::array<int, 2>& rows) {
  return a[rows[0]] * b[rows[1]] - a[rows[1]] * b[rows[0]];
}

/// Coefficients (s, t) with v ~ s*a + t*b, solved on the best-conditioned minor.
std::array<double, 2> frame_coordinates(const Vec3& v, const Vec3& a, const Vec3& b) {
  std::array<int, 2> best = kMinors[0];
  double best_det = 0.0;
  for (const auto& rows : kMinors) {
    const double d = minor_det(a, b, rows);
    if (std::abs(d) > std::abs(best_det)) {
      best_det = d;
      best = rows;
    }
  }
  if (std::abs(best_det) <= tol::zero * norm3(a) * norm3(b))
    throw Error(Errc::DegenerateFrame, "frame points coincide");
  return {minor_det(v, b, best) / best_det, minor_det(a, v, best) / best_det};
}

}  // namespace

bool HPoint::at_infinity() const {
  const double m = max_abs(as_vec(*this));
  return std::abs(w) <= tol::zero * m;
}

Vec2 HPoint::affine() const {
  if (at_infinity()) throw Error(Errc::ZeroVector, "point at infinity has no affine coordinates");
  return {x / w, y / w};
}

Vec2 HLine::direction() const {
  const double n = std::hypot(l1, l2);
  if (n == 0.0) throw Error(Errc::ZeroVector, "line at infinity has no direction");
  return {-l2 / n, l1 / n};
}

HLine join(const HPoint& p, const HPoint& q) {
  const Vec3 a = as_vec(p);
  const Vec3 b = as_vec(q);
  const Vec3 l = cross3(a, b);
  if (wedge_vanishes(a, b, l)) throw Error(Errc::CoincidentPoints, "cannot join coincident points");
  return {l[0], l[1], l[2]};
}

HPoint meet(const HLine& a, const HLine& b) {
  const Vec3 u = as_vec(a);
  const Vec3 v = as_vec(b);
  const Vec3 p = cross3(u, v);
  if (wedge_vanishes(u, v, p)) throw Error(Errc::CoincidentLines, "cannot meet coincident lines");
  return {p[0], p[1], p[2]};
}

HPoint normalize(const HPoint& p) {
  const double m = max_abs(as_vec(p));
  if (m == 0.0) throw Error(Errc::ZeroVector, "homogeneous point is zero");
  if (std::abs(p.w) <= tol::zero * m) {
    const double n = std::hypot(p.x, p.y);
    // Already unit: keep it bit-identical so normalization is idempotent.
    if (p.w == 0.0 && std::abs(n - 1.0) <= 4 * std::numeric_limits<double>::epsilon()) return p;
    return {0.0, p.x / n, p.y / n};
  }
  if (p.w == 1.0) return p;
  return {1.0, p.x / p.w, p.y / p.w};
}

HLine oriented(const HLine& l) {
  const double n = std::hypot(l.l1, l.l2);
  if (n <= tol::zero * std::abs(l.l0) || n == 0.0)
    throw Error(Errc::ZeroVector, "line at infinity has no normal");
  return {l.l0 / n, l.l1 / n, l.l2 / n};
}

bool projectively_equal(const HPoint& a, const HPoint& b, double tolerance) {
  const Vec3 u = scaled_to_unit_max(as_vec(a));
  const Vec3 v = scaled_to_unit_max(as_vec(b));
  return norm3(cross3(u, v)) <= tolerance * norm3(u) * norm3(v);
}

bool projectively_equal(const HLine& a, const HLine& b, double tolerance) {
  const Vec3 u = scaled_to_unit_max(as_vec(a));
  const Vec3 v = scaled_to_unit_max(as_vec(b));
  return norm3(cross3(u, v)) <= tolerance * norm3(u) * norm3(v);
}

double incidence_error(const HLine& l, const HPoint& p) {
  const HLine o = oriented(l);
  const HPoint q = normalize(p);
  return std::abs(o.eval(q));
}

double signed_distance(const HLine& l, Vec2 p) {
  const HLine o = oriented(l);
  return o.l0 + o.l1 * p.x + o.l2 * p.y;
}

double direction_angle(Vec2 a, Vec2 b) {
  return std::atan2(std::abs(cross(a, b)), std::abs(dot(a, b)));
}

double line_angle(const HLine& a, const HLine& b) { return direction_angle(a.normal(), b.normal()); }

double cross_ratio(const HPoint& x, const HPoint& e, const HPoint& e0, const HPoint& e1) {
  const Vec3 vx = scaled_to_unit_max(as_vec(x));
  const Vec3 ve = scaled_to_unit_max(as_vec(e));
  const Vec3 v0 = scaled_to_unit_max(as_vec(e0));
  const Vec3 v1 = scaled_to_unit_max(as_vec(e1));

  if (wedge_vanishes(v0, v1, cross3(v0, v1)) || wedge_vanishes(ve, v0, cross3(ve, v0)) ||
      wedge_vanishes(ve, v1, cross3(ve, v1)))
    throw Error(Errc::DegenerateFrame, "frame points E, E0, E1 must be mutually distinct");

  const double scale = norm3(v0) * norm3(v1);
  if (std::abs(det3(vx, v0, v1)) > tol::collinear * norm3(vx) * scale ||
      std::abs(det3(ve, v0, v1)) > tol::collinear * norm3(ve) * scale)
    throw Error(Errc::NotCollinear, "cross ratio needs four collinear points");

  // E = a*E0 + b*E1 fixes the representatives of the frame; X = s*E0 + t*E1.
  const auto [a, b] = frame_coordinates(ve, v0, v1);
  const auto [s, t] = frame_coordinates(vx, v0, v1);
  const double x0 = s / a;
  const double x1 = t / b;
  if (x0 == 0.0) return x1 >= 0.0 ? std::numeric_limits<double>::infinity()
                                   : -std::numeric_limits<double>::infinity();
  return x1 / x0;
}

HarmonicFrame harmonic_frame(const HPoint& x, const HPoint& t, const HPoint& p_ref) {
  const Vec3 vx = scaled_to_unit_max(as_vec(x));
  const Vec3 vt = scaled_to_unit_max(as_vec(t));
  const Vec3 vp = scaled_to_unit_max(as_vec(p_ref));

  HarmonicFrame frame;
  for (const auto& rows : kMinors) {
    const double d = minor_det(vx, vt, rows);
    if (std::abs(d) > std::abs(frame.d)) {
      frame.d = d;
      frame.minor = rows;
    }
  }
  if (std::abs(frame.d) <= tol::zero * norm3(vx) * norm3(vt))
    throw Error(Errc::DegenerateFrame, "harmonic frame points X and T coincide");
  frame.d1 = minor_det(vp, vt, frame.minor);
  frame.d2 = minor_det(vx, vp, frame.minor);
  return frame;
}

HPoint harmonic_insert(const HPoint& x, const HPoint& t, const HPoint& p_ref) {
  const HarmonicFrame f = harmonic_frame(x, t, p_ref);
  const Vec3 vx = scaled_to_unit_max(as_vec(x));
  const Vec3 vt = scaled_to_unit_max(as_vec(t));
  const HPoint u{f.d1 * vx[0] - f.d2 * vt[0], f.d1 * vx[1] - f.d2 * vt[1],
                 f.d1 * vx[2] - f.d2 * vt[2]};
  return normalize(u);
}

}  // namespace conicsub
