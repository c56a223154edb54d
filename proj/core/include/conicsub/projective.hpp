#pragma once

#include <array>

#include "conicsub/polyline.hpp"

namespace conicsub {

/// Scale-relative thresholds. Point data is expected to be scaled to a unit
/// bounding box before any of these apply (the engine does this itself).
namespace tol {
/// Relative magnitude below which a wedge product counts as zero.
inline constexpr double zero = 1e-12;
/// Collinearity threshold for determinant tests on unit-scaled triples.
inline constexpr double collinear = 1e-9;
/// Projective equality and incidence threshold.
inline constexpr double proj = 1e-9;
}  // namespace tol

/// Homogeneous point (w, x, y). The affine point is (x/w, y/w); w == 0 is a
/// point at infinity in direction (x, y).
struct HPoint {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;

  static constexpr HPoint from_affine(Vec2 p) { return {1.0, p.x, p.y}; }
  static constexpr HPoint at_infinity(Vec2 dir) { return {0.0, dir.x, dir.y}; }

  /// True when |w| is negligible relative to the largest component.
  bool at_infinity() const;
  /// Affine coordinates; throws Errc::ZeroVector for points at infinity.
  Vec2 affine() const;
  /// Direction (x, y) of a point at infinity, or of the position vector otherwise.
  Vec2 direction() const { return {x, y}; }

  friend constexpr bool operator==(HPoint, HPoint) = default;
};

/// Homogeneous line l0*w + l1*x + l2*y = 0.
struct HLine {
  double l0 = 0.0;
  double l1 = 0.0;
  double l2 = 1.0;

  Vec2 normal() const { return {l1, l2}; }
  /// Unit direction along the line.
  Vec2 direction() const;
  double eval(const HPoint& p) const { return l0 * p.w + l1 * p.x + l2 * p.y; }

  friend constexpr bool operator==(HLine, HLine) = default;
};

/// Line through two points. Throws Errc::CoincidentPoints.
HLine join(const HPoint& p, const HPoint& q);
/// Intersection of two lines; parallel lines meet at infinity. Throws
/// Errc::CoincidentLines.
HPoint meet(const HLine& a, const HLine& b);

/// Scales so that w == 1, or for points at infinity so that (x, y) has unit
/// norm. Throws Errc::ZeroVector.
HPoint normalize(const HPoint& p);
/// Scales so that (l1, l2) has unit norm. Throws Errc::ZeroVector for the
/// line at infinity.
HLine oriented(const HLine& l);

bool projectively_equal(const HPoint& a, const HPoint& b, double tolerance = tol::proj);
bool projectively_equal(const HLine& a, const HLine& b, double tolerance = tol::proj);

/// Euclidean distance of a finite point from the line; for a point at
/// infinity, the sine of the angle between its direction and the line.
double incidence_error(const HLine& l, const HPoint& p);

/// Signed distance of an affine point from the line, using the line's own
/// normal orientation.
double signed_distance(const HLine& l, Vec2 p);

/// Angle between two lines in [0, pi/2]; the smaller of the two
/// complementary angles.
double line_angle(const HLine& a, const HLine& b);
/// Same convention for two direction vectors.
double direction_angle(Vec2 a, Vec2 b);

/// Cross ratio cr(X, E, E0, E1) = x1/x0, where (x0, x1) are the coordinates of
/// X in the projective frame {E0, E1; E}. Throws Errc::NotCollinear and
/// Errc::DegenerateFrame. Returns +-infinity when X coincides with E1.
double cross_ratio(const HPoint& x, const HPoint& e, const HPoint& e0, const HPoint& e1);

/// Harmonic conjugate of `p_ref` with respect to the pair (x, t): the point U
/// with cr(U, p_ref, x, t) == -1, computed as U = D1*x - D2*t from the
/// determinants of the 2x2 minor with the largest |D|. Throws
/// Errc::DegenerateFrame.
HPoint harmonic_insert(const HPoint& x, const HPoint& t, const HPoint& p_ref);

/// Intermediate values of the harmonic construction, for diagnostics.
struct HarmonicFrame {
  double d = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  std::array<int, 2> minor{0, 1};
};
HarmonicFrame harmonic_frame(const HPoint& x, const HPoint& t, const HPoint& p_ref);

}  // namespace conicsub
