#pragma once

#include <array>
#include <span>
#include <vector>

#include "conicsub/polyline.hpp"
#include "conicsub/projective.hpp"

namespace conicsub {

/// Five points around a vertex; q[2] is the vertex whose tangent is sought.
/// The other four may be in any order for data sampled from a conic.
struct FivePointStencil {
  std::array<HPoint, 5> q;

  static FivePointStencil from_affine(const std::array<Vec2, 5>& pts);
};

/// Pascal-construction tangent at q[2]:
///   M33 = Q3 ^ (M15 ^ (A ^ B)),  A = M12 ^ M34,  B = M54 ^ M32,  Mij = Qi ^ Qj.
/// Exact for points on a conic, fourth order otherwise. Throws
/// Errc::DegenerateStencil when any intermediate wedge vanishes.
HLine estimate_tangent(const FivePointStencil& s);

/// Stencil for vertex i of a vertex sequence. Closed sequences wrap around;
/// open sequences use the first (last) five vertices near their ends.
FivePointStencil stencil_at(std::span<const Vec2> pts, std::size_t i, Topology topology);

/// One tangent line per vertex.
struct TangentField {
  std::vector<HLine> lines;

  std::size_t size() const { return lines.size(); }
  const HLine& operator[](std::size_t i) const { return lines[i]; }
};

/// Tangents for every vertex of `range`. A closed polyline whose range covers
/// all vertices is treated cyclically; any other range is an open sequence.
/// Throws Errc::TooFewPoints below five vertices.
TangentField build_tangent_field(const Polyline& poly, IndexRange range);
TangentField build_tangent_field(std::span<const Vec2> pts, Topology topology);

/// a*x^2 + b*xy + c*y^2 + d*x + e*y + f = 0, unit Euclidean coefficient norm.
struct ConicCoefficients {
  std::array<double, 6> c{};

  double eval(Vec2 p) const;
  Vec2 gradient(Vec2 p) const;
  /// Value normalized by the gradient norm, i.e. first-order distance.
  double geometric_residual(Vec2 p) const;
};

/// Conic through five points (null vector of the 5x6 incidence matrix).
/// Throws Errc::DegenerateConfiguration when the conic is not unique.
ConicCoefficients conic_through_five(const std::array<HPoint, 5>& points);

/// Polar line of an on-conic point, i.e. its tangent. Throws
/// Errc::PointNotOnConic when the point is farther than 1e-8 from the conic.
HLine conic_tangent_at(const ConicCoefficients& conic, const HPoint& p);

}  // namespace conicsub
