#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "conicsub/polyline.hpp"
#include "conicsub/projective.hpp"
#include "conicsub/tangent.hpp"

namespace conicsub {

struct CurvatureSample {
  std::size_t index = 0;
  Vec2 position;
  /// Signed inverse circumradius; positive for counter-clockwise turning.
  double curvature = 0.0;
  /// Unit left normal of the chord p_{i-1} p_{i+1}.
  Vec2 normal;
  /// Coincident neighbours; curvature is reported as 0.
  bool degenerate = false;
};

/// Menger curvature at every interior vertex (every vertex when closed).
std::vector<CurvatureSample> discrete_curvature(const Polyline& poly);

struct ConvexitySignature {
  /// -1, 0, +1 turning sign per interior vertex (every vertex when closed).
  std::vector<int> signs;
  /// Sign alternations between consecutive non-zero signs.
  std::size_t inflections = 0;
};

/// Turns whose sine is at most `tol` count as 0.
ConvexitySignature convexity_signature(const Polyline& poly, double tol = 1e-10);

/// Largest first-order distance |Q| / |grad Q| over the points. Throws
/// Errc::GradientVanishes.
double conic_residual(std::span<const Vec2> points, const ConicCoefficients& c);

/// d^k: largest distance of a newly inserted vertex of `next` from the edge
/// joining its two neighbours, which must be old vertices of `prev` in order.
/// Throws Errc::ProvenanceMismatch.
double displacement_metrics(const Polyline& prev, const Polyline& next, std::span<const char> inserted);

/// Largest angle between the tangent of an old vertex before and after a
/// refinement step; vertex_map[i] is the new index of old vertex i.
double tangent_turning(const TangentField& prev, const TangentField& next, std::span<const std::size_t> vertex_map);

/// Comb segments (base, tip) with tip = base - scale * curvature * normal, so
/// the comb sits outside a counter-clockwise convex curve. A non-positive
/// scale selects 0.1 * diagonal / max |curvature|.
std::vector<std::pair<Vec2, Vec2>> curvature_comb(const Polyline& poly, double scale = 0.0);

}  // namespace conicsub
