#pragma once

#include <cstddef>

#include "conicsub/projective.hpp"
#include "conicsub/segmentation.hpp"
#include "conicsub/tangent.hpp"

namespace conicsub {

/// Tangent bookkeeping for one inflection point or convex junction, carried
/// across refinement levels.
struct JunctionState {
  JunctionKind kind = JunctionKind::ConvexJunction;
  /// Current index of the junction vertex.
  std::size_t vertex = 0;
  HPoint anchor;
  /// Inflection only: line of the level-0 edge that received the inflection point.
  HLine e_i;
  HLine prev_tangent;
  bool has_tangent = false;
  double lambda = 0.5;
  double rho = 0.5;

  double mu() const { return 1.0 - lambda; }
  double sigma() const { return 1.0 - rho; }
};

/// lambda * a + (1 - lambda) * b on unit normals, with b's normal flipped to
/// agree with a's. The result passes through `anchor`. Throws
/// Errc::OppositeLines when the blend vanishes.
HLine blend_lines(const HLine& a, const HLine& b, double lambda, const HPoint& anchor);

/// Both stencils have the junction vertex at q[2]; `left` is built from the
/// five vertices ending at it and `right` from the five starting at it.
HLine inflection_tangent_initial(const FivePointStencil& left, const FivePointStencil& right, JunctionState& st);

/// Blends the previous tangent with whichever incident edge makes the larger
/// angle with e_i (ties go to the left edge).
HLine inflection_tangent_update(JunctionState& st, const HLine& left_edge, const HLine& right_edge);

/// Left and right estimates, each replaced by the adjacent edge line when it
/// separates p_prev from p_next, then blended.
HLine convex_junction_tangent(const FivePointStencil& left, const FivePointStencil& right, JunctionState& st,
                              const HPoint& p_prev, const HPoint& p_next);

/// rho * t + sigma * m for the first and last new point next to a junction.
/// Returns m when t lies at infinity.
HPoint endpoint_insert(const HPoint& t, const HPoint& m, const JunctionState& st);

}  // namespace conicsub
