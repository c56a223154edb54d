#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "conicsub/config.hpp"
#include "conicsub/projective.hpp"

namespace conicsub {

/// Vertices of a strictly convex (sub)polygon with one tangent per vertex.
struct ConvexLevelData {
  std::vector<HPoint> vertices;
  std::vector<HLine> tangents;
  Topology topology = Topology::Closed;

  static ConvexLevelData from_affine(std::span<const Vec2> pts, Topology topology);

  std::size_t size() const { return vertices.size(); }
  std::size_t edge_count() const;
  /// +1 for counter-clockwise turning, -1 for clockwise.
  int orientation() const;
  Vec2 affine(std::size_t i) const { return vertices[i].affine(); }

 private:
  mutable int orientation_cache_ = 0;
};

/// T_i = L_i ^ L_{i+1} for every edge; may lie at infinity. Throws
/// Errc::CoincidentTangents.
std::vector<HPoint> tangent_intersections(const ConvexLevelData& d);

/// Vertex j minimizing the angle between lines t_i m_i and t_i p_j (m_i the
/// edge midpoint), over all vertices other than the edge's two corners. Ties
/// go to the smallest offset (j - i) mod n. Throws Errc::NoCandidates.
std::size_t select_parameter_index(std::size_t i, const ConvexLevelData& d, const HPoint& t_i);

/// Whether p_j lies in the region bounded by L_i, L_{i+1} and the edge line
/// on the polygon's side, and t_i (if finite) lies outside the edge.
bool parameter_admissible(std::size_t i, const ConvexLevelData& d, const HPoint& t_i, std::size_t j);

/// Whether a point lies strictly inside the tangent triangle of edge i.
bool inside_tangent_triangle(std::size_t i, const ConvexLevelData& d, const HPoint& t_i, const HPoint& u);

enum class InsertionRule {
  Harmonic,
  EndpointRule,
  StraightMidpoint,
  SmallSegmentMidpoint,
  Fallback,
};

const char* to_string(InsertionRule rule);

struct InsertionEvent {
  InsertionRule rule = InsertionRule::Harmonic;
  HPoint point;
  /// Harmonic rule only: parameter vertex, X_i, and the measured cr(U, P, X, T).
  std::optional<std::size_t> parameter;
  std::optional<HPoint> x;
  std::optional<double> cross_ratio;
  std::string note;
};

/// Harmonic insertion on edge i with parameter vertex j:
///   N = P_i ^ P_{i+1},  Lambda = P_j ^ T_i,  X = N ^ Lambda,  U = D1*X - D2*T.
/// Throws Errc::ParameterOutsideRegion, Errc::DegenerateFrame and
/// Errc::ContainmentViolation.
InsertionEvent harmonic_edge_insertion(std::size_t i, const ConvexLevelData& d, const HPoint& t_i, std::size_t j);

HPoint insert_edge_point(std::size_t i, const ConvexLevelData& d, const HPoint& t_i, std::size_t j);

/// The standard rule for one edge, including the fallback policy: a
/// degenerate harmonic frame always falls back to the edge midpoint; region
/// and containment failures throw in strict mode and fall back otherwise.
InsertionEvent standard_insertion(std::size_t i, const ConvexLevelData& d, const HPoint& t_i, Strictness strictness);

/// One full refinement step of a totally convex polygon. Old vertices keep
/// even positions; the tangent field of the result is re-estimated.
ConvexLevelData refine_convex_level(const ConvexLevelData& d, const RefinementConfig& cfg);

}  // namespace conicsub
