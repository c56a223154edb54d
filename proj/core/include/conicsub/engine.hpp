#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "conicsub/config.hpp"
#include "conicsub/convex.hpp"
#include "conicsub/junction.hpp"
#include "conicsub/segmentation.hpp"
#include "conicsub/tangent.hpp"

namespace conicsub {

struct VertexTag {
  /// Level at which the vertex first appeared; 0 for the segmented input.
  int level = 0;
  InsertionRule rule = InsertionRule::Harmonic;
  bool original = true;
};

/// One new vertex: the edge it subdivides (by its first vertex, in the
/// source level) and how it was produced.
struct EdgeEvent {
  std::size_t edge = 0;
  InsertionEvent event;
};

struct LevelDiagnostics {
  /// Source level of the step; the entry describes the step k -> k + 1.
  int k = 0;
  std::size_t n_points = 0;
  double d_k = 0.0;
  double max_tangent_turn = 0.0;
  double min_edge = 0.0;
  double max_edge = 0.0;
  std::size_t inflection_count = 0;
  std::size_t fallbacks = 0;
  std::size_t harmonic = 0;
  std::size_t endpoint = 0;
  std::size_t midpoints = 0;
  /// Largest |cr(U, P, X, T) + 1| over the step's harmonic insertions.
  double max_cross_ratio_error = 0.0;
};

struct DiagnosticsReport {
  std::vector<LevelDiagnostics> levels;
  std::vector<std::string> warnings;
  /// Inflection count of the segmented level-0 polyline.
  std::size_t initial_inflections = 0;
};

struct RefinementState {
  int level = 0;
  Polyline poly;
  SegmentStructure structure;
  /// Tangents of the current level, in working coordinates.
  TangentField tangents;
  /// Keyed by the junction's index in the segmented level-0 polyline.
  std::map<std::size_t, JunctionState> junctions;
  std::vector<VertexTag> provenance;
  /// Insertions of the step that produced this level.
  std::vector<EdgeEvent> events;
  /// New index of every vertex of the previous level.
  std::vector<std::size_t> vertex_map;
  std::vector<std::string> warnings;
  std::size_t fallbacks = 0;

  /// Working coordinates are (p - origin) / scale, fixed at level 0.
  Vec2 origin;
  double scale = 1.0;
  double diag0 = 0.0;
};

/// Segments the input and estimates the level-0 tangents.
RefinementState initial_state(const Polyline& poly, const RefinementConfig& cfg);

/// One refinement step. In adaptive mode only edges longer than
/// cfg.edge_threshold times the level-0 diagonal are split.
RefinementState refine_once(const RefinementState& st, const RefinementConfig& cfg);
RefinementState refine_adaptive_once(const RefinementState& st, const RefinementConfig& cfg);

LevelDiagnostics measure_step(const RefinementState& prev, const RefinementState& next);

/// cfg.levels refinement steps after segmentation.
std::pair<Polyline, DiagnosticsReport> subdivide(const Polyline& poly, const RefinementConfig& cfg);

}  // namespace conicsub
