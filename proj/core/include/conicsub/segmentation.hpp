#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "conicsub/config.hpp"
#include "conicsub/polyline.hpp"

namespace conicsub {

enum class SegmentKind { StraightLine, TotallyConvex };
enum class JunctionKind { InflectionPoint, ConvexJunction, StraightLineJunction, SequenceEnd };

const char* to_string(SegmentKind kind);
const char* to_string(JunctionKind kind);

struct Segment {
  SegmentKind kind = SegmentKind::TotallyConvex;
  /// Vertex range; consecutive segments share their end vertices. A closed
  /// polyline without junctions is one segment [0, n] whose ends coincide.
  IndexRange range;
  /// Lenient mode only: a convex piece with fewer than five vertices.
  bool undersampled = false;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct SegmentStructure {
  std::vector<Segment> segments;
  std::map<std::size_t, JunctionKind> junctions;
  std::vector<std::string> warnings;

  /// Closed polyline that is a single junction-free convex cycle.
  bool cyclic = false;

  friend bool operator==(const SegmentStructure&, const SegmentStructure&) = default;
};

/// Maximal runs of at least three consecutive vertices within tol * bounding
/// box diagonal of their end-point chord. Closed polylines may produce runs
/// that wrap past the last vertex.
std::vector<IndexRange> detect_collinear_runs(const Polyline& poly, double tol);

/// Edges (i, i+1) whose outer neighbours p_{i-1}, p_{i+2} lie strictly on
/// opposite sides of the edge line. Offsets within tol * diagonal count as
/// on the line.
std::vector<std::size_t> detect_inflection_edges(const Polyline& poly, double tol = 1e-9);

/// Every range vertex lies on, or on one common side of, every range edge.
/// A closed polyline range covering all vertices includes the closing edge.
bool is_totally_convex(const Polyline& poly, IndexRange range);

/// Recursive bisection at first + floor(count / 2) until every piece is
/// totally convex. Strict mode throws Errc::UnsplittableSegment when a piece
/// would drop below five vertices.
std::vector<IndexRange> split_until_convex(const Polyline& poly, IndexRange range,
                                           Strictness strictness = Strictness::Strict);

struct SegmentedPolyline {
  Polyline poly;
  SegmentStructure structure;
};

/// Collinear runs first, then inflection edges (a midpoint is inserted on each
/// and becomes an inflection point), then convex splitting.
SegmentedPolyline segment_polyline(const Polyline& poly, const RefinementConfig& cfg);

}  // namespace conicsub
