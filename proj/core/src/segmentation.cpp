#include "conicsub/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "conicsub/error.hpp"
#include "conicsub/projective.hpp"

namespace conicsub {
namespace {

/// Signed perpendicular offset of q from the directed line a -> b.
double offset(Vec2 a, Vec2 b, Vec2 q) {
  const double len = distance(a, b);
  return len == 0.0 ? distance(a, q) : cross(b - a, q - a) / len;
}

int side(Vec2 a, Vec2 b, Vec2 q, double eps) {
  const double d = offset(a, b, q);
  return d > eps ? 1 : (d < -eps ? -1 : 0);
}

bool chord_collinear(const Polyline& poly, std::size_t first, std::size_t last, double eps) {
  const Vec2 a = poly[first % poly.size()];
  const Vec2 b = poly[last % poly.size()];
  if (a == b) return false;
  for (std::size_t k = first + 1; k < last; ++k) {
    if (std::abs(offset(a, b, poly[k % poly.size()])) > eps) return false;
  }
  return true;
}

/// A three-vertex run whose outer neighbours straddle its line is an
/// inflection vertex that was inserted earlier, not a straight feature.
bool is_inflection_triple(const Polyline& poly, IndexRange run, double eps) {
  const std::size_t n = poly.size();
  if (run.count() != 3) return false;
  if (poly.closed()) {
    if (n < 5) return false;
  } else if (run.first == 0 || run.last + 1 >= n) {
    return false;
  }
  const Vec2 a = poly[run.first % n];
  const Vec2 b = poly[run.last % n];
  const Vec2 before = poly.wrapped(static_cast<std::ptrdiff_t>(run.first) - 1);
  const Vec2 after = poly[(run.last + 1) % n];
  return side(a, b, before, eps) * side(a, b, after, eps) < 0;
}

}  // namespace

const char* to_string(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::StraightLine: return "straight-line";
    case SegmentKind::TotallyConvex: return "totally-convex";
  }
  return "unknown";
}

const char* to_string(JunctionKind kind) {
  switch (kind) {
    case JunctionKind::InflectionPoint: return "inflection";
    case JunctionKind::ConvexJunction: return "convex";
    case JunctionKind::StraightLineJunction: return "straight-line";
    case JunctionKind::SequenceEnd: return "sequence-end";
  }
  return "unknown";
}

std::vector<IndexRange> detect_collinear_runs(const Polyline& poly, double tol) {
  const std::size_t n = poly.size();
  std::vector<IndexRange> runs;
  if (n < 3) return runs;
  const double eps = tol * bounding_box(poly.points).diagonal();

  std::size_t start = 0;
  std::size_t stop = n - 1;
  if (poly.closed()) {
    // Begin the scan at a corner so no run is cut by the index origin.
    std::size_t s = 0;
    while (s < n && std::abs(offset(poly.wrapped(static_cast<std::ptrdiff_t>(s) - 1), poly[(s + 1) % n], poly[s])) <= eps) ++s;
    if (s == n) return {IndexRange{0, n}};
    start = s;
    stop = s + n;
  }

  std::size_t i = start;
  while (i + 2 <= stop) {
    std::size_t j = i + 1;
    while (j + 1 <= stop && chord_collinear(poly, i, j + 1, eps)) ++j;
    if (j - i >= 2) {
      const std::size_t first = i % n;
      runs.push_back({first, first + (j - i)});
      i = j;
    } else {
      ++i;
    }
  }
  std::sort(runs.begin(), runs.end(), [](IndexRange a, IndexRange b) { return a.first < b.first; });
  return runs;
}

std::vector<std::size_t> detect_inflection_edges(const Polyline& poly, double tol) {
  const std::size_t n = poly.size();
  std::vector<std::size_t> edges;
  if (n < 4) return edges;
  const double eps = tol * bounding_box(poly.points).diagonal();
  const std::size_t first = poly.closed() ? 0 : 1;
  const std::size_t last = poly.closed() ? n : n - 2;
  for (std::size_t i = first; i < last; ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % n];
    const Vec2 before = poly.wrapped(static_cast<std::ptrdiff_t>(i) - 1);
    const Vec2 after = poly[(i + 2) % n];
    if (side(a, b, before, eps) * side(a, b, after, eps) < 0) edges.push_back(i);
  }
  return edges;
}

bool is_totally_convex(const Polyline& poly, IndexRange range) {
  std::vector<Vec2> pts = gather(poly, range);
  const bool cycle = poly.closed() && range.count() == poly.size();
  if (cycle) pts.push_back(pts.front());
  if (pts.size() < 3) return true;
  const double eps = tol::collinear * bounding_box(pts).diagonal();
  for (std::size_t e = 0; e + 1 < pts.size(); ++e) {
    int seen = 0;
    for (const Vec2& q : pts) {
      const int s = side(pts[e], pts[e + 1], q, eps);
      if (s == 0) continue;
      if (seen == 0) seen = s;
      else if (s != seen) return false;
    }
  }
  return true;
}

std::vector<IndexRange> split_until_convex(const Polyline& poly, IndexRange range, Strictness strictness) {
  if (range.count() <= 3 || is_totally_convex(poly, range)) return {range};
  const std::size_t mid = range.first + range.count() / 2;
  const IndexRange left{range.first, mid};
  const IndexRange right{mid, range.last};
  if (strictness == Strictness::Strict && (left.count() < 5 || right.count() < 5))
    throw Error(Errc::UnsplittableSegment, "locally convex piece [" + std::to_string(range.first) + ", " +
                                               std::to_string(range.last) + "] cannot be split into pieces of five vertices");
  std::vector<IndexRange> out = split_until_convex(poly, left, strictness);
  std::vector<IndexRange> tail = split_until_convex(poly, right, strictness);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

SegmentedPolyline segment_polyline(const Polyline& poly, const RefinementConfig& cfg) {
  const std::size_t n = poly.size();
  if (n < 3) throw Error(Errc::TooFewPoints, "segmentation needs at least three vertices");
  const bool closed = poly.closed();
  const double eps = cfg.collinearity_tol * bounding_box(poly.points).diagonal();

  // 1. Straight runs; three-vertex runs straddled by their neighbours are
  //    existing inflection vertices.
  std::vector<char> on_run(n, 0);
  std::vector<IndexRange> runs;
  std::vector<std::size_t> known_inflections;
  for (const IndexRange& r : detect_collinear_runs(poly, cfg.collinearity_tol)) {
    if (is_inflection_triple(poly, r, eps)) {
      known_inflections.push_back((r.first + 1) % n);
      continue;
    }
    runs.push_back(r);
    for (std::size_t k = r.first; k <= r.last; ++k) on_run[k % n] = 1;
  }

  // 2. Inflection edges away from straight runs get a midpoint.
  std::vector<char> split_edge(n, 0);
  for (std::size_t i : detect_inflection_edges(poly, cfg.collinearity_tol)) {
    if (!on_run[i] && !on_run[(i + 1) % n]) split_edge[i] = 1;
  }

  SegmentedPolyline out;
  out.poly.topology = poly.topology;
  std::vector<std::size_t> new_index(n);
  std::vector<std::size_t> inflections;
  for (std::size_t i = 0; i < n; ++i) {
    new_index[i] = out.poly.points.size();
    out.poly.points.push_back(poly[i]);
    if (split_edge[i]) {
      inflections.push_back(out.poly.points.size());
      out.poly.points.push_back(midpoint(poly[i], poly[(i + 1) % n]));
    }
  }
  for (std::size_t v : known_inflections) inflections.push_back(new_index[v]);
  const std::size_t m = out.poly.size();
  const Polyline& aug = out.poly;
  SegmentStructure& st = out.structure;

  std::map<std::size_t, IndexRange> run_at;
  for (const IndexRange& r : runs) {
    const std::size_t a = new_index[r.first % n];
    run_at[a] = {a, a + (r.last - r.first)};
    st.junctions[a] = JunctionKind::StraightLineJunction;
    st.junctions[(a + (r.last - r.first)) % m] = JunctionKind::StraightLineJunction;
  }
  for (std::size_t v : inflections) st.junctions.emplace(v, JunctionKind::InflectionPoint);
  if (!closed) {
    st.junctions[0] = JunctionKind::SequenceEnd;
    st.junctions[m - 1] = JunctionKind::SequenceEnd;
  }

  auto add_convex_piece = [&](IndexRange piece) {
    const auto subs = split_until_convex(aug, piece, cfg.strictness);
    for (std::size_t s = 0; s < subs.size(); ++s) {
      if (s > 0) st.junctions[subs[s].first % m] = JunctionKind::ConvexJunction;
      Segment seg{SegmentKind::TotallyConvex, subs[s], false};
      if (seg.range.count() < 5) {
        if (cfg.strict())
          throw Error(Errc::TooFewPoints, "convex piece [" + std::to_string(seg.range.first) + ", " +
                                              std::to_string(seg.range.last) + "] has fewer than five vertices");
        seg.undersampled = true;
        st.warnings.push_back("convex piece [" + std::to_string(seg.range.first) + ", " +
                              std::to_string(seg.range.last) + "] has fewer than five vertices; refined by midpoints");
      }
      st.segments.push_back(seg);
    }
  };

  // 3. Pieces between consecutive junctions; convex pieces are split further.
  std::vector<std::size_t> breaks;
  for (const auto& [v, kind] : st.junctions) breaks.push_back(v);
  if (breaks.empty()) {
    const IndexRange whole{0, m};
    if (is_totally_convex(aug, {0, m - 1})) {
      st.cyclic = true;
      Segment seg{SegmentKind::TotallyConvex, whole, false};
      if (m < 5) {
        if (cfg.strict()) throw Error(Errc::TooFewPoints, "closed convex polygon needs at least five vertices");
        seg.undersampled = true;
        st.warnings.push_back("closed convex polygon has fewer than five vertices; refined by midpoints");
      }
      st.segments.push_back(seg);
    } else {
      st.junctions[0] = JunctionKind::ConvexJunction;
      add_convex_piece(whole);
    }
  } else {
    const std::size_t pieces = closed ? breaks.size() : breaks.size() - 1;
    for (std::size_t k = 0; k < pieces; ++k) {
      const std::size_t u = breaks[k];
      const std::size_t v = k + 1 < breaks.size() ? breaks[k + 1] : breaks.front() + m;
      const IndexRange piece{u, v};
      if (auto it = run_at.find(u); it != run_at.end() && it->second.last == v) {
        st.segments.push_back({SegmentKind::StraightLine, piece, false});
      } else if (v - u == 1) {
        st.segments.push_back({SegmentKind::StraightLine, piece, false});
      } else {
        add_convex_piece(piece);
      }
    }
  }

  // 4. Convex junctions must see both neighbouring edge intersections on
  //    the junction's side of the chord p_{i-1} p_{i+1}.
  for (const auto& [c, kind] : st.junctions) {
    if (kind != JunctionKind::ConvexJunction) continue;
    if (!closed && (c < 2 || c + 2 >= m)) continue;
    const auto at = [&](std::ptrdiff_t k) { return HPoint::from_affine(aug.wrapped(static_cast<std::ptrdiff_t>(c) + k)); };
    bool ok = true;
    try {
      const HLine chord = join(at(-1), at(1));
      const double ref = chord.eval(at(0));
      for (const HPoint& q : {normalize(meet(join(at(-2), at(-1)), join(at(0), at(1)))),
                              normalize(meet(join(at(-1), at(0)), join(at(1), at(2))))}) {
        if (q.w == 0.0 || chord.eval(q) * ref <= 0.0) ok = false;
      }
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) {
      const std::string msg = "convex junction " + std::to_string(c) + " violates the edge-intersection condition";
      if (cfg.strict()) throw Error(Errc::JunctionCondition, msg);
      st.warnings.push_back(msg);
    }
  }
  return out;
}

}  // namespace conicsub
