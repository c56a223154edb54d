#include "conicsub/engine.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "conicsub/error.hpp"
#include "conicsub/metrics.hpp"

namespace conicsub {
namespace {

Vec2 to_work(const RefinementState& st, Vec2 p) { return {(p.x - st.origin.x) / st.scale, (p.y - st.origin.y) / st.scale}; }
Vec2 to_out(const RefinementState& st, Vec2 u) { return {st.origin.x + st.scale * u.x, st.origin.y + st.scale * u.y}; }

bool is_cyclic(const RefinementState& st, const Segment& seg) {
  return st.structure.cyclic && seg.range.count() == st.poly.size() + 1;
}

/// Vertex indices of a segment; a cyclic segment lists each vertex once.
std::vector<std::size_t> segment_indices(const RefinementState& st, const Segment& seg) {
  const std::size_t n = st.poly.size();
  const std::size_t count = is_cyclic(st, seg) ? n : seg.range.count();
  std::vector<std::size_t> idx(count);
  for (std::size_t k = 0; k < count; ++k) idx[k] = (seg.range.first + k) % n;
  return idx;
}

bool uses_state(JunctionKind kind) {
  return kind == JunctionKind::InflectionPoint || kind == JunctionKind::ConvexJunction;
}

class TangentBuilder {
 public:
  TangentBuilder(RefinementState& st, const RefinementConfig& cfg) : st_(st), cfg_(cfg) {
    work_.reserve(st.poly.size());
    for (const Vec2& p : st.poly.points) work_.push_back(to_work(st, p));
  }

  void run() {
    const std::size_t n = work_.size();
    field_.assign(n, HLine{});
    set_.assign(n, 0);
    junctions();
    for (const Segment& seg : st_.structure.segments) {
      if (seg.kind == SegmentKind::StraightLine) straight(seg);
    }
    for (const Segment& seg : st_.structure.segments) {
      if (seg.kind == SegmentKind::TotallyConvex) convex(seg);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!set_[i]) assign(i, chord(i));
    }
    st_.tangents.lines = std::move(field_);
  }

 private:
  HPoint at(std::ptrdiff_t i) const {
    const auto n = static_cast<std::ptrdiff_t>(work_.size());
    return HPoint::from_affine(work_[static_cast<std::size_t>(((i % n) + n) % n)]);
  }

  /// Line through the neighbours of vertex i, or the single incident edge at an open end.
  HLine chord(std::size_t i) const {
    const auto k = static_cast<std::ptrdiff_t>(i);
    if (!st_.poly.closed() && i == 0) return join(at(0), at(1));
    if (!st_.poly.closed() && i + 1 == work_.size()) return join(at(k - 1), at(k));
    return join(at(k - 1), at(k + 1));
  }

  void assign(std::size_t i, const HLine& l) {
    field_[i] = oriented(l);
    set_[i] = 1;
  }

  void fallback(const std::string& what) {
    ++st_.fallbacks;
    st_.warnings.push_back("level " + std::to_string(st_.level) + ": " + what);
  }

  std::optional<FivePointStencil> side_stencil(std::size_t v, bool left) const {
    const std::size_t n = work_.size();
    for (const Segment& seg : st_.structure.segments) {
      if (seg.kind != SegmentKind::TotallyConvex || seg.undersampled || seg.range.count() < 5) continue;
      const bool match = left ? seg.range.last % n == v : seg.range.first % n == v;
      if (!match) continue;
      std::array<Vec2, 5> pts;
      for (std::size_t k = 0; k < 5; ++k) {
        const std::size_t g = left ? seg.range.last - 4 + k : seg.range.first + k;
        pts[k] = work_[g % n];
      }
      const std::vector<Vec2> list(pts.begin(), pts.end());
      return stencil_at(list, left ? 4 : 0, Topology::Open);
    }
    return std::nullopt;
  }

  void junctions() {
    for (auto& [id, js] : st_.junctions) {
      const std::size_t v = js.vertex;
      const auto k = static_cast<std::ptrdiff_t>(v);
      js.anchor = at(k);
      const auto left = side_stencil(v, true);
      const auto right = side_stencil(v, false);
      try {
        if (!left || !right) throw Error(Errc::TooFewPoints, "junction " + std::to_string(v) + " lacks five vertices on a side");
        if (js.kind == JunctionKind::InflectionPoint) {
          if (!js.has_tangent) inflection_tangent_initial(*left, *right, js);
          else inflection_tangent_update(js, join(at(k - 1), at(k)), join(at(k), at(k + 1)));
        } else {
          convex_junction_tangent(*left, *right, js, at(k - 1), at(k + 1));
        }
      } catch (const Error& e) {
        if (cfg_.strict()) throw;
        fallback(std::string("junction tangent replaced by chord: ") + e.what());
        js.prev_tangent = oriented(chord(v));
        js.has_tangent = true;
      }
      assign(v, js.prev_tangent);
    }
  }

  void straight(const Segment& seg) {
    const auto idx = segment_indices(st_, seg);
    const HLine line = join(HPoint::from_affine(work_[idx.front()]), HPoint::from_affine(work_[idx.back()]));
    for (std::size_t g : idx) {
      if (!set_[g]) assign(g, line);
    }
  }

  void convex(const Segment& seg) {
    if (seg.undersampled) return;
    const auto idx = segment_indices(st_, seg);
    const Topology topo = is_cyclic(st_, seg) ? Topology::Closed : Topology::Open;
    std::vector<Vec2> pts;
    pts.reserve(idx.size());
    for (std::size_t g : idx) pts.push_back(work_[g]);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (set_[idx[k]]) continue;
      try {
        assign(idx[k], estimate_tangent(stencil_at(pts, k, topo)));
      } catch (const Error& e) {
        if (cfg_.strict()) throw;
        fallback(std::string("tangent replaced by chord: ") + e.what());
        assign(idx[k], chord(idx[k]));
      }
    }
  }

  RefinementState& st_;
  const RefinementConfig& cfg_;
  std::vector<Vec2> work_;
  std::vector<HLine> field_;
  std::vector<char> set_;
};

void prepare_tangents(RefinementState& st, const RefinementConfig& cfg) { TangentBuilder(st, cfg).run(); }

struct Insertion {
  Vec2 out;
  InsertionEvent event;
};

const JunctionState* junction_at(const RefinementState& st, std::size_t v) {
  if (auto it = st.structure.junctions.find(v); it == st.structure.junctions.end() || !uses_state(it->second))
    return nullptr;
  for (const auto& [id, js] : st.junctions)
    if (js.vertex == v) return &js;
  return nullptr;
}

RefinementState refine_step(const RefinementState& st, const RefinementConfig& cfg, bool adaptive) {
  const std::size_t n = st.poly.size();
  const std::size_t edges = st.poly.edge_count();
  const Polyline& P = st.poly;
  std::vector<std::optional<Insertion>> ins(edges);
  RefinementState next;
  next.origin = st.origin;
  next.scale = st.scale;
  next.diag0 = st.diag0;
  next.level = st.level + 1;

  const auto wanted = [&](std::size_t e) {
    return !adaptive || distance(P[e], P[(e + 1) % n]) > cfg.edge_threshold * st.diag0;
  };
  const auto midpoint_event = [&](std::size_t a, std::size_t b, InsertionRule rule) {
    InsertionEvent ev;
    ev.rule = rule;
    const Vec2 m = midpoint(P[a], P[b]);
    ev.point = HPoint::from_affine(to_work(st, m));
    return Insertion{m, ev};
  };

  for (const Segment& seg : st.structure.segments) {
    const auto idx = segment_indices(st, seg);
    const bool cyclic = is_cyclic(st, seg);
    const std::size_t m = idx.size();
    const std::size_t local_edges = cyclic ? m : m - 1;

    if (seg.kind == SegmentKind::StraightLine || seg.undersampled) {
      const InsertionRule rule =
          seg.kind == SegmentKind::StraightLine ? InsertionRule::StraightMidpoint : InsertionRule::SmallSegmentMidpoint;
      for (std::size_t e = 0; e < local_edges; ++e) {
        if (wanted(idx[e])) ins[idx[e]] = midpoint_event(idx[e], idx[(e + 1) % m], rule);
      }
      continue;
    }

    ConvexLevelData d;
    d.topology = cyclic ? Topology::Closed : Topology::Open;
    for (std::size_t g : idx) {
      d.vertices.push_back(HPoint::from_affine(to_work(st, P[g])));
      d.tangents.push_back(st.tangents[g]);
    }
    const JunctionState* start = cyclic ? nullptr : junction_at(st, idx.front());
    const JunctionState* end = cyclic ? nullptr : junction_at(st, idx.back());

    for (std::size_t e = 0; e < local_edges; ++e) {
      const std::size_t g = idx[e];
      if (!wanted(g)) continue;
      const Vec2 mid = midpoint(d.affine(e), d.affine((e + 1) % m));
      std::optional<HPoint> t;
      try {
        t = normalize(meet(d.tangents[e], d.tangents[(e + 1) % m]));
      } catch (const Error&) {
      }
      InsertionEvent ev;
      if (!t) {
        ev.rule = InsertionRule::Fallback;
        ev.point = HPoint::from_affine(mid);
        ev.note = "tangents at both ends of the edge coincide";
      } else if ((e == 0 && start) || (e + 1 == local_edges && end)) {
        ev.rule = InsertionRule::EndpointRule;
        ev.point = endpoint_insert(*t, HPoint::from_affine(mid), e == 0 ? *start : *end);
      } else {
        ev = standard_insertion(e, d, *t, cfg.strictness);
      }
      ins[g] = Insertion{to_out(st, ev.point.affine()), ev};
    }
  }

  next.poly.topology = P.topology;
  next.vertex_map.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    next.vertex_map[i] = next.poly.size();
    next.poly.points.push_back(P[i]);
    next.provenance.push_back(st.provenance[i]);
    if (i < edges && ins[i]) {
      const Insertion& x = *ins[i];
      next.poly.points.push_back(x.out);
      next.provenance.push_back({next.level, x.event.rule, false});
      if (x.event.rule == InsertionRule::Fallback) {
        ++next.fallbacks;
        next.warnings.push_back("level " + std::to_string(st.level) + ", edge " + std::to_string(i) +
                                ": midpoint fallback (" + x.event.note + ")");
      }
      next.events.push_back({i, x.event});
    }
  }

  for (const Segment& seg : st.structure.segments) {
    Segment s = seg;
    std::size_t added = 0;
    for (std::size_t e = seg.range.first; e < seg.range.last; ++e) added += ins[e % n] ? 1 : 0;
    s.range.first = next.vertex_map[seg.range.first % n];
    s.range.last = s.range.first + seg.range.count() - 1 + added;
    next.structure.segments.push_back(s);
  }
  for (const auto& [v, kind] : st.structure.junctions) next.structure.junctions[next.vertex_map[v]] = kind;
  next.structure.cyclic = st.structure.cyclic;
  next.junctions = st.junctions;
  for (auto& [id, js] : next.junctions) js.vertex = next.vertex_map[js.vertex];

  prepare_tangents(next, cfg);
  return next;
}

}  // namespace

RefinementState initial_state(const Polyline& poly, const RefinementConfig& cfg) {
  SegmentedPolyline seg = segment_polyline(poly, cfg);
  RefinementState st;
  st.poly = std::move(seg.poly);
  st.structure = std::move(seg.structure);
  st.warnings = st.structure.warnings;
  const BoundingBox box = bounding_box(st.poly.points);
  st.origin = box.center();
  st.diag0 = box.diagonal();
  st.scale = st.diag0 > 0.0 ? st.diag0 : 1.0;
  st.provenance.assign(st.poly.size(), VertexTag{});

  const auto n = static_cast<std::ptrdiff_t>(st.poly.size());
  for (const auto& [v, kind] : st.structure.junctions) {
    if (!uses_state(kind)) continue;
    const JunctionParams params = cfg.params_for(v);
    JunctionState js;
    js.kind = kind;
    js.vertex = v;
    js.anchor = HPoint::from_affine(to_work(st, st.poly[v]));
    js.lambda = params.lambda;
    js.rho = params.rho;
    if (kind == JunctionKind::InflectionPoint) {
      const auto k = static_cast<std::ptrdiff_t>(v);
      js.e_i = join(HPoint::from_affine(to_work(st, st.poly.wrapped((k - 1 + n) % n))),
                    HPoint::from_affine(to_work(st, st.poly.wrapped((k + 1) % n))));
    }
    st.junctions.emplace(v, js);
  }
  prepare_tangents(st, cfg);
  return st;
}

RefinementState refine_once(const RefinementState& st, const RefinementConfig& cfg) {
  return refine_step(st, cfg, cfg.mode == Mode::Adaptive);
}

RefinementState refine_adaptive_once(const RefinementState& st, const RefinementConfig& cfg) {
  return refine_step(st, cfg, true);
}

LevelDiagnostics measure_step(const RefinementState& prev, const RefinementState& next) {
  LevelDiagnostics diag;
  diag.k = prev.level;
  diag.n_points = next.poly.size();
  std::vector<char> inserted(next.provenance.size());
  for (std::size_t i = 0; i < inserted.size(); ++i) inserted[i] = next.provenance[i].level == next.level ? 1 : 0;
  diag.d_k = displacement_metrics(prev.poly, next.poly, inserted);
  diag.max_tangent_turn = tangent_turning(prev.tangents, next.tangents, next.vertex_map);
  const std::size_t n = next.poly.size();
  const std::size_t edges = next.poly.edge_count();
  for (std::size_t e = 0; e < edges; ++e) {
    const double len = distance(next.poly[e], next.poly[(e + 1) % n]);
    if (e == 0 || len < diag.min_edge) diag.min_edge = len;
    if (e == 0 || len > diag.max_edge) diag.max_edge = len;
  }
  diag.inflection_count = convexity_signature(next.poly).inflections;
  diag.fallbacks = next.fallbacks;
  for (const EdgeEvent& ev : next.events) {
    switch (ev.event.rule) {
      case InsertionRule::Harmonic:
        ++diag.harmonic;
        if (ev.event.cross_ratio)
          diag.max_cross_ratio_error = std::max(diag.max_cross_ratio_error, std::abs(*ev.event.cross_ratio + 1.0));
        break;
      case InsertionRule::EndpointRule: ++diag.endpoint; break;
      default: ++diag.midpoints; break;
    }
  }
  return diag;
}

std::pair<Polyline, DiagnosticsReport> subdivide(const Polyline& poly, const RefinementConfig& cfg) {
  cfg.validate();
  Polyline input = poly;
  input.topology = cfg.topology;
  DiagnosticsReport report;
  if (cfg.levels == 0) return {input, report};

  RefinementState st = initial_state(input, cfg);
  report.initial_inflections = convexity_signature(st.poly).inflections;
  report.warnings = st.warnings;
  for (int k = 0; k < cfg.levels; ++k) {
    RefinementState next = refine_once(st, cfg);
    report.levels.push_back(measure_step(st, next));
    report.warnings.insert(report.warnings.end(), next.warnings.begin(), next.warnings.end());
    st = std::move(next);
  }
  return {std::move(st.poly), std::move(report)};
}

}  // namespace conicsub
