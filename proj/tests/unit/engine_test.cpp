#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "conicsub/convex.hpp"
#include "conicsub/engine.hpp"
#include "conicsub/error.hpp"
#include "conicsub/metrics.hpp"
#include "conicsub/segmentation.hpp"
#include "oracles.hpp"

using namespace conicsub;

namespace {

RefinementConfig closed_cfg(int levels) {
  RefinementConfig cfg;
  cfg.topology = Topology::Closed;
  cfg.levels = levels;
  return cfg;
}

Polyline d_shape() {
  Polyline d;
  d.topology = Topology::Closed;
  for (int i = 0; i <= 8; ++i) d.points.push_back(oracle::circle_point(1.0, -oracle::pi / 2 + oracle::pi * i / 8));
  d.points.front() = {0, -1};
  d.points[8] = {0, 1};
  d.points.push_back({0, 0.5});
  d.points.push_back({0, 0});
  d.points.push_back({0, -0.5});
  return d;
}

Polyline sine_s() {
  Polyline p;
  for (int i = 0; i <= 12; ++i) {
    const double x = -2.8 + 0.5 * i;
    p.points.push_back({x, std::sin(x)});
  }
  return p;
}

bool contains_in_order(const Polyline& big, const Polyline& small) {
  std::size_t j = 0;
  for (const Vec2& p : big.points)
    if (j < small.size() && p == small[j]) ++j;
  return j == small.size();
}

}  // namespace

TEST(RefineOnce, ConvexClosedMatchesConvexLevel) {
  std::mt19937_64 rng(61);
  for (int k = 0; k < 10; ++k) {
    const Polyline p = oracle::random_convex_polygon(rng, 11);
    const auto cfg = closed_cfg(1);
    const RefinementState st = initial_state(p, cfg);
    const RefinementState next = refine_once(st, cfg);
    const auto direct = refine_convex_level(ConvexLevelData::from_affine(p.points, Topology::Closed), cfg);
    ASSERT_EQ(next.poly.size(), direct.size());
    const double diag = bounding_box(p.points).diagonal();
    for (std::size_t i = 0; i < direct.size(); ++i) EXPECT_LT(distance(next.poly[i], direct.affine(i)), 1e-12 * diag);
  }
}

// The arc meets the run at a corner, so it bends away from the circle near
// the ends but must stay convex and on its side of the line.
TEST(RefineOnce, DShapeKeepsLineExactAndArcConvex) {
  const auto cfg = closed_cfg(4);
  auto [out, report] = subdivide(d_shape(), cfg);
  std::size_t on_line = 0;
  for (const Vec2& p : out.points) {
    if (p.x == 0.0) ++on_line;
    else EXPECT_GT(p.x, 0.0);
  }
  EXPECT_EQ(on_line, 4u * 16 + 1);
  EXPECT_EQ(convexity_signature(out).inflections, 0u);
  EXPECT_TRUE(is_totally_convex(out, {0, out.size()}));
}

TEST(RefineOnce, SShapeUsesEndpointRuleAtInflection) {
  RefinementConfig cfg;
  const RefinementState st = initial_state(sine_s(), cfg);
  std::size_t v = 0;
  for (const auto& [idx, kind] : st.structure.junctions)
    if (kind == JunctionKind::InflectionPoint) v = idx;
  ASSERT_NE(v, 0u);
  const RefinementState next = refine_once(st, cfg);
  for (const EdgeEvent& ev : next.events) {
    const bool adjacent = ev.edge + 1 == v || ev.edge == v;
    EXPECT_EQ(ev.event.rule == InsertionRule::EndpointRule, adjacent) << "edge " << ev.edge;
    if (!adjacent) EXPECT_EQ(ev.event.rule, InsertionRule::Harmonic);
  }
}

TEST(RefineOnce, StraightJunctionTangentIsTheLine) {
  const auto cfg = closed_cfg(2);
  RefinementState st = initial_state(d_shape(), cfg);
  for (int k = 0; k < 2; ++k) {
    for (const auto& [v, kind] : st.structure.junctions) {
      ASSERT_EQ(kind, JunctionKind::StraightLineJunction);
      const HLine& l = st.tangents[v];
      EXPECT_EQ(std::abs(l.l2), 0.0);  // the line x = 0
      EXPECT_EQ(std::abs(l.l1), 1.0);
    }
    st = refine_once(st, cfg);
  }
}

TEST(RefineAdaptive, AllShortEdgesIsFixedPoint) {
  auto cfg = closed_cfg(1);
  cfg.mode = Mode::Adaptive;
  cfg.edge_threshold = 10.0;
  std::mt19937_64 rng(62);
  const Polyline p = oracle::random_convex_polygon(rng, 9);
  const RefinementState st = initial_state(p, cfg);
  EXPECT_EQ(refine_adaptive_once(st, cfg).poly, st.poly);
}

TEST(RefineAdaptive, OneLongEdgeGivesOneInsertion) {
  Polyline p;
  p.topology = Topology::Closed;
  for (int i = 0; i < 40; ++i) p.points.push_back(oracle::circle_point(1, 0.14 * i));
  auto cfg = closed_cfg(1);
  cfg.mode = Mode::Adaptive;
  cfg.edge_threshold = 0.2;
  const RefinementState st = initial_state(p, cfg);
  const RefinementState next = refine_adaptive_once(st, cfg);
  EXPECT_EQ(next.poly.size(), p.size() + 1);
  ASSERT_EQ(next.events.size(), 1u);
  EXPECT_EQ(next.events[0].edge, 39u);
  const Vec2 u = next.poly[40];
  EXPECT_NEAR(std::hypot(u.x, u.y), 1.0, 1e-12);
}

TEST(Subdivide, NonUniformCircle) {
  const double t[] = {0, 0.5, 1.1, 1.9, 2.6, 3.3, 4.4, 5.5};
  Polyline c;
  for (double s : t) c.points.push_back(oracle::circle_point(1, s));
  auto [out, report] = subdivide(c, closed_cfg(5));
  EXPECT_EQ(out.size(), 256u);
  const oracle::Conic circle{oracle::Conic::Circle};
  for (const Vec2& p : out.points) EXPECT_LT(circle.distance(p), 1e-8);
  ASSERT_EQ(report.levels.size(), 5u);
  for (const auto& l : report.levels) EXPECT_EQ(l.inflection_count, 0u);
}

TEST(Subdivide, ZeroLevelsReturnsInput) {
  const Polyline p{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, Topology::Closed};
  auto [out, report] = subdivide(p, closed_cfg(0));
  EXPECT_EQ(out, p);
  EXPECT_TRUE(report.levels.empty());
}

TEST(Subdivide, StrictFourPointsThrows) {
  const Polyline p{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, Topology::Closed};
  try {
    subdivide(p, closed_cfg(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooFewPoints);
  }
}

TEST(Subdivide, InvalidConfigThrows) {
  auto cfg = closed_cfg(3);
  cfg.lambda = 1.0;
  EXPECT_THROW(subdivide(d_shape(), cfg), Error);
}

TEST(Subdivide, InterpolationAndStructureInvariants) {
  for (const Polyline& in : {d_shape(), sine_s()}) {
    RefinementConfig cfg;
    cfg.topology = in.topology;
    RefinementState st = initial_state(in, cfg);
    const Polyline level0 = st.poly;
    const std::size_t segments = st.structure.segments.size();
    const auto junctions = st.structure.junctions.size();
    const std::size_t inflections = convexity_signature(level0).inflections;
    for (int k = 0; k < 5; ++k) {
      const Polyline prev = st.poly;
      st = refine_once(st, cfg);
      EXPECT_TRUE(contains_in_order(st.poly, prev));
      EXPECT_TRUE(contains_in_order(st.poly, level0));
      EXPECT_EQ(st.structure.segments.size(), segments);
      EXPECT_EQ(st.structure.junctions.size(), junctions);
      EXPECT_EQ(convexity_signature(st.poly).inflections, inflections);
      for (std::size_t i = 0; i < prev.size(); ++i) EXPECT_EQ(st.poly[st.vertex_map[i]], prev[i]);
    }
  }
}

TEST(Subdivide, InflectionTangentDecays) {
  RefinementConfig cfg;
  RefinementState st = initial_state(sine_s(), cfg);
  std::size_t id = 0;
  for (const auto& [k, js] : st.junctions) id = k;
  std::vector<double> xi;
  for (int k = 0; k < 6; ++k) {
    const HLine before = st.junctions.at(id).prev_tangent;
    st = refine_once(st, cfg);
    xi.push_back(line_angle(before, st.junctions.at(id).prev_tangent));
  }
  for (double v : xi) EXPECT_GT(v, 0.0);
  for (std::size_t k = 2; k + 1 < xi.size(); ++k) EXPECT_LT(xi[k + 1], xi[k]);
}

TEST(Subdivide, DisplacementDecaysGeometrically) {
  std::mt19937_64 rng(63);
  for (int k = 0; k < 5; ++k) {
    auto [out, report] = subdivide(oracle::random_convex_polygon(rng, 10), closed_cfg(7));
    for (std::size_t l = 3; l + 1 < report.levels.size(); ++l)
      EXPECT_LE(report.levels[l + 1].d_k / report.levels[l].d_k, 0.8);
  }
}

TEST(Subdivide, SimilarityEquivarianceProperty) {
  std::mt19937_64 rng(64);
  std::uniform_real_distribution<double> ang(0, 2 * oracle::pi), sc(0.05, 20), sh(-50, 50);
  for (int k = 0; k < 10; ++k) {
    const Polyline in = k % 2 ? d_shape() : sine_s();
    const double th = ang(rng), s = sc(rng);
    const Vec2 off{sh(rng), sh(rng)};
    const auto T = [&](Vec2 q) {
      return Vec2{s * (q.x * std::cos(th) - q.y * std::sin(th)) + off.x, s * (q.x * std::sin(th) + q.y * std::cos(th)) + off.y};
    };
    Polyline tin = in;
    for (Vec2& q : tin.points) q = T(q);
    RefinementConfig cfg;
    cfg.topology = in.topology;
    cfg.levels = 4;
    const Polyline a = subdivide(in, cfg).first;
    const Polyline b = subdivide(tin, cfg).first;
    ASSERT_EQ(a.size(), b.size());
    const double scale = bounding_box(b.points).diagonal();
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LT(distance(T(a[i]), b[i]), 1e-9 * scale);
  }
}

TEST(Subdivide, LenientSmallPolygonUsesMidpoints) {
  auto cfg = closed_cfg(2);
  cfg.strictness = Strictness::Lenient;
  auto [out, report] = subdivide({{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, Topology::Closed}, cfg);
  EXPECT_EQ(out.size(), 16u);
  EXPECT_FALSE(report.warnings.empty());
  EXPECT_EQ(report.levels[0].midpoints, 4u);
}
