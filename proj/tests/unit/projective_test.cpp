#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "conicsub/error.hpp"
#include "conicsub/projective.hpp"
#include "oracles.hpp"

using namespace conicsub;

namespace {

HPoint affine_on_x_axis(double t) { return HPoint::from_affine({t, 0.0}); }

HPoint apply(const double m[3][3], const HPoint& p) {
  return {m[0][0] * p.w + m[0][1] * p.x + m[0][2] * p.y, m[1][0] * p.w + m[1][1] * p.x + m[1][2] * p.y,
          m[2][0] * p.w + m[2][1] * p.x + m[2][2] * p.y};
}

}  // namespace

TEST(Join, AxisPoints) {
  EXPECT_TRUE(projectively_equal(join({1, 0, 0}, {1, 1, 0}), HLine{0, 0, 1}));
  EXPECT_TRUE(projectively_equal(join({1, 0, 0}, {1, 0, 1}), HLine{0, -1, 0}));
}

TEST(Join, IdenticalPointsThrow) {
  try {
    join({1, 2, 3}, {1, 2, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CoincidentPoints);
  }
}

TEST(Meet, Axes) { EXPECT_TRUE(projectively_equal(meet({0, 0, 1}, {0, 1, 0}), HPoint{1, 0, 0})); }

TEST(Meet, ParallelLinesMeetAtInfinity) {
  const HPoint p = normalize(meet({0, 0, 1}, {-1, 0, 1}));
  EXPECT_EQ(p.w, 0.0);
  EXPECT_NEAR(std::abs(p.x), 1.0, 1e-15);
  EXPECT_EQ(p.y, 0.0);
}

TEST(Meet, ScaledDuplicateThrows) {
  try {
    meet({1, 1, 1}, {2, 2, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CoincidentLines);
  }
}

TEST(Normalize, Examples) {
  EXPECT_EQ(normalize({2, 4, 6}), (HPoint{1, 2, 3}));
  const HPoint d = normalize({0, 3, 4});
  EXPECT_EQ(d.w, 0.0);
  EXPECT_NEAR(d.x, 0.6, 1e-16);
  EXPECT_NEAR(d.y, 0.8, 1e-16);
  EXPECT_THROW(normalize({0, 0, 0}), Error);
}

TEST(Normalize, IdempotentProperty) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int k = 0; k < 500; ++k) {
    const HPoint p{k % 5 == 0 ? 0.0 : u(rng), u(rng), u(rng)};
    const HPoint n = normalize(p);
    EXPECT_TRUE(n.w == 0.0 || n.w == 1.0);
    EXPECT_EQ(normalize(n), n);
    EXPECT_TRUE(projectively_equal(n, p));
  }
}

TEST(Duality, MeetOfJoinsRecoversCommonPoint) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 500; ++k) {
    const HPoint p = HPoint::from_affine({u(rng), u(rng)});
    const HPoint q = HPoint::from_affine({u(rng), u(rng)});
    const HPoint r = HPoint::from_affine({u(rng), u(rng)});
    if (std::abs(cross(q.direction() - p.direction(), r.direction() - p.direction())) < 1e-3) continue;
    EXPECT_TRUE(projectively_equal(meet(join(p, q), join(p, r)), p));
  }
}

TEST(CrossRatio, HarmonicExampleMatchesOracle) {
  const double expected = oracle::cross_ratio_1d(-3, 1, 0, 3);
  ASSERT_DOUBLE_EQ(expected, -1.0);
  EXPECT_NEAR(cross_ratio(affine_on_x_axis(-3), affine_on_x_axis(1), affine_on_x_axis(0), affine_on_x_axis(3)),
              expected, 1e-14);
}

TEST(CrossRatio, FramePoints) {
  const HPoint e = affine_on_x_axis(2), e0 = affine_on_x_axis(-1), e1 = affine_on_x_axis(5);
  EXPECT_NEAR(cross_ratio(e0, e, e0, e1), 0.0, 1e-15);
  EXPECT_NEAR(cross_ratio(e, e, e0, e1), 1.0, 1e-14);
  EXPECT_TRUE(std::isinf(cross_ratio(e1, e, e0, e1)));
}

TEST(CrossRatio, ErrorsOnBadInput) {
  const HPoint a = affine_on_x_axis(0), b = affine_on_x_axis(1);
  try {
    cross_ratio(HPoint::from_affine({0, 1}), a, b, affine_on_x_axis(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotCollinear);
  }
  try {
    cross_ratio(affine_on_x_axis(3), a, b, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DegenerateFrame);
  }
}

TEST(CrossRatio, AgreesWithAffineOracleOnRandomLines) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int k = 0; k < 1000; ++k) {
    const Vec2 o{u(rng), u(rng)};
    const double ang = u(rng);
    const Vec2 d{std::cos(ang), std::sin(ang)};
    const double t = u(rng), e = u(rng), a = u(rng), b = u(rng);
    if (std::abs(e - a) < 0.1 || std::abs(b - t) < 0.1 || std::abs(b - e) < 0.1 || std::abs(a - b) < 0.1) continue;
    const auto at = [&](double s) { return HPoint::from_affine(o + s * d); };
    const double expected = oracle::cross_ratio_1d(t, e, a, b);
    EXPECT_NEAR(cross_ratio(at(t), at(e), at(a), at(b)), expected, 1e-8 * std::max(1.0, std::abs(expected)));
  }
}

TEST(CrossRatio, ProjectiveInvarianceProperty) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-1, 1);
  int checked = 0;
  for (int k = 0; k < 400; ++k) {
    double m[3][3];
    for (auto& row : m)
      for (double& v : row) v = u(rng);
    m[0][0] += 3.0;
    m[1][1] += 3.0;
    m[2][2] += 3.0;
    const Vec2 o{u(rng), u(rng)}, d{u(rng), u(rng)};
    const double s[4] = {u(rng), u(rng), u(rng), u(rng)};
    HPoint p[4];
    for (int i = 0; i < 4; ++i) p[i] = HPoint::from_affine(o + s[i] * d);
    double before = 0.0;
    try {
      before = cross_ratio(p[0], p[1], p[2], p[3]);
    } catch (const Error&) {
      continue;
    }
    if (!std::isfinite(before) || std::abs(before) > 1e3) continue;
    const double after = cross_ratio(apply(m, p[0]), apply(m, p[1]), apply(m, p[2]), apply(m, p[3]));
    EXPECT_NEAR(after, before, 1e-7 * std::max(1.0, std::abs(before)));
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

TEST(HarmonicInsert, Examples) {
  const HPoint u = normalize(harmonic_insert({1, 0, 0}, {1, 3, 0}, {1, 1, 0}));
  EXPECT_NEAR(u.x, oracle::harmonic_conjugate_1d(0, 3, 1), 1e-14);
  EXPECT_NEAR(u.x, -3.0, 1e-14);
  EXPECT_NEAR(cross_ratio(u, {1, 1, 0}, {1, 0, 0}, {1, 3, 0}), -1.0, 1e-12);

  const HPoint inf = normalize(harmonic_insert({1, 0, 0}, {1, 2, 0}, {1, 1, 0}));
  EXPECT_EQ(inf.w, 0.0);
  EXPECT_NEAR(std::abs(inf.x), 1.0, 1e-15);

  const HPoint c = normalize(harmonic_insert({1, 1.0 / 3, 2.0 / 3}, {1, 1, 1}, {1, -1, 0}));
  EXPECT_NEAR(c.x, 0.6, 1e-14);
  EXPECT_NEAR(c.y, 0.8, 1e-14);
}

TEST(HarmonicInsert, CrossRatioIsMinusOneProperty) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 1000; ++k) {
    const Vec2 o{u(rng), u(rng)};
    const double ang = 3 * u(rng);
    const Vec2 d{std::cos(ang), std::sin(ang)};
    const double x = u(rng), t = u(rng), p = u(rng);
    if (std::abs(x - t) < 0.05 || std::abs(p - x) < 0.05 || std::abs(p - t) < 0.05) continue;
    if (std::abs(2 * p - x - t) < 0.05) continue;  // conjugate far away
    const auto at = [&](double s) { return HPoint::from_affine(o + s * d); };
    const HPoint r = harmonic_insert(at(x), at(t), at(p));
    EXPECT_NEAR(cross_ratio(r, at(p), at(x), at(t)), -1.0, 1e-9);
    const double expected = oracle::harmonic_conjugate_1d(x, t, p);
    const Vec2 got = normalize(r).affine();
    EXPECT_NEAR(distance(got, o + expected * d), 0.0, 1e-9 * std::max(1.0, std::abs(expected)));
  }
}

TEST(HarmonicInsert, CoincidentPairThrows) {
  try {
    harmonic_insert({1, 1, 0}, {1, 1, 0}, {1, 2, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DegenerateFrame);
  }
}

TEST(Angles, ComplementaryConvention) {
  EXPECT_NEAR(line_angle({0, 0, 1}, {0, 1, 1}), oracle::pi / 4, 1e-15);
  EXPECT_NEAR(line_angle({0, 0, 1}, {0, 1, -1}), oracle::pi / 4, 1e-15);
  EXPECT_NEAR(direction_angle({1, 0}, {-1, 0.01}), std::atan(0.01), 1e-15);
}
