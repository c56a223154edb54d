#include "conicsub/tangent.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "conicsub/error.hpp"

namespace conicsub {
namespace {

using Vec3 = std::array<double, 3>;

Vec3 wedge(const Vec3& a, const Vec3& b) {
  const Vec3 w{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  const double na = std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
  const double nb = std::max({std::abs(b[0]), std::abs(b[1]), std::abs(b[2])});
  const double nw = std::max({std::abs(w[0]), std::abs(w[1]), std::abs(w[2])});
  if (!(nw > tol::zero * na * nb)) throw Error(Errc::DegenerateStencil, "vanishing wedge in tangent estimate");
  // Renormalize to max-abs 1 so the chain of six wedges cannot drift in scale.
  return {w[0] / nw, w[1] / nw, w[2] / nw};
}

Vec3 vec(const HPoint& p) {
  const double m = std::max({std::abs(p.w), std::abs(p.x), std::abs(p.y)});
  if (m == 0.0) throw Error(Errc::DegenerateStencil, "zero point in stencil");
  return {p.w / m, p.x / m, p.y / m};
}

std::size_t open_index(std::ptrdiff_t k, std::size_t n) {
  // P0 = P5, P-1 = P4, Pn+1 = Pn-4, Pn+2 = Pn-3 in 1-based terms.
  const auto m = static_cast<std::ptrdiff_t>(n);
  if (k < 0) k += 5;
  else if (k >= m) k -= 5;
  return static_cast<std::size_t>(k);
}

}  // namespace

FivePointStencil FivePointStencil::from_affine(const std::array<Vec2, 5>& pts) {
  FivePointStencil s;
  for (std::size_t i = 0; i < 5; ++i) s.q[i] = HPoint::from_affine(pts[i]);
  return s;
}

HLine estimate_tangent(const FivePointStencil& s) {
  const Vec3 q1 = vec(s.q[0]);
  const Vec3 q2 = vec(s.q[1]);
  const Vec3 q3 = vec(s.q[2]);
  const Vec3 q4 = vec(s.q[3]);
  const Vec3 q5 = vec(s.q[4]);

  const Vec3 a = wedge(wedge(q1, q2), wedge(q3, q4));
  const Vec3 b = wedge(wedge(q5, q4), wedge(q3, q2));
  const Vec3 m15 = wedge(q1, q5);
  const Vec3 m33 = wedge(q3, wedge(m15, wedge(a, b)));
  return {m33[0], m33[1], m33[2]};
}

FivePointStencil stencil_at(std::span<const Vec2> pts, std::size_t i, Topology topology) {
  const std::size_t n = pts.size();
  if (n < 5) throw Error(Errc::TooFewPoints, "tangent stencil needs five vertices");
  std::array<Vec2, 5> q;
  for (std::ptrdiff_t k = -2; k <= 2; ++k) {
    const auto idx = static_cast<std::ptrdiff_t>(i) + k;
    std::size_t j = 0;
    if (topology == Topology::Closed) {
      const auto m = static_cast<std::ptrdiff_t>(n);
      j = static_cast<std::size_t>(((idx % m) + m) % m);
    } else {
      j = open_index(idx, n);
    }
    q[static_cast<std::size_t>(k + 2)] = pts[j];
  }
  return FivePointStencil::from_affine(q);
}

TangentField build_tangent_field(std::span<const Vec2> pts, Topology topology) {
  if (pts.size() < 5) throw Error(Errc::TooFewPoints, "tangent field needs at least five vertices");
  TangentField field;
  field.lines.resize(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) field.lines[i] = estimate_tangent(stencil_at(pts, i, topology));
  return field;
}

TangentField build_tangent_field(const Polyline& poly, IndexRange range) {
  if (range.count() < 5) throw Error(Errc::TooFewPoints, "tangent field needs at least five vertices");
  const bool cyclic = poly.closed() && range.count() == poly.size();
  const std::vector<Vec2> pts = gather(poly, range);
  return build_tangent_field(pts, cyclic ? Topology::Closed : Topology::Open);
}

double ConicCoefficients::eval(Vec2 p) const {
  return c[0] * p.x * p.x + c[1] * p.x * p.y + c[2] * p.y * p.y + c[3] * p.x + c[4] * p.y + c[5];
}

Vec2 ConicCoefficients::gradient(Vec2 p) const {
  return {2.0 * c[0] * p.x + c[1] * p.y + c[3], c[1] * p.x + 2.0 * c[2] * p.y + c[4]};
}

double ConicCoefficients::geometric_residual(Vec2 p) const {
  const double g = norm(gradient(p));
  if (g <= tol::zero) throw Error(Errc::GradientVanishes, "conic gradient vanishes");
  return std::abs(eval(p)) / g;
}

ConicCoefficients conic_through_five(const std::array<HPoint, 5>& points) {
  // Square system with a zero sixth row; the null vector is the last right singular vector.
  Eigen::Matrix<double, 6, 6> m = Eigen::Matrix<double, 6, 6>::Zero();
  for (int r = 0; r < 5; ++r) {
    const HPoint p = normalize(points[static_cast<std::size_t>(r)]);
    if (p.w == 0.0) throw Error(Errc::DegenerateConfiguration, "conic oracle needs finite points");
    m.row(r) << p.x * p.x, p.x * p.y, p.y * p.y, p.x, p.y, 1.0;
  }
  Eigen::JacobiSVD<Eigen::Matrix<double, 6, 6>> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(4) <= 1e-10 * sv(0))
    throw Error(Errc::DegenerateConfiguration, "five points do not determine a unique conic");
  const Eigen::Matrix<double, 6, 1> v = svd.matrixV().col(5).normalized();
  ConicCoefficients conic;
  for (int i = 0; i < 6; ++i) conic.c[static_cast<std::size_t>(i)] = v(i);
  return conic;
}

HLine conic_tangent_at(const ConicCoefficients& conic, const HPoint& p) {
  const Vec2 a = normalize(p).affine();
  const double g = norm(conic.gradient(a));
  if (g <= tol::zero || std::abs(conic.eval(a)) / g > 1e-8)
    throw Error(Errc::PointNotOnConic, "point is not on the conic");
  // Polar of p: the symmetric conic matrix applied to (1, x, y).
  const auto& c = conic.c;
  return {c[5] + 0.5 * c[3] * a.x + 0.5 * c[4] * a.y, 0.5 * c[3] + c[0] * a.x + 0.5 * c[1] * a.y,
          0.5 * c[4] + 0.5 * c[1] * a.x + c[2] * a.y};
}

}  // namespace conicsub
