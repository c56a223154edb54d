#include "conicsub/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "conicsub/error.hpp"

namespace conicsub {
namespace {

/// Vertices that have two neighbours.
std::pair<std::size_t, std::size_t> interior(const Polyline& poly) {
  if (poly.closed()) return {0, poly.size()};
  return {1, poly.size() < 2 ? 1 : poly.size() - 1};
}

}  // namespace

std::vector<CurvatureSample> discrete_curvature(const Polyline& poly) {
  std::vector<CurvatureSample> out;
  if (poly.size() < 3) return out;
  const auto [first, last] = interior(poly);
  const auto n = static_cast<std::ptrdiff_t>(poly.size());
  for (std::size_t i = first; i < last; ++i) {
    const auto k = static_cast<std::ptrdiff_t>(i);
    const Vec2 a = poly.wrapped((k - 1 + n) % n);
    const Vec2 b = poly[i];
    const Vec2 c = poly.wrapped((k + 1) % n);
    CurvatureSample s;
    s.index = i;
    s.position = b;
    const Vec2 chord = c - a;
    const double lc = norm(chord);
    s.normal = lc == 0.0 ? Vec2{} : Vec2{-chord.y / lc, chord.x / lc};
    const double den = distance(a, b) * distance(b, c) * lc;
    if (den == 0.0) {
      s.degenerate = true;
    } else {
      s.curvature = 2.0 * cross(b - a, c - b) / den;
    }
    out.push_back(s);
  }
  return out;
}

ConvexitySignature convexity_signature(const Polyline& poly, double tol) {
  ConvexitySignature sig;
  if (poly.size() < 3) return sig;
  const auto [first, last] = interior(poly);
  const auto n = static_cast<std::ptrdiff_t>(poly.size());
  for (std::size_t i = first; i < last; ++i) {
    const auto k = static_cast<std::ptrdiff_t>(i);
    const Vec2 u = poly[i] - poly.wrapped((k - 1 + n) % n);
    const Vec2 v = poly.wrapped((k + 1) % n) - poly[i];
    const double len = norm(u) * norm(v);
    const double s = len == 0.0 ? 0.0 : cross(u, v) / len;
    sig.signs.push_back(s > tol ? 1 : (s < -tol ? -1 : 0));
  }
  std::vector<int> nz;
  for (int s : sig.signs)
    if (s != 0) nz.push_back(s);
  for (std::size_t i = 1; i < nz.size(); ++i)
    if (nz[i] != nz[i - 1]) ++sig.inflections;
  if (poly.closed() && nz.size() > 1 && nz.back() != nz.front()) ++sig.inflections;
  return sig;
}

double conic_residual(std::span<const Vec2> points, const ConicCoefficients& c) {
  double worst = 0.0;
  for (const Vec2& p : points) worst = std::max(worst, std::abs(c.geometric_residual(p)));
  return worst;
}

double displacement_metrics(const Polyline& prev, const Polyline& next, std::span<const char> inserted) {
  if (inserted.size() != next.size())
    throw Error(Errc::ProvenanceMismatch, "provenance does not cover every vertex");
  double d = 0.0;
  std::size_t old = 0;
  for (std::size_t j = 0; j < next.size(); ++j) {
    if (!inserted[j]) {
      if (old >= prev.size() || !(next[j] == prev[old]))
        throw Error(Errc::ProvenanceMismatch, "vertex " + std::to_string(j) + " is not an old vertex in order");
      ++old;
      continue;
    }
    const bool wrap = j + 1 == next.size();
    if (j == 0 || (wrap && !next.closed()) || inserted[j - 1] || inserted[wrap ? 0 : j + 1])
      throw Error(Errc::ProvenanceMismatch, "inserted vertex " + std::to_string(j) + " lacks two old neighbours");
    const Vec2 a = next[j - 1];
    const Vec2 b = next[wrap ? 0 : j + 1];
    const double len = distance(a, b);
    const double h = len == 0.0 ? distance(a, next[j]) : std::abs(cross(b - a, next[j] - a)) / len;
    d = std::max(d, h);
  }
  if (old != prev.size()) throw Error(Errc::ProvenanceMismatch, "old vertices missing from refined polyline");
  return d;
}

double tangent_turning(const TangentField& prev, const TangentField& next, std::span<const std::size_t> vertex_map) {
  double worst = 0.0;
  for (std::size_t i = 0; i < vertex_map.size() && i < prev.size(); ++i) {
    if (vertex_map[i] >= next.size()) continue;
    worst = std::max(worst, line_angle(prev[i], next[vertex_map[i]]));
  }
  return worst;
}

std::vector<std::pair<Vec2, Vec2>> curvature_comb(const Polyline& poly, double scale) {
  const auto samples = discrete_curvature(poly);
  if (scale <= 0.0) {
    double kmax = 0.0;
    for (const auto& s : samples) kmax = std::max(kmax, std::abs(s.curvature));
    scale = kmax == 0.0 ? 0.0 : 0.1 * bounding_box(poly.points).diagonal() / kmax;
  }
  std::vector<std::pair<Vec2, Vec2>> comb;
  comb.reserve(samples.size());
  for (const auto& s : samples) comb.emplace_back(s.position, s.position - (scale * s.curvature) * s.normal);
  return comb;
}

}  // namespace conicsub
