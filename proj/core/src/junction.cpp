#include "conicsub/junction.hpp"

#include <cmath>

#include "conicsub/error.hpp"

namespace conicsub {

HLine blend_lines(const HLine& a, const HLine& b, double lambda, const HPoint& anchor) {
  const HLine ua = oriented(a);
  HLine ub = oriented(b);
  if (dot(ua.normal(), ub.normal()) < 0.0) ub = {-ub.l0, -ub.l1, -ub.l2};
  const Vec2 n = lambda * ua.normal() + (1.0 - lambda) * ub.normal();
  if (norm(n) <= tol::zero) throw Error(Errc::OppositeLines, "blended line vanishes");
  const HPoint p = normalize(anchor);
  return oriented(HLine{-(n.x * p.x + n.y * p.y), n.x, n.y});
}

HLine inflection_tangent_initial(const FivePointStencil& left, const FivePointStencil& right, JunctionState& st) {
  const HLine l = estimate_tangent(left);
  const HLine r = estimate_tangent(right);
  st.prev_tangent = blend_lines(l, r, st.lambda, st.anchor);
  st.has_tangent = true;
  return st.prev_tangent;
}

HLine inflection_tangent_update(JunctionState& st, const HLine& left_edge, const HLine& right_edge) {
  const double gl = line_angle(left_edge, st.e_i);
  const double gr = line_angle(right_edge, st.e_i);
  const HLine& g = gl >= gr ? left_edge : right_edge;
  st.prev_tangent = blend_lines(st.prev_tangent, g, st.lambda, st.anchor);
  st.has_tangent = true;
  return st.prev_tangent;
}

HLine convex_junction_tangent(const FivePointStencil& left, const FivePointStencil& right, JunctionState& st,
                              const HPoint& p_prev, const HPoint& p_next) {
  const auto separates = [&](const HLine& l) { return l.eval(normalize(p_prev)) * l.eval(normalize(p_next)) < 0.0; };
  HLine l = estimate_tangent(left);
  HLine r = estimate_tangent(right);
  if (separates(l)) l = join(st.anchor, p_next);
  if (separates(r)) r = join(p_prev, st.anchor);
  st.prev_tangent = blend_lines(l, r, st.lambda, st.anchor);
  st.has_tangent = true;
  return st.prev_tangent;
}

HPoint endpoint_insert(const HPoint& t, const HPoint& m, const JunctionState& st) {
  const HPoint mn = normalize(m);
  const HPoint tn = normalize(t);
  if (tn.w == 0.0) return mn;
  return {1.0, st.rho * tn.x + st.sigma() * mn.x, st.rho * tn.y + st.sigma() * mn.y};
}

}  // namespace conicsub
