#include "conicsub/config.hpp"

#include <cmath>
#include <string>

#include "conicsub/error.hpp"

namespace conicsub {
namespace {

bool open_unit(double v) { return std::isfinite(v) && v > 0.0 && v < 1.0; }

}  // namespace

JunctionParams RefinementConfig::params_for(std::size_t junction_id) const {
  if (auto it = junction_overrides.find(junction_id); it != junction_overrides.end()) return it->second;
  return {lambda, rho};
}

void RefinementConfig::validate() const {
  if (levels < 0) throw Error(Errc::InvalidConfig, "levels must be >= 0");
  if (!open_unit(lambda)) throw Error(Errc::InvalidConfig, "lambda must lie in (0, 1)");
  if (!open_unit(rho)) throw Error(Errc::InvalidConfig, "rho must lie in (0, 1)");
  if (mode == Mode::Adaptive && !(std::isfinite(edge_threshold) && edge_threshold > 0.0))
    throw Error(Errc::InvalidConfig, "adaptive mode needs a positive edge threshold");
  if (!(std::isfinite(collinearity_tol) && collinearity_tol >= 0.0))
    throw Error(Errc::InvalidConfig, "collinearity tolerance must be >= 0");
  for (const auto& [id, p] : junction_overrides) {
    if (!open_unit(p.lambda) || !open_unit(p.rho))
      throw Error(Errc::InvalidConfig, "junction " + std::to_string(id) + ": shape parameters must lie in (0, 1)");
  }
}

}  // namespace conicsub
