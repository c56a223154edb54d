#pragma once

#include <cstddef>
#include <map>

#include "conicsub/polyline.hpp"

namespace conicsub {

enum class Mode { Basic, Adaptive };

/// Strict mode turns geometric preconditions the scheme relies on into
/// errors; lenient mode substitutes midpoints and records a diagnostic.
enum class Strictness { Strict, Lenient };

/// Shape parameters of one junction; mu = 1 - lambda and sigma = 1 - rho.
struct JunctionParams {
  double lambda = 0.5;
  double rho = 0.5;
};

struct RefinementConfig {
  Topology topology = Topology::Open;
  int levels = 5;
  Mode mode = Mode::Basic;
  /// Adaptive mode: edges longer than this fraction of the level-0 bounding
  /// box diagonal are split.
  double edge_threshold = 0.01;
  double lambda = 0.5;
  double rho = 0.5;
  /// Collinear-run tolerance, relative to the bounding box diagonal.
  double collinearity_tol = 1e-9;
  Strictness strictness = Strictness::Strict;
  /// Keyed by the junction's vertex index in the segmented level-0 polyline.
  std::map<std::size_t, JunctionParams> junction_overrides;

  bool strict() const { return strictness == Strictness::Strict; }
  JunctionParams params_for(std::size_t junction_id) const;

  /// Throws Errc::InvalidConfig.
  void validate() const;
};

}  // namespace conicsub
