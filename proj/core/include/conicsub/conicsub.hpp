#pragma once

#include "conicsub/config.hpp"
#include "conicsub/convex.hpp"
#include "conicsub/engine.hpp"
#include "conicsub/error.hpp"
#include "conicsub/junction.hpp"
#include "conicsub/metrics.hpp"
#include "conicsub/polyline.hpp"
#include "conicsub/projective.hpp"
#include "conicsub/segmentation.hpp"
#include "conicsub/tangent.hpp"
