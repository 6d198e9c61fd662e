#pragma once

#include "segment/image.hpp"
#include "segment/objective.hpp"

#include <functional>
#include <span>

namespace segment {

using Objective = std::function<double(std::span<const double>)>;

/// Turns a continuous search position into a valid ThresholdSet.
///
/// Components are clamped to [1, 255], rounded, and sorted. Collisions are
/// pushed upward to the next free integer; anything pushed past 255 is then
/// pulled back down from the top. Throws Unrepairable when more than 255
/// thresholds are requested.
ThresholdSet decode_position(std::span<const double> position);

/// Objective handed to the optimizer: MCE fitness of the decoded position.
Objective objective_adapter(MceTables tables);

}  // namespace segment
