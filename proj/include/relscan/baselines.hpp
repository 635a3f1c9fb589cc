#pragma once

#include <optional>

#include "relscan/params.hpp"
#include "relscan/scenarios.hpp"

namespace relscan {

/// Following distance implied by the time-headway rule at the ego speed.
double headway_distance(double v_ego, const BaselineThresholds& thresholds);

/// Radial constant-velocity time to collision on the size-adjusted gap.
/// nullopt means the pair is not closing (infinite TTC).
std::optional<double> time_to_collision(const PairState& pair);

struct BaselineFlags {
  bool headway_relevant = false;
  bool ttc_relevant = false;
};

/// Reference criticality flags: TTC below threshold, and the headway
/// rule for the ego approaching an object ahead.
BaselineFlags baseline_flags(const PairState& pair,
                             const BaselineThresholds& thresholds);

}  // namespace relscan
