#include "relscan/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace relscan {

double headway_distance(double v_ego, const BaselineThresholds& thresholds) {
  thresholds.validate();
  if (v_ego < 0.0) {
    throw InvalidParams("headway_distance: ego speed must be non-negative");
  }
  return v_ego * thresholds.headway_s;
}

std::optional<double> time_to_collision(const PairState& pair) {
  const double dist = pair.center_distance();
  if (dist <= geometry::kDistanceEpsilon) {
    throw DegenerateGeometry("time_to_collision: objects coincide");
  }
  // Rate of change of the center distance at t = 0.
  const double closing = pair.d0.dot(pair.ego.v - pair.ooi.v) / dist;
  if (closing <= 0.0) return std::nullopt;
  return std::max(0.0, pair.gap0) / closing;
}

BaselineFlags baseline_flags(const PairState& pair,
                             const BaselineThresholds& thresholds) {
  thresholds.validate();
  BaselineFlags flags;
  const auto ttc = time_to_collision(pair);
  flags.ttc_relevant = ttc.has_value() && *ttc <= thresholds.ttc_s;

  // The headway rule is a following-distance rule: it applies only when
  // the ego approaches an object ahead and the pair is closing.
  const double p1 = pair.d0.dot(pair.ego.v);
  const bool ego_toward = p1 > sign_tolerance(pair.d0, pair.ego.v);
  flags.headway_relevant =
      ego_toward && ttc.has_value() &&
      pair.gap0 <= headway_distance(pair.ego.v.norm(), thresholds);
  return flags;
}

}  // namespace relscan
