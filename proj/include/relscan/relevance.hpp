#pragma once

#include <optional>
#include <vector>

#include "relscan/params.hpp"
#include "relscan/scenarios.hpp"

namespace relscan {

/// Position under constant acceleration, r0 + v0 t + a t^2 / 2.
double const_accel_position(double r0, double v0, double a, double t);

/// Velocity under constant acceleration, v0 + a t.
double const_accel_velocity(double v0, double a, double t);

/// Distance covered while braking from v to standstill, v^2 / (2 a_b).
double braking_distance(double v, double a_b);

/// R.TA (ego following the object): worst case has the ego accelerating
/// at a_max during its reaction time and then braking with the reduced
/// guarantee a1rb, while the object brakes to a stop at a_max. Returns
/// the gap once both stand still; <= 0 triggers the hypothesis.
/// v1r: ego radial speed toward the object; v2r: object speed away.
double min_distance_rta(double gap0, double v1r, double v2r, double a1rb,
                        const CapabilityParams& p);

/// R.AT+ (object following the ego at adequate ego speed): role-swapped
/// R.TA. The ego may brake fully at a_max; the object reacts after t2_r
/// and brakes with its reduced guarantee a2rb.
/// v1r: ego radial speed away; v2r: object radial speed toward.
double min_distance_rat_plus(double gap0, double v1r, double v2r, double a2rb,
                             const CapabilityParams& p);

/// R.AT- (ego below its desired speed): the ego first accelerates at
/// a1_g until it reaches the desired speed, conservatively estimated as
/// the object's current radial speed, then the R.AT+ logic applies.
/// A non-positive acceleration phase is clamped to zero duration.
double min_distance_rat_minus(double gap0, double v1r, double v2r,
                              double a2rb, const CapabilityParams& p);

/// R.TT (mutual approach): the ego accelerates during its reaction time
/// and then brakes to a stop; the object accelerates toward the ego
/// throughout. The gap is evaluated when the ego stands still.
/// The literal fidelity keeps the printed final term linear in the ego stop
/// where the object's travel implies a quadratic one.
double min_distance_rtt(double gap0, double v1r, double v2r, double a1rb,
                        const CapabilityParams& p, FormulaFidelity fidelity);

/// R.AA (mutual recession): R.TT evaluated with both speeds negated.
double min_distance_raa(double gap0, double v1r, double v2r, double a1rb,
                        const CapabilityParams& p, FormulaFidelity fidelity);

/// Ego state expressed in the hypothetical lane frame of the object for
/// the T.XT merge hypothesis. The lateral axis points from the object's
/// path line toward the ego, so lat_offset >= 0 and an approach toward
/// the line has lat_vel <= 0.
struct TxtDecomposition {
  double lat_offset = 0.0;  // m
  double lat_vel = 0.0;     // m/s, <= 0
  double lon_gap0 = 0.0;    // m, longitudinal projection minus sizes
  double v1_par = 0.0;      // m/s, ego speed along the lane
  double v2_speed = 0.0;    // m/s, object speed (defines the lane)
};

/// Lane-frame decomposition for T.XT. Returns nullopt when the object
/// velocity cannot define a lane, when the object is not approaching,
/// when the ego's lateral velocity points away from the object's path
/// (not a potential merge), or when the ego travels against the lane
/// direction (a head-on geometry, covered radially).
std::optional<TxtDecomposition> txt_decompose(const PairState& pair);

/// Intermediate timings of the T.XT maneuver chain; exposed so the
/// rollout oracle can replicate the phase boundaries.
struct TxtTimings {
  double t_lat_react = 0.0;  // lateral decay duration within the latency
  double v_s = 0.0;          // lateral velocity when steering begins
  double r_s = 0.0;          // lateral offset when steering begins
  double t_c = 0.0;          // steering reversal time (after latency)
  double t_h = 0.0;          // lateral maneuver duration (after latency)
  double tau = 0.0;          // longitudinal acceleration duration
  double t_d = 0.0;          // total time until the desired speed
};

TxtTimings txt_timings(const TxtDecomposition& dec, const CapabilityParams& p,
                       FormulaFidelity fidelity);

/// The T.XT distance chain evaluated on an explicit decomposition.
double min_distance_txt_chain(const TxtDecomposition& dec,
                              const CapabilityParams& p,
                              FormulaFidelity fidelity);

/// T.XT (merge in front of an approaching object): latency decay of the
/// lateral approach, a two-phase lateral maneuver at a1_g onto the
/// object's path, constant longitudinal speed until the lane is reached,
/// longitudinal acceleration to the object's speed, then the R.AT-
/// handover. Returns nullopt when the hypothesis does not apply.
std::optional<double> min_distance_txt(const PairState& pair,
                                       const CapabilityParams& p,
                                       FormulaFidelity fidelity);

/// Per-hypothesis outcome and the superposed decision.
struct RelevanceVerdict {
  struct Entry {
    FunctionalScenario scenario;
    double d_min;    // m, may be -inf when no radial braking is available
    bool triggered;  // d_min <= 0
  };
  std::vector<Entry> entries;
  bool relevant = false;
  bool overlap = false;  // gap0 <= 0: relevant without formula evaluation
};

/// Evaluates every applicable hypothesis for the pair and superposes
/// the verdict: relevant iff any hypothesis triggers. Overlapping pairs
/// are relevant by fiat without formula evaluation.
RelevanceVerdict evaluate_pair(const PairState& pair,
                               const CapabilityParams& p,
                               FormulaFidelity fidelity);

}  // namespace relscan
