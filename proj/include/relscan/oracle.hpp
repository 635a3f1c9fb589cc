#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relscan/params.hpp"
#include "relscan/relevance.hpp"
#include "relscan/scenarios.hpp"

namespace relscan::oracle {

/// One constant-acceleration phase of a single motion channel.
struct Phase {
  enum class End {
    kDuration,          // fixed duration
    kVelocityZero,      // until the velocity crosses zero
    kVelocityTarget,    // until the velocity reaches `velocity_target`
  };
  double accel = 0.0;
  End end = End::kDuration;
  double duration = 0.0;
  double velocity_target = 0.0;
};

/// A 1-D motion channel: initial state plus its phase sequence. After
/// the last phase the channel holds its velocity (zero for profiles
/// that end in a stop).
struct Channel {
  double x0 = 0.0;
  double v0 = 0.0;
  std::vector<Phase> phases;
};

/// A scenario rollout in the scenario's own model coordinates. The gap
/// is the signed separation along the scenario axis minus sizes (sizes
/// are folded into the initial positions), so a negative gap means the
/// worst-case motion passes through the other object.
struct ScenarioRollout {
  Channel ego;
  Channel ooi;
  std::optional<Channel> ego_lat;  // lateral channel, T.XT only
  double gap_sign = 1.0;           // gap = gap_sign * (ooi.x - ego.x)
  double horizon = 0.0;            // s; gap is evaluated on [0, horizon]
  double accel_bound = 0.0;        // friction limit for profile validation
};

struct RolloutResult {
  double min_gap = 0.0;    // minimum gap over the sampled trace
  double t_at_min = 0.0;
  double final_gap = 0.0;  // gap at the horizon (the closed forms'
                           // evaluation point)
  double lat_end_offset = 0.0;
  double lat_end_vel = 0.0;
};

/// Time-stepped integration, exact per step for piecewise-constant
/// acceleration, with analytic sub-step termination at phase ends.
/// dt must lie in [1e-5, 1e-2]. Throws InvalidProfile when a phase
/// acceleration exceeds the friction bound or a stop condition can
/// never be met.
RolloutResult rollout(const ScenarioRollout& scenario, double dt);

/// Formula inputs of a radial scenario: role-specific radial speed
/// magnitudes and the braking vehicle's reduced guarantee.
struct RadialInputs {
  double gap0 = 0.0;
  double v1r = 0.0;
  double v2r = 0.0;
  double a_reduced = 0.0;
};

/// Multiplicative variations spanning the admissible behavior class
/// around a worst-case profile. 1.0 everywhere reproduces the worst
/// case. Adversarial magnitudes may be scaled down ([0,1]); guaranteed
/// responses may only be scaled up ([1, a_max/guarantee]); reaction
/// durations may only be shortened ([0.8, 1]).
struct Knobs {
  double ego_latency_scale = 1.0;   // [0,1] of a_max
  double ego_latency_jitter = 1.0;  // [0.8,1] of t1_r
  double ego_response_scale = 1.0;  // [1, a_max/guarantee]
  double ego_brake_scale = 1.0;     // [0,1] of a_max (R.AT/T.XT ego stop)
  double ooi_accel_scale = 1.0;     // [0,1] of a_max
  double ooi_reaction_jitter = 1.0; // [0.8,1] of t2_r
  double ooi_brake_scale = 1.0;     // [1, a_max/guarantee]
};

/// The exact phase structure each closed form assumes, optionally
/// varied by knobs. Returns nullopt when the scenario's phase structure
/// cannot be realized (R.AA when the ego cannot reverse its recession
/// within the latency).
std::optional<ScenarioRollout> worst_case_profile(FunctionalScenario scenario,
                                                  const RadialInputs& in,
                                                  const CapabilityParams& p,
                                                  const Knobs& knobs = {});

/// Two-channel T.XT profile: lateral latency decay and bang-bang lane
/// change, constant longitudinal speed until the lane is reached, then
/// acceleration to the object's speed and the R.AT- handover.
std::optional<ScenarioRollout> txt_profile(const TxtDecomposition& dec,
                                           const CapabilityParams& p,
                                           const Knobs& knobs = {});

struct CertifyReport {
  std::int64_t samples = 0;
  std::int64_t violations = 0;
  std::int64_t skipped = 0;  // profiles outside the modeled phase structure
  double worst_margin = 0.0; // min over samples of min_gap - bound
  std::string worst_case;    // description of the worst sample
};

/// Certifies one pair: samples admissible sub-worst-case profiles for
/// every applicable hypothesis and counts violations of
///   rollout_min_gap >= min(gap0, d_min) - 1e-3.
CertifyReport certify_conservative(const PairState& pair,
                                   const CapabilityParams& p,
                                   FormulaFidelity fidelity,
                                   std::int64_t n_samples, std::uint64_t seed,
                                   double dt = 1e-3);

/// Certifies randomized pairs drawn across all six scenario families.
/// Deterministic for a fixed seed, independent of threading.
CertifyReport certify_random(const CapabilityParams& p,
                             FormulaFidelity fidelity, std::int64_t n_samples,
                             std::uint64_t seed, double dt = 1e-3);

/// Key-value report text (same format as the analyze summary).
std::string certify_report_text(const CertifyReport& report,
                                std::int64_t requested_samples,
                                std::uint64_t seed, FormulaFidelity fidelity);

}  // namespace relscan::oracle
