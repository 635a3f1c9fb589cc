#include "relscan/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "relscan/geometry.hpp"

namespace relscan::oracle {

using geometry::Vector2;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTimeEps = 1e-13;
constexpr double kPi = 3.14159265358979323846;

Phase dur_phase(double accel, double duration) {
  Phase p;
  p.accel = accel;
  p.end = Phase::End::kDuration;
  p.duration = duration;
  return p;
}

Phase stop_phase(double accel) {
  Phase p;
  p.accel = accel;
  p.end = Phase::End::kVelocityZero;
  return p;
}

Phase target_phase(double accel, double velocity_target) {
  Phase p;
  p.accel = accel;
  p.end = Phase::End::kVelocityTarget;
  p.velocity_target = velocity_target;
  return p;
}

struct ChannelState {
  double x = 0.0;
  double v = 0.0;
  std::size_t phase = 0;
  double t_in_phase = 0.0;
};

/// Time left in the current phase; +inf once all phases are done.
double phase_time_left(const Channel& ch, const ChannelState& st) {
  if (st.phase >= ch.phases.size()) return kInf;
  const Phase& ph = ch.phases[st.phase];
  switch (ph.end) {
    case Phase::End::kDuration:
      return std::max(0.0, ph.duration - st.t_in_phase);
    case Phase::End::kVelocityZero: {
      if (std::abs(st.v) < 1e-12) return 0.0;
      if (ph.accel == 0.0 || (st.v > 0.0) == (ph.accel > 0.0)) {
        throw InvalidProfile("stop phase can never reach zero velocity");
      }
      return -st.v / ph.accel;
    }
    case Phase::End::kVelocityTarget: {
      const double dv = ph.velocity_target - st.v;
      if (std::abs(dv) < 1e-12) return 0.0;
      // A target already passed clamps to a zero-duration phase.
      if (ph.accel == 0.0 || (dv > 0.0) != (ph.accel > 0.0)) return 0.0;
      return dv / ph.accel;
    }
  }
  return kInf;
}

void finish_phase(const Channel& ch, ChannelState& st) {
  const Phase& ph = ch.phases[st.phase];
  if (ph.end == Phase::End::kVelocityZero) {
    st.v = 0.0;
  } else if (ph.end == Phase::End::kVelocityTarget) {
    const double dv = ph.velocity_target - st.v;
    if (ph.accel != 0.0 && (dv > 0.0) == (ph.accel > 0.0)) {
      st.v = ph.velocity_target;
    }
  }
  ++st.phase;
  st.t_in_phase = 0.0;
}

/// Advances one channel by h seconds, splitting the step analytically
/// at phase boundaries so constant-acceleration segments integrate
/// exactly.
void advance(const Channel& ch, ChannelState& st, double h) {
  while (h > kTimeEps) {
    if (st.phase >= ch.phases.size()) {
      st.x += st.v * h;
      return;
    }
    const double left = phase_time_left(ch, st);
    if (left <= kTimeEps) {
      finish_phase(ch, st);
      continue;
    }
    const double step = std::min(h, left);
    const double a = ch.phases[st.phase].accel;
    st.x += st.v * step + 0.5 * a * step * step;
    st.v += a * step;
    st.t_in_phase += step;
    h -= step;
    if (step >= left - kTimeEps) {
      finish_phase(ch, st);
    }
  }
}

void check_kamm(const Channel& ch, double bound) {
  for (const Phase& ph : ch.phases) {
    if (std::abs(ph.accel) > bound + 1e-9) {
      throw InvalidProfile("phase acceleration exceeds the friction limit");
    }
  }
}

double stop_time(double speed, double decel) {
  if (speed <= 1e-12) return 0.0;
  if (decel <= 0.0) {
    throw InvalidProfile("cannot stop with a non-positive deceleration");
  }
  return speed / decel;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 sub_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(index)));
}

}  // namespace

RolloutResult rollout(const ScenarioRollout& scenario, double dt) {
  if (!(dt >= 1e-5 && dt <= 1e-2)) {
    throw InvalidProfile("dt must lie in [1e-5, 1e-2]");
  }
  check_kamm(scenario.ego, scenario.accel_bound);
  check_kamm(scenario.ooi, scenario.accel_bound);
  if (scenario.ego_lat) check_kamm(*scenario.ego_lat, scenario.accel_bound);

  ChannelState ego{scenario.ego.x0, scenario.ego.v0};
  ChannelState ooi{scenario.ooi.x0, scenario.ooi.v0};
  ChannelState lat;
  if (scenario.ego_lat) {
    lat = ChannelState{scenario.ego_lat->x0, scenario.ego_lat->v0};
  }

  const auto gap = [&]() {
    return scenario.gap_sign * (ooi.x - ego.x);
  };

  RolloutResult result;
  result.min_gap = gap();
  result.t_at_min = 0.0;

  double t = 0.0;
  while (t < scenario.horizon - kTimeEps) {
    const double h = std::min(dt, scenario.horizon - t);
    advance(scenario.ego, ego, h);
    advance(scenario.ooi, ooi, h);
    if (scenario.ego_lat) advance(*scenario.ego_lat, lat, h);
    t += h;
    const double g = gap();
    if (g < result.min_gap) {
      result.min_gap = g;
      result.t_at_min = t;
    }
  }
  result.final_gap = gap();
  if (scenario.ego_lat) {
    result.lat_end_offset = lat.x;
    result.lat_end_vel = lat.v;
  }
  return result;
}

std::optional<ScenarioRollout> worst_case_profile(FunctionalScenario scenario,
                                                  const RadialInputs& in,
                                                  const CapabilityParams& p,
                                                  const Knobs& knobs) {
  p.validate();
  if (!(in.a_reduced > 0.0)) return std::nullopt;

  const double latency_accel = knobs.ego_latency_scale * p.a_max;
  const double t1 = knobs.ego_latency_jitter * p.t1_r;
  const double t2 = knobs.ooi_reaction_jitter * p.t2_r;
  const double ooi_adv = knobs.ooi_accel_scale * p.a_max;

  ScenarioRollout s;
  s.accel_bound = p.a_max;
  s.gap_sign = 1.0;

  switch (scenario) {
    case FunctionalScenario::kRta: {
      const double brake =
          std::min(knobs.ego_response_scale * in.a_reduced, p.a_max);
      s.ego.v0 = in.v1r;
      s.ego.phases = {dur_phase(latency_accel, t1), stop_phase(-brake)};
      s.ooi.x0 = in.gap0;
      s.ooi.v0 = in.v2r;
      s.ooi.phases = {stop_phase(-ooi_adv)};
      const double ego_stop =
          t1 + stop_time(in.v1r + latency_accel * t1, brake);
      const double ooi_stop = stop_time(in.v2r, ooi_adv);
      s.horizon = std::max(ego_stop, ooi_stop) + 0.5;
      return s;
    }
    case FunctionalScenario::kRatPlus: {
      const double ego_brake = knobs.ego_brake_scale * p.a_max;
      const double ooi_brake =
          std::min(knobs.ooi_brake_scale * in.a_reduced, p.a_max);
      s.ego.v0 = -in.v1r;
      s.ego.phases = {stop_phase(ego_brake)};
      s.ooi.x0 = in.gap0;
      s.ooi.v0 = -in.v2r;
      s.ooi.phases = {dur_phase(-ooi_adv, t2), stop_phase(ooi_brake)};
      const double ego_stop = stop_time(in.v1r, ego_brake);
      const double ooi_stop =
          t2 + stop_time(in.v2r + ooi_adv * t2, ooi_brake);
      s.horizon = std::max(ego_stop, ooi_stop) + 0.5;
      return s;
    }
    case FunctionalScenario::kRatMinus: {
      const double a_lon = std::min(knobs.ego_response_scale * p.a1_g, p.a_max);
      const double ego_brake = knobs.ego_brake_scale * p.a_max;
      const double ooi_brake =
          std::min(knobs.ooi_brake_scale * in.a_reduced, p.a_max);
      const double t_d = std::max(0.0, (in.v2r - in.v1r) / a_lon);
      s.ego.v0 = -in.v1r;
      s.ego.phases = {target_phase(-a_lon, -in.v2r), stop_phase(ego_brake)};
      s.ooi.x0 = in.gap0;
      s.ooi.v0 = -in.v2r;
      s.ooi.phases = {dur_phase(-ooi_adv, t_d + t2), stop_phase(ooi_brake)};
      const double ego_stop =
          t_d + stop_time(std::max(in.v1r, in.v2r), ego_brake);
      const double ooi_stop =
          t_d + t2 + stop_time(in.v2r + ooi_adv * (t_d + t2), ooi_brake);
      s.horizon = std::max(ego_stop, ooi_stop) + 0.5;
      return s;
    }
    case FunctionalScenario::kRtt: {
      const double brake =
          std::min(knobs.ego_response_scale * in.a_reduced, p.a_max);
      s.ego.v0 = in.v1r;
      s.ego.phases = {dur_phase(latency_accel, t1), stop_phase(-brake)};
      const double ego_stop =
          t1 + stop_time(in.v1r + latency_accel * t1, brake);
      s.ooi.x0 = in.gap0;
      s.ooi.v0 = -in.v2r;
      s.ooi.phases = {dur_phase(-ooi_adv, ego_stop + 1.0)};
      // The requirement only covers the time until the ego stands still.
      s.horizon = ego_stop;
      return s;
    }
    case FunctionalScenario::kRaa: {
      const double brake =
          std::min(knobs.ego_response_scale * in.a_reduced, p.a_max);
      const double v_reversed = -in.v1r + latency_accel * t1;
      if (v_reversed < -1e-12) {
        // The ego cannot reverse its recession within the latency; the
        // closed form's phase structure does not exist.
        return std::nullopt;
      }
      s.ego.v0 = -in.v1r;
      s.ego.phases = {dur_phase(latency_accel, t1), stop_phase(-brake)};
      const double ego_stop = t1 + stop_time(std::max(0.0, v_reversed), brake);
      s.ooi.x0 = in.gap0;
      s.ooi.v0 = in.v2r;
      s.ooi.phases = {dur_phase(-ooi_adv, ego_stop + 1.0)};
      s.horizon = ego_stop;
      return s;
    }
    default:
      return std::nullopt;
  }
}

std::optional<ScenarioRollout> txt_profile(const TxtDecomposition& dec,
                                           const CapabilityParams& p,
                                           const Knobs& knobs) {
  p.validate();
  const double t1 = knobs.ego_latency_jitter * p.t1_r;
  const double t2 = knobs.ooi_reaction_jitter * p.t2_r;
  const double a_lat = std::min(knobs.ego_response_scale * p.a1_g, p.a_max);
  const double a_lon = std::min(knobs.ego_response_scale * p.a1_g, p.a_max);
  const double ego_brake = knobs.ego_brake_scale * p.a_max;
  const double ooi_adv = knobs.ooi_accel_scale * p.a_max;
  const double ooi_brake = std::min(knobs.ooi_brake_scale * p.a2_b, p.a_max);

  // Lateral latency decay (always at the full friction limit).
  const double t_decay = std::min(t1, -dec.lat_vel / p.a_max);
  const double v_s = dec.lat_vel + p.a_max * t_decay;
  const double r_s = dec.lat_offset + dec.lat_vel * t_decay +
                     0.5 * p.a_max * t_decay * t_decay;
  const double disc = 0.5 * v_s * v_s + a_lat * r_s;
  if (r_s < -1e-12 || disc < v_s * v_s - 1e-9) {
    // The lane line was crossed during the latency or the switch time
    // would clamp; the maneuver chain is not well posed here.
    return std::nullopt;
  }
  const double t_c = std::max(0.0, (v_s + std::sqrt(std::max(0.0, disc))) / a_lat);
  const double t_h = 2.0 * t_c - v_s / a_lat;

  const double tau = std::max(0.0, (dec.v2_speed - dec.v1_par) / a_lon);
  const double t_brake = t1 + t_h + tau;

  ScenarioRollout s;
  s.accel_bound = p.a_max;
  s.gap_sign = -1.0;  // gap = ego longitudinal lead minus sizes

  Channel lat;
  lat.x0 = dec.lat_offset;
  lat.v0 = dec.lat_vel;
  lat.phases = {dur_phase(p.a_max, t_decay), dur_phase(0.0, t1 - t_decay),
                dur_phase(-a_lat, t_c), dur_phase(a_lat, t_h - t_c)};
  s.ego_lat = lat;

  s.ego.x0 = dec.lon_gap0;
  s.ego.v0 = dec.v1_par;
  s.ego.phases = {dur_phase(0.0, t1 + t_h),
                  target_phase(a_lon, dec.v2_speed), stop_phase(-ego_brake)};

  s.ooi.x0 = 0.0;
  s.ooi.v0 = dec.v2_speed;
  s.ooi.phases = {dur_phase(ooi_adv, t_brake + t2), stop_phase(-ooi_brake)};

  const double ego_stop =
      t_brake + stop_time(std::max(dec.v1_par, dec.v2_speed), ego_brake);
  const double ooi_stop =
      t_brake + t2 +
      stop_time(dec.v2_speed + ooi_adv * (t_brake + t2), ooi_brake);
  s.horizon = std::max(ego_stop, ooi_stop) + 0.5;
  return s;
}

namespace {

/// Formula inputs of a radial hypothesis evaluated on a concrete pair.
RadialInputs radial_inputs(const PairState& pair, FunctionalScenario scenario,
                           const CapabilityParams& p) {
  RadialInputs in;
  in.gap0 = pair.gap0;
  in.v1r = geometry::radial_speed(pair.ego.v, pair.d0);
  in.v2r = geometry::radial_speed(pair.ooi.v, pair.d0);
  const bool ego_brakes = scenario == FunctionalScenario::kRta ||
                          scenario == FunctionalScenario::kRtt ||
                          scenario == FunctionalScenario::kRaa;
  in.a_reduced =
      ego_brakes ? geometry::radial_braking_accel(pair.ego.v, pair.d0, p.a1_b)
                 : geometry::radial_braking_accel(pair.ooi.v, pair.d0, p.a2_b);
  return in;
}

struct SampleCheck {
  bool skipped = false;
  double margin = kInf;
  double bound = 0.0;
};

Knobs draw_knobs(FunctionalScenario scenario, const RadialInputs& in,
                 const CapabilityParams& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Knobs k;
  k.ego_latency_jitter = 0.8 + 0.2 * unit(rng);
  k.ooi_reaction_jitter = 0.8 + 0.2 * unit(rng);
  k.ego_brake_scale = 0.1 + 0.9 * unit(rng);
  switch (scenario) {
    case FunctionalScenario::kRta:
      k.ego_latency_scale = unit(rng);
      k.ego_response_scale = 1.0 + (p.a_max / in.a_reduced - 1.0) * unit(rng);
      k.ooi_accel_scale = 0.1 + 0.9 * unit(rng);
      break;
    case FunctionalScenario::kRatPlus:
      k.ooi_accel_scale = unit(rng);
      k.ooi_brake_scale = 1.0 + (p.a_max / in.a_reduced - 1.0) * unit(rng);
      break;
    case FunctionalScenario::kRatMinus:
      k.ooi_accel_scale = unit(rng);
      k.ooi_brake_scale = 1.0 + (p.a_max / in.a_reduced - 1.0) * unit(rng);
      k.ego_response_scale = 1.0 + (p.a_max / p.a1_g - 1.0) * unit(rng);
      break;
    case FunctionalScenario::kRtt:
      k.ego_latency_scale = unit(rng);
      k.ego_response_scale = 1.0 + (p.a_max / in.a_reduced - 1.0) * unit(rng);
      k.ooi_accel_scale = unit(rng);
      break;
    case FunctionalScenario::kRaa: {
      // The brake phase must start moving toward the object, so the
      // latency acceleration has to undo the initial recession.
      const double window = p.a_max * k.ego_latency_jitter * p.t1_r;
      const double lo = window > 0.0 ? in.v1r / window : 2.0;
      if (lo > 1.0) {
        k.ego_latency_scale = -1.0;  // marks an unrealizable structure
        break;
      }
      k.ego_latency_scale = lo + (1.0 - lo) * unit(rng);
      k.ego_response_scale = 1.0 + (p.a_max / in.a_reduced - 1.0) * unit(rng);
      k.ooi_accel_scale = unit(rng);
      break;
    }
    case FunctionalScenario::kTxt:
      k.ego_response_scale = 1.0 + (p.a_max / p.a1_g - 1.0) * unit(rng);
      k.ooi_accel_scale = 0.1 + 0.9 * unit(rng);
      k.ooi_brake_scale = 1.0 + (p.a_max / p.a2_b - 1.0) * unit(rng);
      break;
    default:
      break;
  }
  return k;
}

SampleCheck check_entry(const PairState& pair,
                        const RelevanceVerdict::Entry& entry,
                        const CapabilityParams& p, std::mt19937_64& rng,
                        double dt) {
  SampleCheck out;
  if (entry.d_min == -kInf) {
    // No radial braking guarantee exists; the bound holds trivially.
    out.margin = kInf;
    out.bound = -kInf;
    return out;
  }

  std::optional<ScenarioRollout> profile;
  double gap0_model = pair.gap0;
  if (entry.scenario == FunctionalScenario::kTxt) {
    const auto dec = txt_decompose(pair);
    if (!dec) {
      out.skipped = true;
      return out;
    }
    gap0_model = dec->lon_gap0;
    const Knobs knobs = draw_knobs(entry.scenario, {}, p, rng);
    profile = txt_profile(*dec, p, knobs);
  } else {
    const RadialInputs in = radial_inputs(pair, entry.scenario, p);
    if (!(in.a_reduced > 0.0)) {
      out.skipped = true;
      return out;
    }
    const Knobs knobs = draw_knobs(entry.scenario, in, p, rng);
    if (knobs.ego_latency_scale < 0.0) {
      out.skipped = true;
      return out;
    }
    profile = worst_case_profile(entry.scenario, in, p, knobs);
  }
  if (!profile) {
    out.skipped = true;
    return out;
  }
  const RolloutResult r = rollout(*profile, dt);
  // The closed form evaluates the stop-state gap; on profiles where the
  // gap first widens the binding claim is the initial gap.
  out.bound = std::min(gap0_model, entry.d_min);
  out.margin = r.min_gap - out.bound;
  return out;
}

void account(CertifyReport& report, const SampleCheck& check,
             const PairState& pair, FunctionalScenario scenario) {
  if (check.skipped) {
    ++report.skipped;
    return;
  }
  ++report.samples;
  if (check.margin < report.worst_margin) {
    report.worst_margin = check.margin;
    std::ostringstream oss;
    oss << to_string(scenario) << " gap0=" << pair.gap0
        << " margin=" << check.margin;
    report.worst_case = oss.str();
  }
  if (check.margin < -1e-3) {
    ++report.violations;
  }
}

PairState draw_pair(int kind, const CapabilityParams& p,
                    std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double s1 = 0.5 + 2.0 * unit(rng);
  const double s2 = 0.5 + 2.0 * unit(rng);
  const double gap0 = 1.0 + 499.0 * unit(rng);
  const double dist = gap0 + s1 + s2;
  const bool tangential = unit(rng) < 0.5;
  const double w1 = tangential ? -10.0 + 20.0 * unit(rng) : 0.0;
  const double w2 = tangential ? -10.0 + 20.0 * unit(rng) : 0.0;

  ObjectState ego;
  ObjectState ooi;
  ego.id = 1;
  ooi.id = 2;
  ego.s = s1;
  ooi.s = s2;

  const double u1 = 0.5 + 59.5 * unit(rng);
  const double u2 = 0.5 + 59.5 * unit(rng);
  switch (kind) {
    case 0:  // ego toward, object away
      ego.r = {0.0, 0.0};
      ooi.r = {dist, 0.0};
      ego.v = {u1, w1};
      ooi.v = {u2, w2};
      break;
    case 1:  // object following the ego
    case 2:
      ego.r = {0.0, 0.0};
      ooi.r = {dist, 0.0};
      ego.v = {-u1, w1};
      ooi.v = {-u2, w2};
      break;
    case 3:  // mutual approach
      ego.r = {0.0, 0.0};
      ooi.r = {dist, 0.0};
      ego.v = {u1, w1};
      ooi.v = {-u2, w2};
      break;
    case 4: {  // mutual recession, ego slow enough to reverse
      const double cap = 0.75 * p.a_max * p.t1_r;
      ego.r = {0.0, 0.0};
      ooi.r = {dist, 0.0};
      ego.v = {-cap * unit(rng), w1};
      ooi.v = {u2, w2};
      break;
    }
    default: {  // merge geometry: object approaching along its lane
      const double lat = 0.2 + 5.8 * unit(rng);
      const double lon = 1.0 + 399.0 * unit(rng);
      const double v_lat_cap = 0.9 * std::sqrt(2.0 * p.a_max * lat);
      ooi.r = {0.0, 0.0};
      ooi.v = {1.0 + 59.0 * unit(rng), 0.0};
      ego.r = {lon, lat};
      ego.v = {0.5 + 59.5 * unit(rng), -v_lat_cap * unit(rng)};
      break;
    }
  }

  // A rigid transform must not change any verdict; exercise it on half
  // of the draws.
  if (unit(rng) < 0.5) {
    const double angle = 2.0 * kPi * unit(rng);
    const double c = std::cos(angle);
    const double sn = std::sin(angle);
    const Vector2 shift{-1000.0 + 2000.0 * unit(rng),
                        -1000.0 + 2000.0 * unit(rng)};
    const auto rot = [&](const Vector2& v) {
      return Vector2{c * v.x - sn * v.y, sn * v.x + c * v.y};
    };
    ego.r = rot(ego.r) + shift;
    ooi.r = rot(ooi.r) + shift;
    ego.v = rot(ego.v);
    ooi.v = rot(ooi.v);
  }
  return PairState::make(ego, ooi);
}

}  // namespace

CertifyReport certify_conservative(const PairState& pair,
                                   const CapabilityParams& p,
                                   FormulaFidelity fidelity,
                                   std::int64_t n_samples, std::uint64_t seed,
                                   double dt) {
  CertifyReport report;
  report.worst_margin = kInf;
  const RelevanceVerdict verdict = evaluate_pair(pair, p, fidelity);
  if (verdict.overlap || verdict.entries.empty()) return report;

  std::uint64_t iter = 0;
  while (report.samples < n_samples) {
    auto rng = sub_rng(seed, iter);
    const auto& entry = verdict.entries[iter % verdict.entries.size()];
    ++iter;
    const SampleCheck check = check_entry(pair, entry, p, rng, dt);
    account(report, check, pair, entry.scenario);
    if (report.skipped > 100 * (n_samples + 1)) break;  // nothing realizable
  }
  return report;
}

CertifyReport certify_random(const CapabilityParams& p,
                             FormulaFidelity fidelity, std::int64_t n_samples,
                             std::uint64_t seed, double dt) {
  CertifyReport report;
  report.worst_margin = kInf;
  std::uint64_t iter = 0;
  while (report.samples < n_samples) {
    auto rng = sub_rng(seed, iter);
    const PairState pair = draw_pair(static_cast<int>(iter % 6), p, rng);
    ++iter;
    const RelevanceVerdict verdict = evaluate_pair(pair, p, fidelity);
    if (verdict.overlap) continue;
    for (const auto& entry : verdict.entries) {
      if (report.samples >= n_samples) break;
      const SampleCheck check = check_entry(pair, entry, p, rng, dt);
      account(report, check, pair, entry.scenario);
    }
  }
  return report;
}

std::string certify_report_text(const CertifyReport& report,
                                std::int64_t requested_samples,
                                std::uint64_t seed, FormulaFidelity fidelity) {
  std::ostringstream oss;
  oss << "requested_samples = " << requested_samples << "\n"
      << "samples = " << report.samples << "\n"
      << "violations = " << report.violations << "\n"
      << "skipped = " << report.skipped << "\n"
      << "worst_margin = " << report.worst_margin << "\n"
      << "worst_case = " << report.worst_case << "\n"
      << "seed = " << seed << "\n"
      << "fidelity = " << to_string(fidelity) << "\n";
  return oss.str();
}

}  // namespace relscan::oracle
