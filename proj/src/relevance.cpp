#include "relscan/relevance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace relscan {

using geometry::Vector2;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double a, const char* what) {
  if (!(a > 0.0)) {
    throw InvalidParams(std::string(what) + " must be positive");
  }
}

}  // namespace

double const_accel_position(double r0, double v0, double a, double t) {
  return r0 + v0 * t + 0.5 * a * t * t;
}

double const_accel_velocity(double v0, double a, double t) { return v0 + a * t; }

double braking_distance(double v, double a_b) {
  require_positive(a_b, "braking acceleration");
  return v * v / (2.0 * a_b);
}

double min_distance_rta(double gap0, double v1r, double v2r, double a1rb,
                        const CapabilityParams& p) {
  require_positive(a1rb, "reduced ego braking");
  const double v1_after_react = v1r + p.t1_r * p.a_max;
  return gap0 + braking_distance(v2r, p.a_max) - v1r * p.t1_r -
         0.5 * p.a_max * p.t1_r * p.t1_r -
         braking_distance(v1_after_react, a1rb);
}

double min_distance_rat_plus(double gap0, double v1r, double v2r, double a2rb,
                             const CapabilityParams& p) {
  require_positive(a2rb, "reduced object braking");
  const double v2_after_react = v2r + p.t2_r * p.a_max;
  return gap0 + braking_distance(v1r, p.a_max) - v2r * p.t2_r -
         0.5 * p.a_max * p.t2_r * p.t2_r -
         braking_distance(v2_after_react, a2rb);
}

double min_distance_rat_minus(double gap0, double v1r, double v2r,
                              double a2rb, const CapabilityParams& p) {
  require_positive(a2rb, "reduced object braking");
  // Desired ego speed estimated as the object's current radial speed.
  const double v1_desired = v2r;
  const double t_d = std::max(0.0, (v1_desired - v1r) / p.a1_g);
  const double gap_at_td =
      gap0 + (v1r - v2r) * t_d + 0.5 * (p.a1_g - p.a_max) * t_d * t_d;
  const double v2_at_td = v2r + p.a_max * t_d;
  const double v2_after_react = v2_at_td + p.t2_r * p.a_max;
  return gap_at_td + braking_distance(v1_desired, p.a_max) -
         v2_at_td * p.t2_r - 0.5 * p.a_max * p.t2_r * p.t2_r -
         braking_distance(v2_after_react, a2rb);
}

double min_distance_rtt(double gap0, double v1r, double v2r, double a1rb,
                        const CapabilityParams& p, FormulaFidelity fidelity) {
  require_positive(a1rb, "reduced ego braking");
  const double v1_after_react = v1r + p.t1_r * p.a_max;
  const double t1b = p.t1_r + v1_after_react / a1rb;
  const double ooi_term = fidelity == FormulaFidelity::kCorrected
                              ? 0.5 * p.a_max * t1b * t1b
                              : 0.5 * p.a_max * t1b;
  return gap0 - v1r * p.t1_r - 0.5 * p.a_max * p.t1_r * p.t1_r -
         braking_distance(v1_after_react, a1rb) - v2r * t1b - ooi_term;
}

double min_distance_raa(double gap0, double v1r, double v2r, double a1rb,
                        const CapabilityParams& p, FormulaFidelity fidelity) {
  return min_distance_rtt(gap0, -v1r, -v2r, a1rb, p, fidelity);
}

std::optional<TxtDecomposition> txt_decompose(const PairState& pair) {
  const Vector2& v2 = pair.ooi.v;
  if (v2.norm() <= geometry::kVelocityEpsilon) return std::nullopt;
  if (classify_tangential(pair) != FunctionalScenario::kTxt)
    return std::nullopt;

  const geometry::LaneFrame frame = geometry::lane_frame(v2);
  // Offset of the ego from the object's path line; orient the lateral
  // axis so the offset is non-negative.
  const double off = -pair.d0.dot(frame.perpendicular);
  const double sign = off < 0.0 ? -1.0 : 1.0;
  const Vector2 lat_axis = sign * frame.perpendicular;

  TxtDecomposition dec;
  dec.lat_offset = std::abs(off);
  dec.lat_vel = pair.ego.v.dot(lat_axis);
  if (dec.lat_vel > geometry::kVelocityEpsilon) {
    // Lateral motion away from the object's path: not a potential merge.
    return std::nullopt;
  }
  dec.lat_vel = std::min(dec.lat_vel, 0.0);
  dec.lon_gap0 = -pair.d0.dot(frame.parallel) - pair.ego.s - pair.ooi.s;
  dec.v1_par = pair.ego.v.dot(frame.parallel);
  if (dec.v1_par < -geometry::kVelocityEpsilon) {
    // Merging in front of the object requires traveling with its lane;
    // an opposing ego is a head-on geometry covered by the radial
    // hypotheses.
    return std::nullopt;
  }
  dec.v2_speed = v2.norm();
  return dec;
}

TxtTimings txt_timings(const TxtDecomposition& dec, const CapabilityParams& p,
                       FormulaFidelity fidelity) {
  TxtTimings t;
  // The lateral approach decays at a_max during the latency, clamped
  // when it reaches zero.
  t.t_lat_react = std::min(p.t1_r, -dec.lat_vel / p.a_max);
  t.v_s = dec.lat_vel + p.a_max * t.t_lat_react;
  t.r_s = dec.lat_offset + dec.lat_vel * t.t_lat_react +
          0.5 * p.a_max * t.t_lat_react * t.t_lat_react;
  if (fidelity == FormulaFidelity::kCorrected) {
    const double disc = std::max(0.0, 0.5 * t.v_s * t.v_s + p.a1_g * t.r_s);
    t.t_c = std::max(0.0, (t.v_s + std::sqrt(disc)) / p.a1_g);
    t.t_h = 2.0 * t.t_c - t.v_s / p.a1_g;
  } else {
    t.t_c = t.v_s / p.a_max + std::sqrt(std::max(0.0, t.r_s / p.a1_g));
    t.t_h = t.t_c - t.v_s / p.a1_g;
  }
  t.tau = std::max(0.0, (dec.v2_speed - dec.v1_par) / p.a1_g);
  t.t_d = p.t1_r + t.t_h + t.tau;
  return t;
}

double min_distance_txt_chain(const TxtDecomposition& dec,
                              const CapabilityParams& p,
                              FormulaFidelity fidelity) {
  const TxtTimings t = txt_timings(dec, p, fidelity);

  // Constant longitudinal speed until the lane is reached, then
  // acceleration at a1_g over tau; the object accelerates throughout.
  double gap_at_td;
  if (fidelity == FormulaFidelity::kCorrected) {
    gap_at_td = dec.lon_gap0 + (dec.v1_par - dec.v2_speed) * t.t_d -
                0.5 * p.a_max * t.t_d * t.t_d + 0.5 * p.a1_g * t.tau * t.tau;
  } else {
    gap_at_td = dec.lon_gap0 + (dec.v1_par - dec.v2_speed) * t.t_d +
                0.5 * (p.a1_g - p.a_max) * t.t_d * t.t_d;
  }
  const double v1_desired = dec.v2_speed;
  const double v2_at_td = dec.v2_speed + p.a_max * t.t_d;
  if (fidelity == FormulaFidelity::kCorrected) {
    const double v2_after_react = v2_at_td + p.t2_r * p.a_max;
    return gap_at_td + braking_distance(v1_desired, p.a_max) -
           v2_at_td * p.t2_r - 0.5 * p.a_max * p.t2_r * p.t2_r -
           braking_distance(v2_after_react, p.a2_b);
  }
  const double v2_after_react = v2_at_td + p.t1_r * p.a_max;
  return gap_at_td + braking_distance(v1_desired, p.a_max) -
         v2_at_td * p.t1_r - 0.5 * p.a_max * p.t1_r * p.t1_r -
         braking_distance(v2_after_react, p.a1_g);
}

std::optional<double> min_distance_txt(const PairState& pair,
                                       const CapabilityParams& p,
                                       FormulaFidelity fidelity) {
  p.validate();
  const auto dec = txt_decompose(pair);
  if (!dec) return std::nullopt;
  return min_distance_txt_chain(*dec, p, fidelity);
}

RelevanceVerdict evaluate_pair(const PairState& pair,
                               const CapabilityParams& p,
                               FormulaFidelity fidelity) {
  p.validate();
  RelevanceVerdict verdict;
  if (pair.center_distance() <= geometry::kDistanceEpsilon ||
      pair.gap0 <= 0.0) {
    verdict.relevant = true;
    verdict.overlap = true;
    return verdict;
  }

  const Vector2& d0 = pair.d0;
  const double v1r = geometry::radial_speed(pair.ego.v, d0);
  const double v2r = geometry::radial_speed(pair.ooi.v, d0);
  const double a1rb = geometry::radial_braking_accel(pair.ego.v, d0, p.a1_b);
  const double a2rb = geometry::radial_braking_accel(pair.ooi.v, d0, p.a2_b);

  for (const FunctionalScenario scenario : enumerate_hypotheses(pair)) {
    double d_min = 0.0;
    switch (scenario) {
      case FunctionalScenario::kRta:
        // A guarantee fully consumed by tangential motion cannot stop
        // the radial approach built up during the latency.
        d_min = a1rb > 0.0 ? min_distance_rta(pair.gap0, v1r, v2r, a1rb, p)
                           : -kInf;
        break;
      case FunctionalScenario::kRatPlus:
        d_min = a2rb > 0.0
                    ? min_distance_rat_plus(pair.gap0, v1r, v2r, a2rb, p)
                    : -kInf;
        break;
      case FunctionalScenario::kRatMinus:
        d_min = a2rb > 0.0
                    ? min_distance_rat_minus(pair.gap0, v1r, v2r, a2rb, p)
                    : -kInf;
        break;
      case FunctionalScenario::kRtt:
        d_min = a1rb > 0.0
                    ? min_distance_rtt(pair.gap0, v1r, v2r, a1rb, p, fidelity)
                    : -kInf;
        break;
      case FunctionalScenario::kRaa:
        d_min = a1rb > 0.0
                    ? min_distance_raa(pair.gap0, v1r, v2r, a1rb, p, fidelity)
                    : -kInf;
        break;
      case FunctionalScenario::kTxt: {
        const auto txt = min_distance_txt(pair, p, fidelity);
        if (!txt) continue;
        d_min = *txt;
        break;
      }
      case FunctionalScenario::kTxa:
        continue;
    }
    verdict.entries.push_back({scenario, d_min, d_min <= 0.0});
  }

  verdict.relevant = std::any_of(verdict.entries.begin(),
                                 verdict.entries.end(),
                                 [](const auto& e) { return e.triggered; });
  return verdict;
}

}  // namespace relscan
