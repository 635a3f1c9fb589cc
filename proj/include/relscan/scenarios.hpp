#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relscan/geometry.hpp"

namespace relscan {

/// Functional scenario hypotheses distinguished by the approach geometry
/// of the ego (first letter after the dot) and the object (second).
/// R.* is the radial family, T.* the tangential family.
enum class FunctionalScenario {
  kRta,       // ego toward object, object moving away
  kRatPlus,   // ego away at adequate speed, object approaching
  kRatMinus,  // ego away below desired speed, object approaching
  kRtt,       // both moving toward each other
  kRaa,       // both moving away from each other
  kTxt,       // object approaching: potential merge in front of it
  kTxa,       // object receding: tangential motion never constrains
};

std::string to_string(FunctionalScenario s);

/// One traffic participant at one instant. Positions in meters,
/// velocities in m/s, `s` is the circumscribed size radius.
struct ObjectState {
  std::int64_t id = 0;
  geometry::Vector2 r;
  geometry::Vector2 v;
  double s = 0.0;
};

/// An ego/object pair with the derived connecting vector and the
/// size-adjusted initial gap.
struct PairState {
  ObjectState ego;
  ObjectState ooi;
  geometry::Vector2 d0;  // ooi.r - ego.r
  double gap0 = 0.0;     // |d0| - ego.s - ooi.s

  static PairState make(const ObjectState& ego, const ObjectState& ooi);
  double center_distance() const { return d0.norm(); }
};

/// Scale-aware tolerance below which a projection d0 . v counts as zero.
double sign_tolerance(const geometry::Vector2& d0, const geometry::Vector2& v);

/// Radial scenario hypotheses from the signs of d0.v1 and d0.v2.
/// Strict signs select exactly one of {R.TA, R.AT, R.TT, R.AA}; an R.AT
/// selection expands to both R.AT+ and R.AT-. Projections within
/// tolerance of zero expand to both of their branches, which can only
/// add hypotheses. Throws DegenerateGeometry when |d0| is too short.
std::vector<FunctionalScenario> classify_radial(const PairState& pair);

/// T.XT iff the object moves strictly toward the ego (d0 . v2 < 0),
/// otherwise T.XA.
FunctionalScenario classify_tangential(const PairState& pair);

/// Union of the radial and tangential hypotheses with T.XA dropped,
/// in the fixed order R.TA < R.AT+ < R.AT- < R.TT < R.AA < T.XT.
std::vector<FunctionalScenario> enumerate_hypotheses(const PairState& pair);

}  // namespace relscan
