#include "relscan/scenarios.hpp"

#include <algorithm>

namespace relscan {

using geometry::Vector2;

std::string to_string(FunctionalScenario s) {
  switch (s) {
    case FunctionalScenario::kRta:
      return "R.TA";
    case FunctionalScenario::kRatPlus:
      return "R.AT+";
    case FunctionalScenario::kRatMinus:
      return "R.AT-";
    case FunctionalScenario::kRtt:
      return "R.TT";
    case FunctionalScenario::kRaa:
      return "R.AA";
    case FunctionalScenario::kTxt:
      return "T.XT";
    case FunctionalScenario::kTxa:
      return "T.XA";
  }
  return "?";
}

PairState PairState::make(const ObjectState& ego, const ObjectState& ooi) {
  PairState pair;
  pair.ego = ego;
  pair.ooi = ooi;
  pair.d0 = geometry::connecting_vector(ego.r, ooi.r);
  pair.gap0 = pair.d0.norm() - ego.s - ooi.s;
  return pair;
}

double sign_tolerance(const Vector2& d0, const Vector2& v) {
  return 1e-9 * std::max(1.0, d0.norm() * v.norm());
}

std::vector<FunctionalScenario> classify_radial(const PairState& pair) {
  if (pair.d0.norm() <= geometry::kDistanceEpsilon) {
    throw DegenerateGeometry("classify_radial: objects coincide");
  }
  const double p1 = pair.d0.dot(pair.ego.v);
  const double p2 = pair.d0.dot(pair.ooi.v);
  const double tol1 = sign_tolerance(pair.d0, pair.ego.v);
  const double tol2 = sign_tolerance(pair.d0, pair.ooi.v);

  // Boundary projections hypothesize both branches.
  const bool ego_toward = p1 > -tol1;
  const bool ego_away = p1 < tol1;
  const bool ooi_away = p2 > -tol2;
  const bool ooi_toward = p2 < tol2;

  std::vector<FunctionalScenario> out;
  if (ego_toward && ooi_away) out.push_back(FunctionalScenario::kRta);
  if (ego_away && ooi_toward) {
    out.push_back(FunctionalScenario::kRatPlus);
    out.push_back(FunctionalScenario::kRatMinus);
  }
  if (ego_toward && ooi_toward) out.push_back(FunctionalScenario::kRtt);
  if (ego_away && ooi_away) out.push_back(FunctionalScenario::kRaa);
  std::sort(out.begin(), out.end());
  return out;
}

FunctionalScenario classify_tangential(const PairState& pair) {
  if (pair.d0.norm() <= geometry::kDistanceEpsilon) {
    throw DegenerateGeometry("classify_tangential: objects coincide");
  }
  const double p2 = pair.d0.dot(pair.ooi.v);
  const double tol2 = sign_tolerance(pair.d0, pair.ooi.v);
  return p2 < -tol2 ? FunctionalScenario::kTxt : FunctionalScenario::kTxa;
}

std::vector<FunctionalScenario> enumerate_hypotheses(const PairState& pair) {
  std::vector<FunctionalScenario> out = classify_radial(pair);
  if (classify_tangential(pair) == FunctionalScenario::kTxt) {
    out.push_back(FunctionalScenario::kTxt);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace relscan
