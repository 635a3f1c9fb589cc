#include <doctest.h>

#include <cmath>

#include "relscan/oracle.hpp"

using namespace relscan;
using namespace relscan::oracle;
using geometry::Vector2;

namespace {

CapabilityParams default_params() { return CapabilityParams{}; }

PairState pair_on_axis(double dist, const Vector2& v1, const Vector2& v2) {
  ObjectState ego{1, {0, 0}, v1, 0.0};
  ObjectState ooi{2, {dist, 0}, v2, 0.0};
  return PairState::make(ego, ooi);
}

}  // namespace

TEST_CASE("single vehicle stops after its braking distance") {
  ScenarioRollout s;
  s.accel_bound = 10.0;
  s.ego.v0 = 14.0;
  s.ego.phases = {Phase{-7.0, Phase::End::kVelocityZero, 0.0, 0.0}};
  s.ooi.x0 = 100.0;
  s.horizon = 3.0;
  const RolloutResult r = rollout(s, 1e-3);
  CHECK(r.final_gap == doctest::Approx(86.0).epsilon(1e-7));
  CHECK(r.min_gap == doctest::Approx(86.0).epsilon(1e-7));
}

TEST_CASE("both at rest stay at the initial gap") {
  ScenarioRollout s;
  s.accel_bound = 10.0;
  s.ooi.x0 = 42.0;
  s.horizon = 2.0;
  const RolloutResult r = rollout(s, 1e-3);
  CHECK(r.min_gap == doctest::Approx(42.0));
  CHECK(r.t_at_min == doctest::Approx(0.0));
}

TEST_CASE("halving dt does not grow the braking error") {
  ScenarioRollout s;
  s.accel_bound = 10.0;
  s.ego.v0 = 14.0;
  s.ego.phases = {Phase{-7.0, Phase::End::kVelocityZero, 0.0, 0.0}};
  s.ooi.x0 = 100.0;
  s.horizon = 3.0;
  const double e1 = std::abs(rollout(s, 2e-3).final_gap - 86.0);
  const double e2 = std::abs(rollout(s, 1e-3).final_gap - 86.0);
  CHECK(e2 <= 0.5 * e1 + 1e-9);
  CHECK(e1 <= 1e-9);  // per-step integration is exact for constant accel
}

TEST_CASE("friction bound is enforced") {
  ScenarioRollout s;
  s.accel_bound = 10.0;
  s.ego.v0 = 5.0;
  s.ego.phases = {Phase{11.0, Phase::End::kDuration, 1.0, 0.0}};
  s.horizon = 2.0;
  CHECK_THROWS_AS(rollout(s, 1e-3), InvalidProfile);
  CHECK_THROWS_AS(rollout(s, 1e-6), InvalidProfile);  // dt out of range too
}

TEST_CASE("worst-case profile structures match the scenario prose") {
  const auto p = default_params();
  SUBCASE("following") {
    const auto s =
        worst_case_profile(FunctionalScenario::kRta, {95, 30, 20, 7}, p);
    REQUIRE(s.has_value());
    REQUIRE(s->ego.phases.size() == 2);
    CHECK(s->ego.phases[0].accel == doctest::Approx(10.0));
    CHECK(s->ego.phases[0].duration == doctest::Approx(1.5));
    CHECK(s->ego.phases[1].accel == doctest::Approx(-7.0));
    CHECK(s->ego.phases[1].end == Phase::End::kVelocityZero);
    REQUIRE(s->ooi.phases.size() == 1);
    CHECK(s->ooi.phases[0].accel == doctest::Approx(-10.0));
    CHECK(s->ooi.phases[0].end == Phase::End::kVelocityZero);
  }
  SUBCASE("mutual approach keeps the object accelerating") {
    const auto s =
        worst_case_profile(FunctionalScenario::kRtt, {195, 30, 30, 7}, p);
    REQUIRE(s.has_value());
    REQUIRE(s->ooi.phases.size() == 1);
    CHECK(s->ooi.phases[0].accel == doctest::Approx(-10.0));
    CHECK(s->ooi.phases[0].end == Phase::End::kDuration);
    CHECK(s->ooi.phases[0].duration >= s->horizon);
  }
  SUBCASE("recession requires a reversal within the latency") {
    CHECK(!worst_case_profile(FunctionalScenario::kRaa, {50, 30, 30, 7}, p)
               .has_value());
    CHECK(worst_case_profile(FunctionalScenario::kRaa, {50, 10, 30, 7}, p)
              .has_value());
  }
}

TEST_CASE("rollouts reproduce the closed forms at the spec examples") {
  const auto p = default_params();
  SUBCASE("following") {
    const auto s =
        worst_case_profile(FunctionalScenario::kRta, {95, 30, 20, 7}, p);
    REQUIRE(s.has_value());
    const RolloutResult r = rollout(*s, 1e-4);
    const double closed = min_distance_rta(95, 30, 20, 7, p);
    CHECK(closed == doctest::Approx(-85.8928571).epsilon(1e-6));
    CHECK(std::abs(r.final_gap - closed) <= 1e-2);
    CHECK(std::abs(r.min_gap - closed) <= 1e-2);  // triggered: min is final
  }
  SUBCASE("object following") {
    const auto s =
        worst_case_profile(FunctionalScenario::kRatPlus, {45, 30, 35, 7}, p);
    REQUIRE(s.has_value());
    const RolloutResult r = rollout(*s, 1e-4);
    CHECK(std::abs(r.final_gap - min_distance_rat_plus(45, 30, 35, 7, p)) <=
          1e-2);
  }
  SUBCASE("slow ego") {
    const auto s = worst_case_profile(FunctionalScenario::kRatMinus,
                                      {95, 30, 31, 7}, p);
    REQUIRE(s.has_value());
    const RolloutResult r = rollout(*s, 1e-4);
    CHECK(std::abs(r.final_gap - min_distance_rat_minus(95, 30, 31, 7, p)) <=
          1e-2);
  }
  SUBCASE("mutual approach") {
    const auto s =
        worst_case_profile(FunctionalScenario::kRtt, {195, 30, 30, 7}, p);
    REQUIRE(s.has_value());
    const RolloutResult r = rollout(*s, 1e-4);
    const double closed =
        min_distance_rtt(195, 30, 30, 7, p, FormulaFidelity::kCorrected);
    CHECK(std::abs(r.final_gap - closed) <= 1e-2);
    CHECK(std::abs(r.min_gap - closed) <= 1e-2);
  }
  SUBCASE("mutual recession") {
    const auto s =
        worst_case_profile(FunctionalScenario::kRaa, {10, 5, 2, 7}, p);
    REQUIRE(s.has_value());
    const RolloutResult r = rollout(*s, 1e-4);
    const double closed =
        min_distance_raa(10, 5, 2, 7, p, FormulaFidelity::kCorrected);
    CHECK(std::abs(r.final_gap - closed) <= 1e-2);
  }
  SUBCASE("merge chain") {
    const auto pair = PairState::make(
        ObjectState{1, {80, 3.5}, {30, -1}, 0.0},
        ObjectState{2, {0, 0}, {31, 0}, 0.0});
    const auto dec = txt_decompose(pair);
    REQUIRE(dec.has_value());
    const auto s = txt_profile(*dec, p);
    REQUIRE(s.has_value());
    const RolloutResult r = rollout(*s, 1e-4);
    const auto closed =
        min_distance_txt(pair, p, FormulaFidelity::kCorrected);
    REQUIRE(closed.has_value());
    CHECK(std::abs(r.final_gap - *closed) <= 5e-2);
    // The lateral maneuver must end on the lane at rest.
    CHECK(std::abs(r.lat_end_offset) <= 1e-6);
    CHECK(std::abs(r.lat_end_vel) <= 1e-6);
  }
}

TEST_CASE("merge profile phases match the maneuver chain") {
  const auto p = default_params();
  TxtDecomposition dec;
  dec.lat_offset = 3.5;
  dec.lat_vel = -1.0;
  dec.lon_gap0 = 80.0;
  dec.v1_par = 30.0;
  dec.v2_speed = 31.0;
  const auto s = txt_profile(dec, p);
  REQUIRE(s.has_value());
  REQUIRE(s->ego_lat.has_value());
  // Lateral: decay at a_max, hold, steer toward and back at a1_g.
  REQUIRE(s->ego_lat->phases.size() == 4);
  CHECK(s->ego_lat->phases[0].accel == doctest::Approx(10.0));
  CHECK(s->ego_lat->phases[2].accel == doctest::Approx(-0.5));
  CHECK(s->ego_lat->phases[3].accel == doctest::Approx(0.5));
  // Longitudinal: constant, accelerate to the object's speed, stop.
  REQUIRE(s->ego.phases.size() == 3);
  CHECK(s->ego.phases[0].accel == doctest::Approx(0.0));
  CHECK(s->ego.phases[1].accel == doctest::Approx(0.5));
  CHECK(s->ego.phases[1].velocity_target == doctest::Approx(31.0));
  CHECK(s->ego.phases[2].accel == doctest::Approx(-10.0));
  // The object accelerates along its direction, then brakes.
  REQUIRE(s->ooi.phases.size() == 2);
  CHECK(s->ooi.phases[0].accel == doctest::Approx(10.0));
  CHECK(s->ooi.phases[1].accel == doctest::Approx(-7.0));
}

TEST_CASE("certifying an overlapping pair produces no samples") {
  const auto p = default_params();
  const auto pair = PairState::make(ObjectState{1, {0, 0}, {0, 0}, 2.0},
                                    ObjectState{2, {3, 0}, {0, 0}, 2.0});
  const CertifyReport report = certify_conservative(
      pair, p, FormulaFidelity::kCorrected, 100, 5, 1e-3);
  CHECK(report.samples == 0);
  CHECK(report.violations == 0);
}

TEST_CASE("certification of a triggered following pair") {
  const auto p = default_params();
  const auto pair = pair_on_axis(30, {30, 0}, {30, 0});
  const CertifyReport report = certify_conservative(
      pair, p, FormulaFidelity::kCorrected, 300, 7, 1e-3);
  CHECK(report.samples == 300);
  CHECK(report.violations == 0);
  CHECK(report.worst_margin >= -1e-3);
}

TEST_CASE("certification is deterministic in the seed") {
  const auto p = default_params();
  const CertifyReport a =
      certify_random(p, FormulaFidelity::kCorrected, 150, 42, 1e-3);
  const CertifyReport b =
      certify_random(p, FormulaFidelity::kCorrected, 150, 42, 1e-3);
  CHECK(a.samples == b.samples);
  CHECK(a.violations == b.violations);
  CHECK(a.skipped == b.skipped);
  CHECK(a.worst_margin == b.worst_margin);
  CHECK(a.worst_case == b.worst_case);
  const CertifyReport c =
      certify_random(p, FormulaFidelity::kCorrected, 150, 43, 1e-3);
  CHECK(c.worst_case != a.worst_case);
}

TEST_CASE("printed mutual-approach form is violated on long horizons") {
  const auto p = default_params();
  const auto pair = pair_on_axis(400, {50, 0}, {-50, 0});
  const CertifyReport report = certify_conservative(
      pair, p, FormulaFidelity::kLiteral, 300, 11, 1e-3);
  CHECK(report.violations > 0);  // documents the linear final term
  const CertifyReport corrected = certify_conservative(
      pair, p, FormulaFidelity::kCorrected, 300, 11, 1e-3);
  CHECK(corrected.violations == 0);
}
