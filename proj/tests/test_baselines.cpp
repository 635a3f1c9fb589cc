#include <doctest.h>

#include <random>

#include "relscan/baselines.hpp"

using namespace relscan;
using geometry::Vector2;

namespace {

PairState closing_pair(double gap0, double v_ego, double v_ooi) {
  ObjectState ego{1, {0, 0}, {v_ego, 0}, 0.0};
  ObjectState ooi{2, {gap0, 0}, {v_ooi, 0}, 0.0};
  return PairState::make(ego, ooi);
}

}  // namespace

TEST_CASE("headway distance") {
  const BaselineThresholds th;
  CHECK(headway_distance(30, th) == doctest::Approx(60.0));
  CHECK(headway_distance(0, th) == doctest::Approx(0.0));
  CHECK(headway_distance(44.4, th) == doctest::Approx(88.8));
}

TEST_CASE("time to collision") {
  CHECK(*time_to_collision(closing_pair(100, 25, 0)) == doctest::Approx(4.0));
  CHECK(!time_to_collision(closing_pair(100, -10, 5)).has_value());
  // Contact with positive closing speed.
  ObjectState ego{1, {0, 0}, {10, 0}, 1.0};
  ObjectState ooi{2, {2, 0}, {0, 0}, 1.0};
  CHECK(*time_to_collision(PairState::make(ego, ooi)) ==
        doctest::Approx(0.0));
}

TEST_CASE("baseline flags") {
  const BaselineThresholds th;
  SUBCASE("close and closing") {
    const auto flags = baseline_flags(closing_pair(50, 30, 5), th);
    CHECK(flags.headway_relevant);
    CHECK(flags.ttc_relevant);
  }
  SUBCASE("far and slowly closing") {
    const auto flags = baseline_flags(closing_pair(100, 30, 20), th);
    CHECK(!flags.headway_relevant);
    CHECK(!flags.ttc_relevant);
  }
  SUBCASE("receding") {
    const auto flags = baseline_flags(closing_pair(100, -10, 10), th);
    CHECK(!flags.headway_relevant);
    CHECK(!flags.ttc_relevant);
  }
}

TEST_CASE("TTC is scale covariant") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> gap(1.0, 300.0);
  std::uniform_real_distribution<double> speed(1.0, 50.0);
  for (int i = 0; i < 300; ++i) {
    const double g = gap(rng);
    const double v = speed(rng);
    const auto base = time_to_collision(closing_pair(g, v, 0));
    const auto doubled = time_to_collision(closing_pair(2 * g, 2 * v, 0));
    REQUIRE(base.has_value());
    REQUIRE(doubled.has_value());
    CHECK(*base == doctest::Approx(*doubled));
  }
}
