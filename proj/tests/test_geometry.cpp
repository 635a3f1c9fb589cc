#include <doctest.h>

#include <cmath>
#include <random>

#include "relscan/geometry.hpp"

using namespace relscan;
using geometry::Vector2;

TEST_CASE("connecting vector points from ego to object") {
  const Vector2 a = geometry::connecting_vector({0, 0}, {3, 4});
  CHECK(a.x == doctest::Approx(3.0));
  CHECK(a.y == doctest::Approx(4.0));
  const Vector2 b = geometry::connecting_vector({1, 1}, {1, 1});
  CHECK(b.norm() == 0.0);
  const Vector2 c = geometry::connecting_vector({-2, 5}, {4, -3});
  CHECK(c.x == doctest::Approx(6.0));
  CHECK(c.y == doctest::Approx(-8.0));
}

TEST_CASE("vectors reject non-finite components") {
  CHECK_THROWS_AS(Vector2(std::nan(""), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Vector2(0.0, INFINITY), std::invalid_argument);
}

TEST_CASE("radial distance") {
  CHECK(geometry::radial_distance({3, 4}) == doctest::Approx(5.0));
  CHECK(geometry::radial_distance({0, 0}) == 0.0);
  CHECK(geometry::radial_distance({-6, 8}) == doctest::Approx(10.0));
}

TEST_CASE("radial speed is the projection magnitude") {
  CHECK(geometry::radial_speed({3, 4}, {1, 0}) == doctest::Approx(3.0));
  CHECK(geometry::radial_speed({0, 7}, {5, 0}) == doctest::Approx(0.0));
  CHECK(geometry::radial_speed({3, 4}, {3, 4}) == doctest::Approx(5.0));
  CHECK_THROWS_AS(geometry::radial_speed({1, 0}, {0, 0}), DegenerateGeometry);
}

TEST_CASE("radial braking reduction follows the heading") {
  CHECK(geometry::radial_braking_accel({3, 4}, {1, 0}, 7.0) ==
        doctest::Approx(4.2));
  CHECK(geometry::radial_braking_accel({5, 0}, {1, 0}, 7.0) ==
        doctest::Approx(7.0));
  // Zero speed: the full guarantee, the braking term vanishes anyway.
  CHECK(geometry::radial_braking_accel({0, 0}, {1, 0}, 7.0) ==
        doctest::Approx(7.0));
  CHECK_THROWS_AS(geometry::radial_braking_accel({1, 0}, {1, 0}, 0.0),
                  InvalidParams);
}

TEST_CASE("lane frame construction") {
  const auto f1 = geometry::lane_frame({2, 0});
  CHECK(f1.parallel.x == doctest::Approx(1.0));
  CHECK(f1.perpendicular.y == doctest::Approx(1.0));
  const auto f2 = geometry::lane_frame({0, -3});
  CHECK(f2.parallel.y == doctest::Approx(-1.0));
  CHECK(f2.perpendicular.x == doctest::Approx(1.0));
  const auto f3 = geometry::lane_frame({1, 1});
  CHECK(f3.parallel.x == doctest::Approx(std::sqrt(0.5)));
  CHECK(f3.perpendicular.x == doctest::Approx(-std::sqrt(0.5)));
  CHECK(f3.perpendicular.y == doctest::Approx(std::sqrt(0.5)));
  CHECK_THROWS_AS(geometry::lane_frame({0, 0}), DegenerateGeometry);
}

TEST_CASE("decompose returns (perpendicular, parallel)") {
  const auto f = geometry::lane_frame({1, 0});
  const auto [vp, vpar] = geometry::decompose({3, 4}, f);
  CHECK(vp == doctest::Approx(4.0));
  CHECK(vpar == doctest::Approx(3.0));
  const auto [zp, zpar] = geometry::decompose({0, 0}, f);
  CHECK(zp == 0.0);
  CHECK(zpar == 0.0);
  const auto f2 = geometry::lane_frame({1, 1});
  const auto [wp, wpar] = geometry::decompose({1, 1}, f2);
  CHECK(wp == doctest::Approx(0.0));
  CHECK(wpar == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("decompose/recompose round-trips and projection bounds") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-1000.0, 1000.0);
  for (int i = 0; i < 2000; ++i) {
    const Vector2 v{coord(rng), coord(rng)};
    Vector2 axis{coord(rng), coord(rng)};
    if (axis.norm() < 1e-3) axis = {1.0, 0.0};
    const auto frame = geometry::lane_frame(axis);
    const auto [vp, vpar] = geometry::decompose(v, frame);
    const Vector2 back = frame.perpendicular * vp + frame.parallel * vpar;
    CHECK(std::abs(back.x - v.x) <= 1e-9);
    CHECK(std::abs(back.y - v.y) <= 1e-9);
    CHECK(geometry::radial_speed(v, axis) <= v.norm() + 1e-9);
    const double a_red = geometry::radial_braking_accel(v, axis, 7.0);
    CHECK(a_red >= -1e-12);
    CHECK(a_red <= 7.0 + 1e-12);
  }
}

TEST_CASE("radial distance is rigid-motion invariant") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-500.0, 500.0);
  std::uniform_real_distribution<double> angle(0.0, 6.28318530717958648);
  for (int i = 0; i < 500; ++i) {
    const Vector2 r1{coord(rng), coord(rng)};
    const Vector2 r2{coord(rng), coord(rng)};
    const double a = angle(rng);
    const double c = std::cos(a), s = std::sin(a);
    const Vector2 shift{coord(rng), coord(rng)};
    const auto rot = [&](const Vector2& v) {
      return Vector2{c * v.x - s * v.y, s * v.x + c * v.y};
    };
    const double before =
        geometry::radial_distance(geometry::connecting_vector(r1, r2));
    const double after = geometry::radial_distance(geometry::connecting_vector(
        rot(r1) + shift, rot(r2) + shift));
    CHECK(before == doctest::Approx(after).epsilon(1e-9));
  }
}
