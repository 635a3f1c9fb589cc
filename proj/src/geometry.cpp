#include "relscan/geometry.hpp"

namespace relscan::geometry {

Vector2 connecting_vector(const Vector2& r1, const Vector2& r2) {
  return r2 - r1;
}

double radial_distance(const Vector2& d) { return d.norm(); }

double radial_speed(const Vector2& v, const Vector2& d) {
  const double dist = d.norm();
  if (dist <= kDistanceEpsilon) {
    throw DegenerateGeometry("radial_speed: connecting vector too short");
  }
  return std::abs(v.dot(d)) / dist;
}

double radial_braking_accel(const Vector2& v, const Vector2& d, double a_b) {
  if (a_b <= 0.0) {
    throw InvalidParams("radial_braking_accel: a_b must be positive");
  }
  const double speed = v.norm();
  if (speed < kVelocityEpsilon) {
    return a_b;
  }
  return a_b * radial_speed(v, d) / speed;
}

LaneFrame lane_frame(const Vector2& v2) {
  const double speed = v2.norm();
  if (speed <= kVelocityEpsilon) {
    throw DegenerateGeometry("lane_frame: velocity too small to define a lane");
  }
  const Vector2 parallel{v2.x / speed, v2.y / speed};
  return LaneFrame{parallel, parallel.rotated90()};
}

std::pair<double, double> decompose(const Vector2& v, const LaneFrame& frame) {
  return {v.dot(frame.perpendicular), v.dot(frame.parallel)};
}

}  // namespace relscan::geometry
