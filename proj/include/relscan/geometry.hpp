#pragma once

#include <cmath>
#include <utility>

#include "relscan/errors.hpp"

namespace relscan::geometry {

/// Below this center distance the connecting direction is undefined.
inline constexpr double kDistanceEpsilon = 1e-6;  // m
/// Below this speed a motion direction is undefined.
inline constexpr double kVelocityEpsilon = 1e-6;  // m/s

/// Planar vector; meters for positions, m/s when used as a velocity.
/// Components must be finite.
struct Vector2 {
  double x = 0.0;
  double y = 0.0;

  Vector2() = default;
  Vector2(double x_in, double y_in) : x(x_in), y(y_in) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw std::invalid_argument("Vector2 components must be finite");
    }
  }

  Vector2 operator+(const Vector2& o) const { return {x + o.x, y + o.y}; }
  Vector2 operator-(const Vector2& o) const { return {x - o.x, y - o.y}; }
  Vector2 operator*(double k) const { return {x * k, y * k}; }
  double dot(const Vector2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
  /// Rotation by +90 degrees.
  Vector2 rotated90() const { return {-y, x}; }
};

inline Vector2 operator*(double k, const Vector2& v) { return v * k; }

/// Orthonormal frame aligned with a hypothetical straight lane:
/// `parallel` points along the lane, `perpendicular` is `parallel`
/// rotated by +90 degrees.
struct LaneFrame {
  Vector2 parallel;
  Vector2 perpendicular;
};

/// Vector from the ego position to the object position.
Vector2 connecting_vector(const Vector2& r1, const Vector2& r2);

/// Center-to-center distance |d|.
double radial_distance(const Vector2& d);

/// Magnitude of the velocity component along the connecting line.
/// Throws DegenerateGeometry when |d| <= kDistanceEpsilon.
double radial_speed(const Vector2& v, const Vector2& d);

/// Share of a braking capability available along the connecting line,
/// a_b * v_r / |v|. Falls back to the full a_b for |v| < kVelocityEpsilon
/// (the braking-distance term is zero there anyway).
double radial_braking_accel(const Vector2& v, const Vector2& d, double a_b);

/// Lane frame from a direction of movement.
/// Throws DegenerateGeometry when |v2| <= kVelocityEpsilon.
LaneFrame lane_frame(const Vector2& v2);

/// Velocity components (perpendicular, parallel) in a lane frame.
std::pair<double, double> decompose(const Vector2& v, const LaneFrame& frame);

}  // namespace relscan::geometry
