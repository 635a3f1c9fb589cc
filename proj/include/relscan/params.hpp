#pragma once

#include <iosfwd>
#include <string>

namespace relscan {

/// System capabilities governing every worst-case distance formula.
/// Index 1 is the ego vehicle, index 2 the object under evaluation.
struct CapabilityParams {
  double a_max = 10.0;  // m/s^2, friction-limited worst-case acceleration
  double a1_b = 7.0;    // m/s^2, ego guaranteed braking
  double a2_b = 7.0;    // m/s^2, object assumed guaranteed braking
  double a1_g = 0.5;    // m/s^2, ego guaranteed longitudinal/lateral accel
  double t1_r = 1.5;    // s, ego reaction time
  double t2_r = 1.5;    // s, object assumed reaction time

  /// Throws InvalidParams unless all values are positive and the
  /// guaranteed accelerations do not exceed a_max.
  void validate() const;
};

/// Reference criticality thresholds.
struct BaselineThresholds {
  double headway_s = 2.0;  // s
  double ttc_s = 4.0;      // s

  void validate() const;
};

/// Selects between the derivation-consistent closed forms and the
/// printed variants they deviate from. Corrected is the default; the
/// literal forms are kept for numeric comparison only and are not
/// certified by the rollout oracle.
enum class FormulaFidelity { kCorrected, kLiteral };

std::string to_string(FormulaFidelity f);

/// Combined run parameters parsed from a flat `key = value` file with
/// keys a_max, a1_b, a2_b, a1_g, t1_r, t2_r, headway_s, ttc_s.
/// Missing keys keep their defaults; unknown keys are rejected.
struct ParamsFile {
  CapabilityParams capabilities;
  BaselineThresholds thresholds;
};

ParamsFile parse_params(std::istream& in);
ParamsFile load_params_file(const std::string& path);

}  // namespace relscan
