#pragma once

#include <string>
#include <vector>

#include "relscan/ecdf.hpp"

namespace relscan {

struct EcdfCurve {
  std::string label;
  const Ecdf* ecdf = nullptr;
};

/// Self-contained SVG with one step polyline per curve, axes in meters
/// and cumulative fraction, and a legend. Deterministic bytes for
/// identical input. Throws EmptySample when no curve is given.
std::string plot_ecdf_svg(const std::vector<EcdfCurve>& curves);

}  // namespace relscan
