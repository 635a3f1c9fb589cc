#include "relscan/params.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "relscan/errors.hpp"

namespace relscan {

namespace {

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

void CapabilityParams::validate() const {
  if (!finite_positive(a_max) || !finite_positive(a1_b) ||
      !finite_positive(a2_b) || !finite_positive(a1_g) ||
      !finite_positive(t1_r) || !finite_positive(t2_r)) {
    throw InvalidParams("capability parameters must be positive and finite");
  }
  if (a1_b > a_max || a2_b > a_max || a1_g > a_max) {
    throw InvalidParams("guaranteed accelerations must not exceed a_max");
  }
}

void BaselineThresholds::validate() const {
  if (!finite_positive(headway_s) || !finite_positive(ttc_s)) {
    throw InvalidParams("baseline thresholds must be positive and finite");
  }
}

std::string to_string(FormulaFidelity f) {
  return f == FormulaFidelity::kCorrected ? "corrected" : "literal";
}

ParamsFile parse_params(std::istream& in) {
  ParamsFile out;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw FormatError(line_no, "expected `key = value`");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value_str = trim(stripped.substr(eq + 1));
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(value_str, &used);
      if (used != value_str.size()) throw std::invalid_argument(value_str);
    } catch (const std::exception&) {
      throw FormatError(line_no, "non-numeric value for key `" + key + "`");
    }
    if (key == "a_max") {
      out.capabilities.a_max = value;
    } else if (key == "a1_b") {
      out.capabilities.a1_b = value;
    } else if (key == "a2_b") {
      out.capabilities.a2_b = value;
    } else if (key == "a1_g") {
      out.capabilities.a1_g = value;
    } else if (key == "t1_r") {
      out.capabilities.t1_r = value;
    } else if (key == "t2_r") {
      out.capabilities.t2_r = value;
    } else if (key == "headway_s") {
      out.thresholds.headway_s = value;
    } else if (key == "ttc_s") {
      out.thresholds.ttc_s = value;
    } else {
      throw FormatError(line_no, "unknown key `" + key + "`");
    }
  }
  out.capabilities.validate();
  out.thresholds.validate();
  return out;
}

ParamsFile load_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open params file: " + path);
  }
  return parse_params(in);
}

}  // namespace relscan
