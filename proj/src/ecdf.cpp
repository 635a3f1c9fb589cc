#include "relscan/ecdf.hpp"

#include <algorithm>
#include <cmath>

namespace relscan {

Ecdf::Ecdf(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw EmptySample("an ECDF requires at least one sample");
  }
  for (const double v : values_) {
    if (!std::isfinite(v)) {
      throw EmptySample("ECDF samples must be finite");
    }
  }
  std::sort(values_.begin(), values_.end());
}

double Ecdf::eval(double x) const {
  const auto it = std::upper_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) /
         static_cast<double>(values_.size());
}

double Ecdf::quantile(double q) const {
  if (!(q > 0.0 && q <= 1.0)) {
    throw InvalidParams("quantile level must lie in (0, 1]");
  }
  const std::size_t rank = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(values_.size())));
  return values_[std::min(rank, values_.size()) - 1];
}

}  // namespace relscan
