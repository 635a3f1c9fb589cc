#pragma once

#include <vector>

#include "relscan/errors.hpp"

namespace relscan {

/// Empirical cumulative distribution: right-continuous step function
/// with F(x) = (number of samples <= x) / n.
class Ecdf {
 public:
  /// Throws EmptySample on empty input; values must be finite.
  explicit Ecdf(std::vector<double> values);

  double eval(double x) const;
  /// Smallest sample value v with F(v) >= q, for q in (0, 1].
  double quantile(double q) const;

  const std::vector<double>& sorted_values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

 private:
  std::vector<double> values_;
};

}  // namespace relscan
