#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace dimertrap {

/// Uniformly sampled scalar observable. Times are absolute model time
/// unless `unit` says otherwise; producers that sample in Rabi periods
/// record "t0" here so files stay self-describing.
struct TimeSeries {
  double t_start = 0.0;
  double dt = 0.0;
  std::vector<double> values;
  std::string unit = "absolute";

  std::size_t size() const { return values.size(); }
  double time_at(std::size_t i) const { return t_start + dt * static_cast<double>(i); }
  double t_end() const { return values.empty() ? t_start : time_at(values.size() - 1); }

  /// Mean of the piecewise-linear interpolant over [a, b]. Exact for
  /// constant and linear data; O(dt^2) otherwise. Requires dt > 0, [a, b]
  /// inside the sampled range and at least two sample points inside.
  double time_average(double a, double b) const;
};

}  // namespace dimertrap
