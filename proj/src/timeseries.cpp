#include "dimertrap/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dimertrap {

double TimeSeries::time_average(double a, double b) const {
  if (!(dt > 0.0)) throw std::invalid_argument("time series has dt <= 0");
  if (values.size() < 2)
    throw std::invalid_argument("time average needs at least two samples");
  if (!(b > a)) throw std::invalid_argument("empty averaging window");

  const double slack = 1e-9 * dt;
  if (a < t_start - slack || b > t_end() + slack)
    throw std::out_of_range("averaging window outside the sampled range");
  a = std::max(a, t_start);
  b = std::min(b, t_end());

  // The window edges may fall between samples; integrate the piecewise
  // linear interpolant segment by segment so linear data stays exact.
  std::size_t inside = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double t = time_at(i);
    if (t >= a - slack && t <= b + slack) ++inside;
  }
  if (inside < 2)
    throw std::out_of_range("averaging window must contain at least two samples");

  const auto value_at = [&](std::size_t seg, double t) {
    const double frac = (t - time_at(seg)) / dt;
    return values[seg] + frac * (values[seg + 1] - values[seg]);
  };

  const auto first_seg =
      static_cast<std::size_t>(std::max(0.0, std::floor((a - t_start) / dt)));
  double integral = 0.0;
  for (std::size_t i = first_seg; i + 1 < values.size(); ++i) {
    const double lo = std::max(time_at(i), a);
    const double hi = std::min(time_at(i + 1), b);
    if (hi <= lo) {
      if (time_at(i) > b) break;
      continue;
    }
    integral += 0.5 * (value_at(i, lo) + value_at(i, hi)) * (hi - lo);
  }
  return integral / (b - a);
}

}  // namespace dimertrap
