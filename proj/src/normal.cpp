#include "dimertrap/normal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dimertrap {

namespace {

constexpr double inv_sqrt_2pi = 0.3989422804014326779;
constexpr double sqrt_2 = std::numbers::sqrt2;

// Acklam's rational approximation to the normal quantile (relative error
// below 1.2e-9 everywhere). Good enough as a Newton seed.
double quantile_seed(double q) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double q_low = 0.02425;

  if (q < q_low) {
    const double r = std::sqrt(-2.0 * std::log(q));
    return (((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
           ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
  }
  if (q > 1.0 - q_low) {
    const double r = std::sqrt(-2.0 * std::log(1.0 - q));
    return -(((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
           ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
  }
  const double r = q - 0.5;
  const double s = r * r;
  return (((((a[0] * s + a[1]) * s + a[2]) * s + a[3]) * s + a[4]) * s + a[5]) * r /
         (((((b[0] * s + b[1]) * s + b[2]) * s + b[3]) * s + b[4]) * s + 1.0);
}

}  // namespace

double normal_pdf(double x) { return inv_sqrt_2pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / sqrt_2); }

double normal_quantile(double q) {
  if (!(q > 0.0 && q < 1.0))
    throw std::domain_error("normal_quantile requires q in (0, 1)");
  double x = quantile_seed(q);
  const double density = normal_pdf(x);
  if (density > 0.0) x -= (normal_cdf(x) - q) / density;
  return x;
}

}  // namespace dimertrap
