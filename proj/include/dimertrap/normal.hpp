#pragma once

namespace dimertrap {

/// Standard normal density exp(-x^2/2)/sqrt(2 pi).
double normal_pdf(double x);

/// Standard normal cumulative distribution, evaluated through erfc so the
/// far tails keep full relative accuracy.
double normal_cdf(double x);

/// Inverse of normal_cdf on (0,1): rational-polynomial initial guess
/// sharpened by one Newton step against normal_cdf. |Phi(quantile(q)) - q|
/// stays below 1e-10 across q in [1e-8, 1 - 1e-8].
/// Throws std::domain_error for q outside (0,1).
double normal_quantile(double q);

}  // namespace dimertrap
