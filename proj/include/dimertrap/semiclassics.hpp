#pragma once

#include <cstddef>
#include <cstdint>

#include "dimertrap/dimer.hpp"

namespace dimertrap {

/// Gaussian model of the initial number fluctuations for N particles:
/// the time-averaged imbalance acquires a random shift delta with
/// std(delta) = 1/(2 sqrt(N)).
struct FluctuationModel {
  int n_particles = 1;

  double sigma() const;                 // 1/(2 sqrt(N))
  static double x0(double lambda);      // 1/lambda - 1/2
  double x_star(double lambda) const;   // max(x0, (x0 + sigma)/2, 0)
};

/// Oscillation amplitude 1/(1 + Lambda^2 (1 - 2 p_bar)^2) of the
/// self-consistent two-mode ansatz. Requires p_bar in [0, 1/2].
double heuristic_p_amp(double lambda, double p_bar);

/// Angular frequency sqrt(1 + Lambda^2 (1 - 2 p_bar)^2) J/(2 hbar).
double heuristic_omega(double lambda, double p_bar, const DimerParams& params);

/// p(t) = p_amp sin^2(omega t) for the self-consistent oscillation.
double heuristic_p_of_t(double t, double lambda, double p_bar,
                        const DimerParams& params);

/// Mean-field closed form for the time-averaged imbalance:
/// 0 for |Lambda| <= 2, else 1/2 + sqrt(1/4 - 1/Lambda^2). The negative
/// root is rejected; it would not reach zbar -> 1 at large Lambda.
double zbar_meanfield_closed(double lambda);

/// Residual of the self-consistency cubic, zbar^3 - zbar^2 + zbar/Lambda^2.
double cubic_residual(double zbar, double lambda);

/// One fluctuation realization: 0 when (delta + 1/2)^2 - 1/Lambda^2 <= 0,
/// else 1/2 - delta + sqrt((delta + 1/2)^2 - 1/Lambda^2). Reduces to
/// zbar_meanfield_closed at delta = 0. The formula is the lowest-order
/// solution in delta, so it satisfies the underlying self-consistency
/// equation only up to O(delta^2).
double zbar_fluct(double lambda, double delta_zbar);

/// How draws far in the left Gaussian tail (delta < -1/2 - 1/Lambda) are
/// booked when averaging zbar_fluct. `truncated` drops them into the zero
/// branch, matching the closed form zbar_closed_form. `corrected` credits
/// them with the plateau prefactor, matching zbar_closed_form_corrected;
/// this only matters at enormous Lambda.
enum class TailHandling { truncated, corrected };

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Monte-Carlo average of zbar_fluct over delta ~ N(0, 1/(2 sqrt(N))).
/// Deterministic for a given seed. Requires samples >= 10^4.
McEstimate zbar_mc_average(double lambda, int n_particles,
                           std::size_t samples, std::uint64_t seed,
                           TailHandling tail = TailHandling::truncated);

/// Same average with an explicit fluctuation width; sigma = 0 degenerates
/// to the mean-field closed form exactly.
McEstimate zbar_mc_average_sigma(double lambda, double sigma,
                                 std::size_t samples, std::uint64_t seed,
                                 TailHandling tail = TailHandling::truncated);

/// Closed-form Gaussian average
///   zbar = (1/2 + sqrt((1/2 + x*)^2 - 1/Lambda^2)) Phi(-x0/sigma_N).
double zbar_closed_form(double lambda, int n_particles);

/// Variant keeping the far-left tail mass, which restores zbar -> 1 for
/// Lambda -> infinity:
///   zbar = (1/2 + sqrt((1/2 + x*)^2 - 1/Lambda^2))
///          [Phi((1/2 - 1/Lambda)/sigma_N) + Phi((-1/2 - 1/Lambda)/sigma_N)].
double zbar_closed_form_corrected(double lambda, int n_particles);

/// Magnitude of the sigma_N phi(x0/sigma_N) term the closed form drops.
/// Diagnostic only.
double zbar_closed_form_dropped_term(double lambda, int n_particles);

struct CriticalInteraction {
  double full = 0.0;        // 2 (1 - Phi^{-1}(2 alpha)/sqrt(N))^{-1}
  double asymptotic = 0.0;  // 2 + 2 Phi^{-1}(2 alpha)/sqrt(N)
};

/// Interaction strength where the averaged imbalance surpasses the
/// threshold alpha. Requires alpha in (0, 1/2), N >= 1.
CriticalInteraction lambda_critical(int n_particles, double alpha);

/// Particle-number spread sqrt(N p (1-p)) of a product state with
/// right-well occupation p.
double number_fluctuation_std(int n_particles, double p);

}  // namespace dimertrap
