#include "dimertrap/semiclassics.hpp"

#include <cmath>
#include <stdexcept>

#include "dimertrap/normal.hpp"

namespace dimertrap {

namespace {

void require_positive_n(int n_particles) {
  if (n_particles < 1) throw std::invalid_argument("N must be at least 1");
}

double plateau_prefactor(double lambda, double x_star) {
  const double half_plus = 0.5 + x_star;
  const double disc = half_plus * half_plus - 1.0 / (lambda * lambda);
  // x* >= x0 guarantees disc >= 0; clamp the rounding dust.
  return 0.5 + std::sqrt(disc < 0.0 ? 0.0 : disc);
}

// xorshift-free 64-bit mixer; one value per call keeps cells independent.
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform in (0,1), strictly: 53 random bits centered in the cell.
double uniform_open(std::uint64_t& state) {
  return (static_cast<double>(splitmix64(state) >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

double FluctuationModel::sigma() const {
  require_positive_n(n_particles);
  return 0.5 / std::sqrt(static_cast<double>(n_particles));
}

double FluctuationModel::x0(double lambda) { return 1.0 / lambda - 0.5; }

double FluctuationModel::x_star(double lambda) const {
  const double x = x0(lambda);
  return std::max({x, 0.5 * (x + sigma()), 0.0});
}

double heuristic_p_amp(double lambda, double p_bar) {
  if (!(p_bar >= 0.0 && p_bar <= 0.5))
    throw std::invalid_argument("p_bar must lie in [0, 1/2]");
  const double detuning = lambda * (1.0 - 2.0 * p_bar);
  return 1.0 / (1.0 + detuning * detuning);
}

double heuristic_omega(double lambda, double p_bar, const DimerParams& params) {
  const double detuning = lambda * (1.0 - 2.0 * p_bar);
  return std::sqrt(1.0 + detuning * detuning) * params.j / (2.0 * params.hbar);
}

double heuristic_p_of_t(double t, double lambda, double p_bar,
                        const DimerParams& params) {
  const double s = std::sin(heuristic_omega(lambda, p_bar, params) * t);
  return heuristic_p_amp(lambda, p_bar) * s * s;
}

double zbar_meanfield_closed(double lambda) {
  if (std::abs(lambda) <= 2.0) return 0.0;
  return 0.5 + std::sqrt(0.25 - 1.0 / (lambda * lambda));
}

double cubic_residual(double zbar, double lambda) {
  return zbar * zbar * zbar - zbar * zbar + zbar / (lambda * lambda);
}

double zbar_fluct(double lambda, double delta_zbar) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const double half_plus = delta_zbar + 0.5;
  const double disc = half_plus * half_plus - 1.0 / (lambda * lambda);
  if (disc <= 0.0) return 0.0;
  return 0.5 - delta_zbar + std::sqrt(disc);
}

McEstimate zbar_mc_average_sigma(double lambda, double sigma,
                                 std::size_t samples, std::uint64_t seed,
                                 TailHandling tail) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
  if (samples < 10000)
    throw std::invalid_argument("Monte-Carlo average needs >= 1e4 samples");

  const double x_zero = FluctuationModel::x0(lambda);
  // Degenerate width: every draw is delta = 0, so the average IS the
  // mean-field closed form, bit for bit.
  if (sigma == 0.0) {
    const double value = 0.0 > x_zero ? zbar_fluct(lambda, 0.0) : 0.0;
    return {value, 0.0, samples};
  }
  const double far_left = -0.5 - 1.0 / lambda;
  // Plateau credit for far-left draws in corrected mode; sigma enters
  // through x* as in the corrected closed form.
  double plateau = 0.0;
  if (tail == TailHandling::corrected) {
    const double x_star = std::max({x_zero, 0.5 * (x_zero + sigma), 0.0});
    plateau = plateau_prefactor(lambda, x_star);
  }

  std::uint64_t state = seed;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double delta = sigma * normal_quantile(uniform_open(state));
    double value = 0.0;
    if (delta > x_zero) {
      value = zbar_fluct(lambda, delta);
    } else if (tail == TailHandling::corrected && delta < far_left) {
      value = plateau;
    }
    sum += value;
    sum_sq += value * value;
  }

  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);
  return {mean, std::sqrt(var / n), samples};
}

McEstimate zbar_mc_average(double lambda, int n_particles, std::size_t samples,
                           std::uint64_t seed, TailHandling tail) {
  const FluctuationModel model{n_particles};
  return zbar_mc_average_sigma(lambda, model.sigma(), samples, seed, tail);
}

double zbar_closed_form(double lambda, int n_particles) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const FluctuationModel model{n_particles};
  const double sigma = model.sigma();
  const double x_zero = FluctuationModel::x0(lambda);
  return plateau_prefactor(lambda, model.x_star(lambda)) *
         normal_cdf(-x_zero / sigma);
}

double zbar_closed_form_corrected(double lambda, int n_particles) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const FluctuationModel model{n_particles};
  const double sigma = model.sigma();
  const double weight = normal_cdf((0.5 - 1.0 / lambda) / sigma) +
                        normal_cdf((-0.5 - 1.0 / lambda) / sigma);
  return plateau_prefactor(lambda, model.x_star(lambda)) * weight;
}

double zbar_closed_form_dropped_term(double lambda, int n_particles) {
  const FluctuationModel model{n_particles};
  const double sigma = model.sigma();
  return sigma * normal_pdf(FluctuationModel::x0(lambda) / sigma);
}

CriticalInteraction lambda_critical(int n_particles, double alpha) {
  require_positive_n(n_particles);
  if (!(alpha > 0.0 && alpha < 0.5))
    throw std::domain_error("alpha must lie in (0, 1/2)");
  const double quantile = normal_quantile(2.0 * alpha);
  const double root_n = std::sqrt(static_cast<double>(n_particles));
  return {2.0 / (1.0 - quantile / root_n), 2.0 + 2.0 * quantile / root_n};
}

double number_fluctuation_std(int n_particles, double p) {
  require_positive_n(n_particles);
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("p must lie in [0, 1]");
  return std::sqrt(static_cast<double>(n_particles) * p * (1.0 - p));
}

}  // namespace dimertrap
