#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "dimertrap/dimer.hpp"
#include "dimertrap/timeseries.hpp"

namespace dimertrap {

/// Conservation targets the integrator must reach over a run; the step is
/// halved (up to max_step_halvings times) until both hold.
inline constexpr double norm_drift_target = 1e-10;
inline constexpr double energy_drift_target = 1e-8;
inline constexpr int max_step_halvings = 6;

/// Fixed-step integration setup. Times are absolute; dt = 0 picks
/// 1e-3 t0, sample_every = 0 picks roughly one sample per t0/100.
struct IntegratorConfig {
  double dt = 0.0;
  double t_end = 0.0;
  int sample_every = 0;
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& msg, double norm_drift,
                   double energy_drift, double dt_final, int halvings);

  double norm_drift() const { return norm_drift_; }
  double energy_drift() const { return energy_drift_; }
  double dt_final() const { return dt_final_; }
  int halvings() const { return halvings_; }

 private:
  double norm_drift_, energy_drift_, dt_final_;
  int halvings_;
};

/// Trajectory of the two-mode equations: imbalance samples plus the full
/// amplitude record at the same times. Norm is checked, never reimposed.
struct GpeTrajectory {
  TimeSeries z;
  std::vector<std::complex<double>> amp_left;
  std::vector<std::complex<double>> amp_right;
  double dt_used = 0.0;
  int halvings = 0;
  double norm_drift = 0.0;
  double energy_drift = 0.0;  // relative to max(|E0|, J)

  MeanFieldState state_at(std::size_t i) const;
};

struct AmplitudeDerivatives {
  std::complex<double> d_left;
  std::complex<double> d_right;
};

/// Right-hand side of the discrete nonlinear two-mode equations,
///   i hbar d c_L/dt = -(J/2) c_R + (eps_L + U(N-1)|c_L|^2) c_L
/// and mirrored for c_R.
AmplitudeDerivatives gpe_rhs(const MeanFieldState& state,
                             const DimerParams& params);

/// Classic fixed-step 4th-order integration from `initial`. The full run is
/// repeated with halved steps until norm drift < 1e-10 and energy drift
/// < 1e-8; IntegrationError carries the achieved drifts if six halvings
/// are not enough. Sample times are independent of the halving level.
GpeTrajectory integrate_gpe(const MeanFieldState& initial,
                            const DimerParams& params,
                            const IntegratorConfig& config);

/// Noninteracting amplitude of the right well for the all-left start,
///   c_R(t) = i J/sqrt(J^2+D^2) exp(-i(eps_L+eps_R)t/2hbar)
///            sin(sqrt(J^2+D^2) t/2hbar),  D = eps_R - eps_L.
/// U is ignored. Exact solution of the linear two-mode equations.
std::complex<double> rabi_amplitude(double t, const DimerParams& params);

/// |c_R(t)|^2 of the noninteracting system, J^2/(J^2+D^2) sin^2(...).
double rabi_population(double t, const DimerParams& params);

/// Time-averaged imbalance of the trajectory started from the all-left
/// state, averaged over [window_start, window_end].
double meanfield_zbar(const DimerParams& params, double window_start,
                      double window_end, IntegratorConfig config = {});

}  // namespace dimertrap
