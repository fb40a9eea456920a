#include "dimertrap/gpe.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dimertrap {

namespace {

using complexd = std::complex<double>;

struct Amplitudes {
  complexd left, right;
};

struct Rhs {
  double half_j, g, eps_l, eps_r, inv_hbar;

  Amplitudes operator()(const Amplitudes& c) const {
    const complexd minus_i_over_hbar(0.0, -inv_hbar);
    const complexd dl =
        minus_i_over_hbar *
        (-half_j * c.right + (eps_l + g * std::norm(c.left)) * c.left);
    const complexd dr =
        minus_i_over_hbar *
        (-half_j * c.left + (eps_r + g * std::norm(c.right)) * c.right);
    return {dl, dr};
  }
};

Amplitudes axpy(const Amplitudes& c, double h, const Amplitudes& d) {
  return {c.left + h * d.left, c.right + h * d.right};
}

Amplitudes rk4_step(const Rhs& rhs, const Amplitudes& c, double h) {
  const Amplitudes k1 = rhs(c);
  const Amplitudes k2 = rhs(axpy(c, 0.5 * h, k1));
  const Amplitudes k3 = rhs(axpy(c, 0.5 * h, k2));
  const Amplitudes k4 = rhs(axpy(c, h, k3));
  const double sixth = h / 6.0;
  return {c.left + sixth * (k1.left + 2.0 * (k2.left + k3.left) + k4.left),
          c.right + sixth * (k1.right + 2.0 * (k2.right + k3.right) + k4.right)};
}

double energy_of(const Amplitudes& c, const DimerParams& p) {
  const double pl = std::norm(c.left);
  const double pr = std::norm(c.right);
  return -p.j * (std::conj(c.left) * c.right).real() +
         0.5 * p.nonlinearity() * (pl * pl + pr * pr) + p.eps_left * pl +
         p.eps_right * pr;
}

}  // namespace

IntegrationError::IntegrationError(const std::string& msg, double norm_drift,
                                   double energy_drift, double dt_final,
                                   int halvings)
    : std::runtime_error(msg),
      norm_drift_(norm_drift),
      energy_drift_(energy_drift),
      dt_final_(dt_final),
      halvings_(halvings) {}

MeanFieldState GpeTrajectory::state_at(std::size_t i) const {
  return MeanFieldState(amp_left.at(i), amp_right.at(i),
                        state_propagation_tolerance);
}

AmplitudeDerivatives gpe_rhs(const MeanFieldState& state,
                             const DimerParams& params) {
  params.validate();
  const Rhs rhs{0.5 * params.j, params.nonlinearity(), params.eps_left,
                params.eps_right, 1.0 / params.hbar};
  const Amplitudes d = rhs({state.c_left(), state.c_right()});
  return {d.left, d.right};
}

GpeTrajectory integrate_gpe(const MeanFieldState& initial,
                            const DimerParams& params,
                            const IntegratorConfig& config) {
  params.validate();
  if (!(config.t_end > 0.0))
    throw std::invalid_argument("integration needs t_end > 0");

  const double t0 = params.t0();
  const double dt_request = config.dt > 0.0 ? config.dt : 1e-3 * t0;
  if (config.sample_every < 0)
    throw std::invalid_argument("sample_every must be >= 1 (or 0 for auto)");

  // Pin the sample grid before any halving: samples stay comparable across
  // refinement levels and reruns.
  long steps0 = std::max<long>(1, std::lround(config.t_end / dt_request));
  long stride0 =
      config.sample_every > 0
          ? config.sample_every
          : std::max<long>(1, std::lround(0.01 * t0 / (config.t_end / steps0)));
  steps0 = ((steps0 + stride0 - 1) / stride0) * stride0;  // whole strides

  const Rhs rhs{0.5 * params.j, params.nonlinearity(), params.eps_left,
                params.eps_right, 1.0 / params.hbar};
  const Amplitudes c0{initial.c_left(), initial.c_right()};
  const double e0 = energy_of(c0, params);
  const double energy_scale = std::max(std::abs(e0), params.j);

  double norm_drift = 0.0;
  double energy_drift = 0.0;
  double dt = 0.0;

  for (int halvings = 0; halvings <= max_step_halvings; ++halvings) {
    const long scale = 1L << halvings;
    const long steps = steps0 * scale;
    const long stride = stride0 * scale;
    dt = config.t_end / static_cast<double>(steps);

    GpeTrajectory out;
    const std::size_t n_samples = static_cast<std::size_t>(steps / stride) + 1;
    out.z.t_start = 0.0;
    out.z.dt = dt * static_cast<double>(stride);
    out.z.values.reserve(n_samples);
    out.amp_left.reserve(n_samples);
    out.amp_right.reserve(n_samples);

    norm_drift = 0.0;
    energy_drift = 0.0;
    Amplitudes c = c0;
    const auto record = [&](const Amplitudes& a) {
      const double n2 = std::norm(a.left) + std::norm(a.right);
      norm_drift = std::max(norm_drift, std::abs(n2 - 1.0));
      energy_drift = std::max(
          energy_drift, std::abs(energy_of(a, params) - e0) / energy_scale);
      out.z.values.push_back(std::norm(a.left) - std::norm(a.right));
      out.amp_left.push_back(a.left);
      out.amp_right.push_back(a.right);
    };

    record(c);
    for (long step = 1; step <= steps; ++step) {
      c = rk4_step(rhs, c, dt);
      if (step % stride == 0) record(c);
    }

    if (norm_drift < norm_drift_target && energy_drift < energy_drift_target) {
      out.dt_used = dt;
      out.halvings = halvings;
      out.norm_drift = norm_drift;
      out.energy_drift = energy_drift;
      return out;
    }
  }

  std::ostringstream msg;
  msg << "integration missed conservation targets after " << max_step_halvings
      << " halvings: norm drift " << norm_drift << ", energy drift "
      << energy_drift << " at dt " << dt;
  throw IntegrationError(msg.str(), norm_drift, energy_drift, dt,
                         max_step_halvings);
}

std::complex<double> rabi_amplitude(double t, const DimerParams& params) {
  params.validate();
  const double detuning = params.eps_right - params.eps_left;
  const double rabi = std::hypot(params.j, detuning);
  const double phase = -0.5 * (params.eps_left + params.eps_right) * t / params.hbar;
  const complexd carrier = std::polar(1.0, phase);
  // The leading i matches the initial slope i J/(2 hbar) of the equations
  // of motion for the all-left start.
  return complexd(0.0, 1.0) * (params.j / rabi) * carrier *
         std::sin(0.5 * rabi * t / params.hbar);
}

double rabi_population(double t, const DimerParams& params) {
  const double detuning = params.eps_right - params.eps_left;
  const double j2 = params.j * params.j;
  const double rabi = std::sqrt(j2 + detuning * detuning);
  const double s = std::sin(0.5 * rabi * t / params.hbar);
  return j2 / (j2 + detuning * detuning) * s * s;
}

double meanfield_zbar(const DimerParams& params, double window_start,
                      double window_end, IntegratorConfig config) {
  if (!(window_end > window_start) || window_start < 0.0)
    throw std::invalid_argument("averaging window must satisfy 0 <= a < b");
  if (config.t_end <= 0.0) config.t_end = window_end;
  const GpeTrajectory traj =
      integrate_gpe(MeanFieldState::all_left(), params, config);
  return traj.z.time_average(window_start, window_end);
}

}  // namespace dimertrap
