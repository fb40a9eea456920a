#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace dimertrap {

/// Thrown when a configuration violates its constraints. Carries the full
/// list of violations so callers can report everything at once.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// Physical configuration of the two-well trap, shared by the quantum and
/// mean-field models. J sets the energy scale, hbar the time scale; both
/// default to 1 so times come out in units of t0/(2 pi).
struct DimerParams {
  double j = 1.0;       // tunneling rate, > 0
  double u = 0.0;       // on-site interaction
  int n_particles = 1;  // >= 1
  double eps_left = 0.0;
  double eps_right = 0.0;
  double hbar = 1.0;

  /// Throws ValidationError unless j > 0, n_particles >= 1 and hbar > 0.
  void validate() const;

  /// Scaled interaction U(N-1)/J. The mean-field self-trapping threshold
  /// sits at 2.
  double lambda() const { return u * (n_particles - 1) / j; }

  /// Rabi period 2 pi hbar / J of the noninteracting dimer.
  double t0() const { return 2.0 * std::numbers::pi * hbar / j; }

  /// Noninteracting Rabi frequency omega_0 = J / hbar.
  double rabi_frequency() const { return j / hbar; }

  /// Effective mean-field nonlinearity U(N-1).
  double nonlinearity() const { return u * (n_particles - 1); }

  /// Parameters with a prescribed scaled interaction, U = lambda J/(N-1).
  /// Mean-field dynamics only sees U(N-1), so the default N = 2 keeps
  /// lambda() exact without caring about the particle number.
  static DimerParams from_lambda(double lambda, int n_particles = 2,
                                 double j = 1.0);
};

inline constexpr double state_construction_tolerance = 1e-12;
inline constexpr double state_propagation_tolerance = 1e-10;

/// Pair of on-site amplitudes with |c_L|^2 + |c_R|^2 = 1, checked at
/// construction. z() is derived from p() so that z + 2p = 1 holds exactly.
class MeanFieldState {
 public:
  MeanFieldState(std::complex<double> c_left, std::complex<double> c_right,
                 double norm_tolerance = state_construction_tolerance);

  static MeanFieldState all_left() { return {1.0, 0.0}; }

  std::complex<double> c_left() const { return c_left_; }
  std::complex<double> c_right() const { return c_right_; }

  /// Right-well occupation |c_R|^2, clamped to [0, 1].
  double p() const;
  /// Population imbalance (n_L - n_R)/N = 1 - 2 p(), in [-1, 1].
  double z() const { return 1.0 - 2.0 * p(); }
  /// Relative phase arg c_R - arg c_L, reduced to (-pi, pi].
  double theta() const;

  double norm_squared() const;

 private:
  std::complex<double> c_left_, c_right_;
};

/// Mean-field energy per particle,
///   H/N = -J Re(c_L* c_R) + (U/2)(N-1)(|c_L|^4 + |c_R|^4)
///         + eps_L |c_L|^2 + eps_R |c_R|^2.
double meanfield_energy_per_particle(const MeanFieldState& state,
                                     const DimerParams& params);

/// Amplitudes over the number basis |N-n, n>, with n = number of particles
/// in the right well, index 0..N. |N,0> (everything left) is index 0.
class FockVector {
 public:
  explicit FockVector(std::vector<std::complex<double>> amps,
                      double norm_tolerance = state_propagation_tolerance);

  static FockVector basis_state(int n_particles, int n_right);
  static FockVector all_left(int n_particles) {
    return basis_state(n_particles, 0);
  }

  int n_particles() const { return static_cast<int>(amps_.size()) - 1; }
  std::size_t size() const { return amps_.size(); }
  const std::vector<std::complex<double>>& amps() const { return amps_; }
  const std::complex<double>& operator[](std::size_t n) const {
    return amps_[n];
  }

  double norm() const;

  /// <n_L - n_R>/N = sum_n |a_n|^2 (N - 2n)/N.
  double imbalance() const;

 private:
  std::vector<std::complex<double>> amps_;
};

}  // namespace dimertrap
