#pragma once

#include <Eigen/Dense>
#include <span>
#include <stdexcept>
#include <vector>

#include "dimertrap/dimer.hpp"
#include "dimertrap/timeseries.hpp"

namespace dimertrap {

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int default_particle_cap = 5000;

/// Two-site Bose-Hubbard Hamiltonian over |N-n, n>, n = 0..N (n counts the
/// right well). Real symmetric tridiagonal:
///   diag[n]    = (U/2)[(N-n)(N-n-1) + n(n-1)] + eps_L (N-n) + eps_R n
///   offdiag[n] = -(J/2) sqrt((n+1)(N-n))
struct FockHamiltonian {
  DimerParams params;
  Eigen::VectorXd diag;     // N+1 entries
  Eigen::VectorXd offdiag;  // N entries

  int n_particles() const { return params.n_particles; }
  std::size_t dimension() const { return static_cast<std::size_t>(diag.size()); }
  Eigen::MatrixXd dense() const;
};

FockHamiltonian build_hamiltonian(const DimerParams& params,
                                  int particle_cap = default_particle_cap);

/// Propagation by full eigendecomposition,
///   psi(t) = V exp(-i E t / hbar) V^T psi(0),
/// unitary to rounding for arbitrary t, so long windows cost the same per
/// sample. Decomposition quality is checked at construction.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const FockHamiltonian& h);

  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }
  double reconstruction_residual() const { return reconstruction_residual_; }
  double orthogonality_error() const { return orthogonality_error_; }

  FockVector apply(const FockVector& psi0, double t) const;
  std::vector<FockVector> propagate(const FockVector& psi0,
                                    std::span<const double> times) const;
  /// z(t) for each time without materializing the states; used by sweeps.
  std::vector<double> imbalance_trajectory(const FockVector& psi0,
                                           std::span<const double> times) const;

 private:
  void spectral_coefficients(const FockVector& psi0, Eigen::VectorXd& re,
                             Eigen::VectorXd& im) const;
  void evolve_chunk(const Eigen::VectorXd& w_re, const Eigen::VectorXd& w_im,
                    std::span<const double> times, Eigen::MatrixXd& out_re,
                    Eigen::MatrixXd& out_im) const;

  DimerParams params_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  double reconstruction_residual_ = 0.0;
  double orthogonality_error_ = 0.0;
};

std::vector<FockVector> propagate(const FockVector& psi0,
                                  const FockHamiltonian& h,
                                  std::span<const double> times);

TimeSeries imbalance_series(std::span<const FockVector> states, double t_start,
                            double dt);

/// Time-averaged imbalance of |N,0> propagated exactly; window defaults to
/// [0, 100 t0] and the sample step to t0/100 (it must resolve the fastest
/// relevant frequency: dt_sample <= t0/50).
double exact_zbar(const DimerParams& params, double window_start = 0.0,
                  double window_end = -1.0, double dt_sample = 0.0);

}  // namespace dimertrap
