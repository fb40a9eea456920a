#include "dimertrap/fock.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace dimertrap {

namespace {

constexpr std::size_t time_chunk = 1024;  // bounds the phase-matrix memory

Eigen::VectorXd imbalance_weights(int n_particles) {
  const double n = static_cast<double>(n_particles);
  Eigen::VectorXd w(n_particles + 1);
  for (int k = 0; k <= n_particles; ++k) w(k) = (n - 2.0 * k) / n;
  return w;
}

}  // namespace

Eigen::MatrixXd FockHamiltonian::dense() const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  m.diagonal() = diag;
  for (Eigen::Index i = 0; i + 1 < dim; ++i) {
    m(i, i + 1) = offdiag(i);
    m(i + 1, i) = offdiag(i);
  }
  return m;
}

FockHamiltonian build_hamiltonian(const DimerParams& params, int particle_cap) {
  params.validate();
  const int n = params.n_particles;
  if (n > particle_cap) {
    std::ostringstream msg;
    msg << "N = " << n << " exceeds the dense-propagation cap " << particle_cap;
    throw CapacityError(msg.str());
  }

  FockHamiltonian h;
  h.params = params;
  h.diag.resize(n + 1);
  h.offdiag.resize(n);
  for (int k = 0; k <= n; ++k) {
    const double left = static_cast<double>(n - k);
    const double right = static_cast<double>(k);
    h.diag(k) = 0.5 * params.u * (left * (left - 1.0) + right * (right - 1.0)) +
                params.eps_left * left + params.eps_right * right;
  }
  for (int k = 0; k < n; ++k)
    h.offdiag(k) = -0.5 * params.j * std::sqrt((k + 1.0) * (n - k));
  return h;
}

SpectralPropagator::SpectralPropagator(const FockHamiltonian& h)
    : params_(h.params) {
  const Eigen::MatrixXd dense = h.dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(h.diag, h.offdiag, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    // The QL iteration can stall on the quasi-degenerate doublets that
    // appear high in the spectrum at strong interaction. Householder
    // tridiagonalization of the dense matrix reshuffles the problem enough
    // to converge; the residual checks below vet the result either way.
    solver.compute(dense);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("eigendecomposition failed for N = " +
                               std::to_string(h.n_particles()));
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();

  const double h_scale = dense.cwiseAbs().maxCoeff();
  reconstruction_residual_ =
      (dense - eigenvectors_ * eigenvalues_.asDiagonal() *
                   eigenvectors_.transpose())
          .cwiseAbs()
          .maxCoeff() /
      (h_scale > 0.0 ? h_scale : 1.0);
  const auto dim = eigenvectors_.cols();
  orthogonality_error_ = (eigenvectors_.transpose() * eigenvectors_ -
                          Eigen::MatrixXd::Identity(dim, dim))
                             .cwiseAbs()
                             .maxCoeff();
  if (reconstruction_residual_ > 1e-9 || orthogonality_error_ > 1e-10) {
    std::ostringstream msg;
    msg << "eigendecomposition out of tolerance: reconstruction residual "
        << reconstruction_residual_ << ", orthogonality error "
        << orthogonality_error_;
    throw std::runtime_error(msg.str());
  }
}

void SpectralPropagator::spectral_coefficients(const FockVector& psi0,
                                               Eigen::VectorXd& re,
                                               Eigen::VectorXd& im) const {
  const auto dim = eigenvalues_.size();
  if (psi0.size() != static_cast<std::size_t>(dim))
    throw std::invalid_argument("state dimension does not match N + 1");
  Eigen::VectorXd a(dim), b(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    a(k) = psi0[k].real();
    b(k) = psi0[k].imag();
  }
  re = eigenvectors_.transpose() * a;
  im = eigenvectors_.transpose() * b;
}

// psi(t) = V diag(e^{-i E t/hbar}) w split into real and imaginary parts,
// so everything runs as real matrix products.
void SpectralPropagator::evolve_chunk(const Eigen::VectorXd& w_re,
                                      const Eigen::VectorXd& w_im,
                                      std::span<const double> times,
                                      Eigen::MatrixXd& out_re,
                                      Eigen::MatrixXd& out_im) const {
  const Eigen::Index dim = eigenvalues_.size();
  const auto count = static_cast<Eigen::Index>(times.size());
  Eigen::MatrixXd phase_re(dim, count), phase_im(dim, count);
  for (Eigen::Index c = 0; c < count; ++c) {
    const double t_over_hbar = times[static_cast<std::size_t>(c)] / params_.hbar;
    for (Eigen::Index k = 0; k < dim; ++k) {
      const double theta = eigenvalues_(k) * t_over_hbar;
      const double cos_t = std::cos(theta);
      const double sin_t = std::sin(theta);
      phase_re(k, c) = w_re(k) * cos_t + w_im(k) * sin_t;
      phase_im(k, c) = w_im(k) * cos_t - w_re(k) * sin_t;
    }
  }
  out_re.noalias() = eigenvectors_ * phase_re;
  out_im.noalias() = eigenvectors_ * phase_im;
}

FockVector SpectralPropagator::apply(const FockVector& psi0, double t) const {
  return propagate(psi0, std::span<const double>(&t, 1)).front();
}

std::vector<FockVector> SpectralPropagator::propagate(
    const FockVector& psi0, std::span<const double> times) const {
  Eigen::VectorXd w_re, w_im;
  spectral_coefficients(psi0, w_re, w_im);
  const Eigen::Index dim = eigenvalues_.size();

  std::vector<FockVector> out;
  out.reserve(times.size());
  Eigen::MatrixXd psi_re, psi_im;
  for (std::size_t start = 0; start < times.size(); start += time_chunk) {
    const std::size_t count = std::min(time_chunk, times.size() - start);
    evolve_chunk(w_re, w_im, times.subspan(start, count), psi_re, psi_im);
    for (std::size_t c = 0; c < count; ++c) {
      std::vector<std::complex<double>> amps(dim);
      for (Eigen::Index k = 0; k < dim; ++k)
        amps[static_cast<std::size_t>(k)] = {
            psi_re(k, static_cast<Eigen::Index>(c)),
            psi_im(k, static_cast<Eigen::Index>(c))};
      out.emplace_back(std::move(amps));
    }
  }
  return out;
}

std::vector<double> SpectralPropagator::imbalance_trajectory(
    const FockVector& psi0, std::span<const double> times) const {
  Eigen::VectorXd w_re, w_im;
  spectral_coefficients(psi0, w_re, w_im);
  const Eigen::VectorXd weights = imbalance_weights(params_.n_particles);

  std::vector<double> out;
  out.reserve(times.size());
  Eigen::MatrixXd psi_re, psi_im;
  for (std::size_t start = 0; start < times.size(); start += time_chunk) {
    const std::size_t count = std::min(time_chunk, times.size() - start);
    evolve_chunk(w_re, w_im, times.subspan(start, count), psi_re, psi_im);
    for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(count); ++c)
      out.push_back((psi_re.col(c).cwiseAbs2() + psi_im.col(c).cwiseAbs2())
                        .dot(weights));
  }
  return out;
}

std::vector<FockVector> propagate(const FockVector& psi0,
                                  const FockHamiltonian& h,
                                  std::span<const double> times) {
  return SpectralPropagator(h).propagate(psi0, times);
}

TimeSeries imbalance_series(std::span<const FockVector> states, double t_start,
                            double dt) {
  TimeSeries series;
  series.t_start = t_start;
  series.dt = dt;
  series.values.reserve(states.size());
  for (const auto& psi : states) series.values.push_back(psi.imbalance());
  return series;
}

double exact_zbar(const DimerParams& params, double window_start,
                  double window_end, double dt_sample) {
  params.validate();
  const double t0 = params.t0();
  if (window_end < 0.0) window_end = 100.0 * t0;
  if (dt_sample <= 0.0) dt_sample = 0.01 * t0;
  if (dt_sample > t0 / 50.0)
    throw std::invalid_argument("dt_sample must be at most t0/50");
  if (!(window_end > window_start) || window_start < 0.0)
    throw std::invalid_argument("averaging window must satisfy 0 <= a < b");

  const auto steps = static_cast<std::size_t>(
      std::ceil((window_end - window_start) / dt_sample - 1e-9));
  const double dt = (window_end - window_start) / static_cast<double>(steps);
  std::vector<double> times(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i)
    times[i] = window_start + dt * static_cast<double>(i);

  const SpectralPropagator propagator(build_hamiltonian(params));
  TimeSeries series;
  series.t_start = window_start;
  series.dt = dt;
  series.values = propagator.imbalance_trajectory(
      FockVector::all_left(params.n_particles), times);
  return series.time_average(window_start, window_end);
}

}  // namespace dimertrap
