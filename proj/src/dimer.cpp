#include "dimertrap/dimer.hpp"

#include <cmath>
#include <sstream>

namespace dimertrap {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::ostringstream os;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i > 0) os << "; ";
    os << issues[i];
  }
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> issues)
    : std::invalid_argument(join_issues(issues)), issues_(std::move(issues)) {}

void DimerParams::validate() const {
  std::vector<std::string> issues;
  if (!(j > 0.0)) issues.push_back("J must be positive");
  if (n_particles < 1) issues.push_back("N must be at least 1");
  if (!(hbar > 0.0)) issues.push_back("hbar must be positive");
  if (!std::isfinite(u)) issues.push_back("U must be finite");
  if (!std::isfinite(eps_left) || !std::isfinite(eps_right))
    issues.push_back("on-site energies must be finite");
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

DimerParams DimerParams::from_lambda(double lambda, int n_particles, double j) {
  if (n_particles < 2)
    throw ValidationError({"from_lambda requires N >= 2 (lambda = U(N-1)/J)"});
  DimerParams p;
  p.j = j;
  p.n_particles = n_particles;
  p.u = lambda * j / static_cast<double>(n_particles - 1);
  p.validate();
  return p;
}

MeanFieldState::MeanFieldState(std::complex<double> c_left,
                               std::complex<double> c_right,
                               double norm_tolerance)
    : c_left_(c_left), c_right_(c_right) {
  const double n2 = std::norm(c_left_) + std::norm(c_right_);
  if (std::abs(n2 - 1.0) > norm_tolerance)
    throw std::invalid_argument("mean-field state is not normalized: |c|^2 = " +
                                std::to_string(n2));
}

double MeanFieldState::p() const {
  const double p = std::norm(c_right_);
  return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

double MeanFieldState::theta() const {
  double d = std::arg(c_right_) - std::arg(c_left_);
  const double two_pi = 2.0 * std::numbers::pi;
  while (d > std::numbers::pi) d -= two_pi;
  while (d <= -std::numbers::pi) d += two_pi;
  return d;
}

double MeanFieldState::norm_squared() const {
  return std::norm(c_left_) + std::norm(c_right_);
}

double meanfield_energy_per_particle(const MeanFieldState& state,
                                     const DimerParams& params) {
  const std::complex<double> cl = state.c_left();
  const std::complex<double> cr = state.c_right();
  // The hopping term is Hermitian; assert the rounding-level imaginary part
  // away instead of silently taking the real part of something complex.
  const std::complex<double> hop =
      -0.5 * params.j * (std::conj(cl) * cr + std::conj(cr) * cl);
  if (std::abs(hop.imag()) > 1e-14 * (1.0 + std::abs(hop.real())))
    throw std::logic_error("hopping energy acquired an imaginary part");
  const double pl = std::norm(cl);
  const double pr = std::norm(cr);
  return hop.real() + 0.5 * params.nonlinearity() * (pl * pl + pr * pr) +
         params.eps_left * pl + params.eps_right * pr;
}

FockVector::FockVector(std::vector<std::complex<double>> amps,
                       double norm_tolerance)
    : amps_(std::move(amps)) {
  if (amps_.empty())
    throw std::invalid_argument("Fock vector needs at least one amplitude");
  double n2 = 0.0;
  for (const auto& a : amps_) n2 += std::norm(a);
  if (std::abs(n2 - 1.0) > norm_tolerance)
    throw std::invalid_argument("Fock vector is not normalized: |psi|^2 = " +
                                std::to_string(n2));
}

FockVector FockVector::basis_state(int n_particles, int n_right) {
  if (n_particles < 1)
    throw std::invalid_argument("basis_state requires N >= 1");
  if (n_right < 0 || n_right > n_particles)
    throw std::invalid_argument("basis_state requires 0 <= n_right <= N");
  std::vector<std::complex<double>> amps(n_particles + 1, 0.0);
  amps[n_right] = 1.0;
  return FockVector(std::move(amps));
}

double FockVector::norm() const {
  double n2 = 0.0;
  for (const auto& a : amps_) n2 += std::norm(a);
  return std::sqrt(n2);
}

double FockVector::imbalance() const {
  const double n = static_cast<double>(n_particles());
  double z = 0.0;
  for (std::size_t k = 0; k < amps_.size(); ++k)
    z += std::norm(amps_[k]) * (n - 2.0 * static_cast<double>(k));
  return z / n;
}

}  // namespace dimertrap
