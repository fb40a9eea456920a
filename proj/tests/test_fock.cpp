#include <cmath>
#include <complex>
#include <doctest.h>
#include <numbers>

#include "dimertrap/fock.hpp"
#include "dimertrap/gpe.hpp"
#include "oracles.hpp"

using namespace dimertrap;

namespace {

double energy_expectation(const FockHamiltonian& h, const FockVector& psi) {
  const auto dim = static_cast<std::size_t>(h.dimension());
  std::complex<double> e = 0.0;
  for (std::size_t n = 0; n < dim; ++n) {
    std::complex<double> row = h.diag(n) * psi[n];
    if (n > 0) row += h.offdiag(n - 1) * psi[n - 1];
    if (n + 1 < dim) row += h.offdiag(n) * psi[n + 1];
    e += std::conj(psi[n]) * row;
  }
  return e.real();
}

}  // namespace

TEST_CASE("Hamiltonian assembly") {
  SUBCASE("single particle feels no interaction") {
    const DimerParams p{1.0, 123.0, 1};
    const FockHamiltonian h = build_hamiltonian(p);
    CHECK(h.diag(0) == 0.0);
    CHECK(h.diag(1) == 0.0);
    CHECK(h.offdiag(0) == doctest::Approx(-0.5));
    const SpectralPropagator prop(h);
    CHECK(prop.eigenvalues()(0) == doctest::Approx(-0.5));
    CHECK(prop.eigenvalues()(1) == doctest::Approx(0.5));
  }

  SUBCASE("two particles, hand-evaluated matrix") {
    const DimerParams p{1.3, 0.7, 2};
    const FockHamiltonian h = build_hamiltonian(p);
    CHECK(h.diag(0) == doctest::Approx(0.7));
    CHECK(h.diag(1) == doctest::Approx(0.0));
    CHECK(h.diag(2) == doctest::Approx(0.7));
    CHECK(h.offdiag(0) == doctest::Approx(-1.3 / std::numbers::sqrt2));
    CHECK(h.offdiag(1) == doctest::Approx(-1.3 / std::numbers::sqrt2));
  }

  SUBCASE("common on-site shift adds N eps to the diagonal") {
    DimerParams p{1.0, 0.05, 7};
    const FockHamiltonian base = build_hamiltonian(p);
    p.eps_left = p.eps_right = 0.31;
    const FockHamiltonian shifted = build_hamiltonian(p);
    for (int n = 0; n <= 7; ++n)
      CHECK(shifted.diag(n) ==
            doctest::Approx(base.diag(n) + 7.0 * 0.31).epsilon(1e-14));
    CHECK((shifted.offdiag - base.offdiag).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("assembled matrix is exactly symmetric") {
    const FockHamiltonian h =
        build_hamiltonian(DimerParams::from_lambda(2.7, 40));
    const Eigen::MatrixXd m = h.dense();
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("capacity cap") {
    CHECK_THROWS_AS(build_hamiltonian(DimerParams{1.0, 0.0, 5001}),
                    CapacityError);
    CHECK_NOTHROW(build_hamiltonian(DimerParams{1.0, 0.0, 500}, 600));
  }
}

TEST_CASE("eigenvalues against the Sturm-sequence oracle") {
  for (const int n : {1, 2, 3, 4}) {
    DimerParams p{1.1, 0.37, n};
    p.eps_left = 0.2;
    p.eps_right = -0.1;
    const FockHamiltonian h = build_hamiltonian(p);
    const SpectralPropagator prop(h);
    const auto reference = oracles::sturm_eigenvalues(h.diag, h.offdiag);
    REQUIRE(reference.size() == h.dimension());
    for (std::size_t k = 0; k < reference.size(); ++k)
      CHECK(std::abs(prop.eigenvalues()(static_cast<Eigen::Index>(k)) -
                     reference[k]) < 1e-10);
  }
}

TEST_CASE("decomposition quality") {
  const SpectralPropagator prop(
      build_hamiltonian(DimerParams::from_lambda(3.0, 300)));
  CHECK(prop.reconstruction_residual() < 1e-9);
  CHECK(prop.orthogonality_error() < 1e-10);
}

TEST_CASE("propagation") {
  SUBCASE("zero time is the identity") {
    const FockHamiltonian h =
        build_hamiltonian(DimerParams::from_lambda(2.0, 30));
    const SpectralPropagator prop(h);
    const FockVector psi0 = FockVector::all_left(30);
    const FockVector back = prop.apply(psi0, 0.0);
    for (std::size_t n = 0; n < psi0.size(); ++n)
      CHECK(std::abs(back[n] - psi0[n]) < 1e-12);
  }

  SUBCASE("one particle is the two-level oscillation") {
    const DimerParams p{1.0, 0.9, 1};  // U is inert for N = 1
    const SpectralPropagator prop(build_hamiltonian(p));
    const FockVector psi0 = FockVector::all_left(1);
    for (double t = 0.0; t < 15.0; t += 0.37) {
      const FockVector psi = prop.apply(psi0, t);
      const double expected = std::sin(0.5 * t) * std::sin(0.5 * t);
      CHECK(std::abs(std::norm(psi[1]) - expected) < 1e-10);
    }
  }

  SUBCASE("norm stays at one over the long window") {
    const DimerParams p = DimerParams::from_lambda(4.0, 60);
    const SpectralPropagator prop(build_hamiltonian(p));
    const FockVector psi = prop.apply(FockVector::all_left(60), 100.0 * p.t0());
    CHECK(std::abs(psi.norm() - 1.0) < 1e-10);
  }

  SUBCASE("energy expectation is constant") {
    const DimerParams p = DimerParams::from_lambda(2.0, 80);
    const FockHamiltonian h = build_hamiltonian(p);
    const SpectralPropagator prop(h);
    const FockVector psi0 = FockVector::all_left(80);
    const double e0 = energy_expectation(h, psi0);
    const double scale = std::max(std::abs(e0), p.j);
    for (const double t_t0 : {1.0, 17.3, 100.0}) {
      const double e = energy_expectation(h, prop.apply(psi0, t_t0 * p.t0()));
      CHECK(std::abs(e - e0) / scale < 1e-8);
    }
  }

  SUBCASE("batch propagation matches single applications") {
    const DimerParams p = DimerParams::from_lambda(1.5, 25);
    const FockHamiltonian h = build_hamiltonian(p);
    const SpectralPropagator prop(h);
    const FockVector psi0 = FockVector::basis_state(25, 10);
    const std::vector<double> times{0.0, 0.4, 3.9, 27.0};
    const auto batch = prop.propagate(psi0, times);
    REQUIRE(batch.size() == times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
      const FockVector single = prop.apply(psi0, times[k]);
      for (std::size_t n = 0; n < psi0.size(); ++n)
        CHECK(std::abs(batch[k][n] - single[n]) < 1e-12);
    }
    const TimeSeries series = imbalance_series(batch, 0.0, 1.0);
    CHECK(series.values[0] == doctest::Approx(psi0.imbalance()));
  }
}

TEST_CASE("averaged imbalance from the exact dynamics") {
  SUBCASE("noninteracting average vanishes") {
    const DimerParams p{1.0, 0.0, 37};
    CHECK(std::abs(exact_zbar(p)) < 1e-3);
  }

  SUBCASE("below threshold") {
    const DimerParams p = DimerParams::from_lambda(1.0, 100);
    CHECK(std::abs(exact_zbar(p)) < 0.05);
  }

  SUBCASE("trapped side tracks the fluctuation-dressed closed form") {
    const DimerParams p = DimerParams::from_lambda(4.0, 100);
    CHECK(exact_zbar(p) == doctest::Approx(0.9330124344426617).epsilon(0.11));
  }

  SUBCASE("sampling step must resolve the oscillation") {
    const DimerParams p = DimerParams::from_lambda(1.0, 20);
    CHECK_THROWS_AS(exact_zbar(p, 0.0, -1.0, p.t0()), std::invalid_argument);
  }
}

TEST_CASE("slow large oscillation destroys the trapping at the threshold") {
  const DimerParams p = DimerParams::from_lambda(2.0, 100);
  const double t0 = p.t0();
  const SpectralPropagator prop(build_hamiltonian(p));
  const FockVector psi0 = FockVector::all_left(100);

  std::vector<double> times;
  for (double t = 0.0; t <= 1000.0 * t0; t += 0.01 * t0) times.push_back(t);
  const auto z = prop.imbalance_trajectory(psi0, times);

  double min_short = 1.0, min_long = 1.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] <= 20.0 * t0) min_short = std::min(min_short, z[k]);
    min_long = std::min(min_long, z[k]);
  }
  CHECK(min_short > 0.0);
  CHECK(min_long < min_short - 0.2);
}

TEST_CASE("quantum average approaches the mean-field one") {
  const double lambda = 3.0;
  const DimerParams mf = DimerParams::from_lambda(lambda);
  const double zbar_mf = meanfield_zbar(mf, 0.0, 100.0 * mf.t0());
  double previous_gap = 2.0;
  for (const int n : {50, 100, 200, 400, 800}) {
    const double gap =
        std::abs(exact_zbar(DimerParams::from_lambda(lambda, n)) - zbar_mf);
    CHECK(gap <= previous_gap + 1e-12);
    previous_gap = gap;
  }
}
