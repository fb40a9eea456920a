#include <cmath>
#include <cstring>
#include <doctest.h>
#include <random>

#include "dimertrap/normal.hpp"
#include "dimertrap/semiclassics.hpp"
#include "oracles.hpp"

using namespace dimertrap;

TEST_CASE("normal distribution functions") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-14));

  SUBCASE("tail symmetry") {
    for (double x = 0.0; x <= 8.0; x += 0.25)
      CHECK(std::abs(normal_cdf(-x) - (1.0 - normal_cdf(x))) < 1e-14);
  }

  SUBCASE("quantile anchor") {
    CHECK(normal_quantile(0.002) == doctest::Approx(-2.8782).epsilon(7e-5));
    CHECK(std::abs(normal_quantile(0.002) - (-2.878161739095483)) < 1e-9);
  }

  SUBCASE("quantile inverts the cdf across the working range") {
    for (double log_q = -8.0; log_q <= -0.31; log_q += 0.05) {
      const double q = std::pow(10.0, log_q);
      CHECK(std::abs(normal_cdf(normal_quantile(q)) - q) < 1e-10);
      CHECK(std::abs(normal_cdf(normal_quantile(1.0 - q)) - (1.0 - q)) < 1e-10);
    }
    CHECK(std::abs(normal_cdf(normal_quantile(1e-8)) - 1e-8) < 1e-10);
  }

  SUBCASE("domain errors") {
    CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(-0.1), std::domain_error);
  }
}

TEST_CASE("fluctuation model bookkeeping") {
  const FluctuationModel m{100};
  CHECK(m.sigma() == 0.05);
  CHECK(FluctuationModel{400}.sigma() == 0.025);
  CHECK(FluctuationModel::x0(2.0) == 0.0);
  CHECK(FluctuationModel::x0(4.0) == doctest::Approx(-0.25));
  CHECK(m.x_star(2.0) == doctest::Approx(0.025));   // (x0 + sigma)/2
  CHECK(m.x_star(1.2) == doctest::Approx(1.0 / 1.2 - 0.5));
  CHECK(m.x_star(50.0) == 0.0);
  for (double lambda = 0.3; lambda < 20.0; lambda += 0.37) {
    CHECK(m.x_star(lambda) >= FluctuationModel::x0(lambda));
    CHECK(m.x_star(lambda) >= 0.0);
  }
}

TEST_CASE("number fluctuations") {
  CHECK(number_fluctuation_std(100, 0.0) == 0.0);
  CHECK(number_fluctuation_std(100, 0.5) == doctest::Approx(5.0));
  CHECK(number_fluctuation_std(100, 0.5) / 100.0 == doctest::Approx(0.05));
  for (double p = 0.0; p <= 0.5; p += 0.05)
    CHECK(number_fluctuation_std(64, p) ==
          doctest::Approx(number_fluctuation_std(64, 1.0 - p)));
  CHECK_THROWS_AS(number_fluctuation_std(10, 1.5), std::invalid_argument);
}

TEST_CASE("self-consistent oscillation") {
  const DimerParams params = DimerParams::from_lambda(2.0);

  CHECK(heuristic_p_amp(0.0, 0.0) == 1.0);
  CHECK(heuristic_omega(0.0, 0.0, params) == doctest::Approx(0.5));
  CHECK(heuristic_p_amp(2.0, 0.25) == doctest::Approx(0.5));
  CHECK(heuristic_p_amp(7.0, 0.5) == 1.0);
  CHECK_THROWS_AS(heuristic_p_amp(2.0, 0.7), std::invalid_argument);

  // p(t) = p_amp sin^2(omega t)
  const double t = 0.83;
  const double omega = heuristic_omega(2.0, 0.25, params);
  CHECK(heuristic_p_of_t(t, 2.0, 0.25, params) ==
        doctest::Approx(0.5 * std::pow(std::sin(omega * t), 2)));
}

TEST_CASE("mean-field closed form") {
  CHECK(zbar_meanfield_closed(1.99) == 0.0);
  CHECK(zbar_meanfield_closed(2.0) == 0.0);
  CHECK(zbar_meanfield_closed(-1.0) == 0.0);
  CHECK(zbar_meanfield_closed(4.0) ==
        doctest::Approx(0.9330127018922193).epsilon(1e-15));
  CHECK(zbar_meanfield_closed(1e8) > 1.0 - 1e-15);

  SUBCASE("discontinuity of exactly one half at the threshold") {
    CHECK(zbar_meanfield_closed(2.0 - 1e-9) == 0.0);
    CHECK(zbar_meanfield_closed(2.0 + 1e-9) ==
          doctest::Approx(0.5).epsilon(1e-4));
  }

  SUBCASE("returned root solves the cubic") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> lam(2.0 + 1e-6, 100.0);
    for (int k = 0; k < 100; ++k) {
      const double lambda = lam(rng);
      CHECK(std::abs(cubic_residual(zbar_meanfield_closed(lambda), lambda)) <
            1e-12);
    }
    CHECK(cubic_residual(zbar_meanfield_closed(1.3), 1.3) == 0.0);
  }

  SUBCASE("non-decreasing above the threshold") {
    double prev = 0.5;
    for (double lambda = 2.001; lambda < 50.0; lambda *= 1.03) {
      const double z = zbar_meanfield_closed(lambda);
      CHECK(z >= prev - 1e-15);
      prev = z;
    }
  }
}

TEST_CASE("fluctuation-dressed root") {
  SUBCASE("zero shift reduces to the mean-field form") {
    for (double lambda = 0.3; lambda < 30.0; lambda += 0.13)
      CHECK(zbar_fluct(lambda, 0.0) ==
            doctest::Approx(zbar_meanfield_closed(lambda)).epsilon(1e-15));
  }

  SUBCASE("worked values at the threshold") {
    CHECK(zbar_fluct(2.0, 0.05) ==
          doctest::Approx(0.6791287847477921).epsilon(1e-15));
    CHECK(zbar_fluct(2.0, -0.05) == 0.0);  // discriminant negative
  }

  SUBCASE("fixed point of the dressed self-consistency, small shifts") {
    // The root is exact only to lowest order in the shift, so the check
    // runs at the linearization scale.
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> lam(2.2, 60.0);
    std::uniform_real_distribution<double> shift(-1e-5, 1e-5);
    for (int k = 0; k < 100; ++k) {
      const double lambda = lam(rng);
      const double delta = shift(rng);
      const double z = zbar_fluct(lambda, delta);
      REQUIRE(z > 0.0);
      const double zd = z + delta;
      const double residual = z - (1.0 - 1.0 / (1.0 + lambda * lambda * zd * zd));
      CHECK(std::abs(residual) < 1e-10);
    }
  }

  SUBCASE("residual at the physical fluctuation scale is quadratic") {
    // Documentation of the lowest-order nature: at sigma(N=100) = 0.05 the
    // residual is of order delta^2, not zero.
    const double lambda = 3.0, delta = 0.05;
    const double z = zbar_fluct(lambda, delta);
    const double zd = z + delta;
    const double residual = z - (1.0 - 1.0 / (1.0 + lambda * lambda * zd * zd));
    MESSAGE("fixed-point residual at delta = 0.05: ", residual);
    CHECK(std::abs(residual) > 1e-6);        // genuinely O(delta^2)
    CHECK(std::abs(residual) < 10.0 * delta * delta);
  }
}

TEST_CASE("Gaussian-averaged closed forms") {
  SUBCASE("worked value at the threshold") {
    CHECK(zbar_closed_form(2.0, 100) ==
          doctest::Approx(0.33003905296791064).epsilon(1e-12));
  }

  SUBCASE("mean-field limit at large N") {
    for (const double lambda : {2.5, 3.0, 6.0}) {
      CHECK(zbar_closed_form(lambda, 100000000) ==
            doctest::Approx(zbar_meanfield_closed(lambda)).epsilon(1e-3));
    }
  }

  SUBCASE("saturates below one without the far tail") {
    const double z = zbar_closed_form(1e8, 100);
    CHECK(z < 1.0);
    CHECK(z > 0.999);  // Phi(10) close to but not exactly 1
  }

  SUBCASE("corrected form restores the strong-interaction limit") {
    CHECK(zbar_closed_form_corrected(1e8, 50) > 1.0 - 1e-10);
    CHECK(zbar_closed_form_corrected(2.0, 100) ==
          doctest::Approx(zbar_closed_form(2.0, 100)).epsilon(1e-12));
    for (const double lambda : {1.0, 1.5, 2.0, 3.0, 5.0, 10.0})
      for (const int n : {50, 100, 400})
        CHECK(std::abs(zbar_closed_form_corrected(lambda, n) -
                       zbar_closed_form(lambda, n)) < 1e-12);
  }

  SUBCASE("non-decreasing in the interaction") {
    for (const int n : {50, 100, 400}) {
      double prev = 0.0;
      for (double lambda = 0.5; lambda <= 10.0 + 1e-9; lambda += 0.01) {
        const double z = zbar_closed_form(lambda, n);
        CHECK(z >= prev - 1e-12);
        CHECK(z >= 0.0);
        CHECK(z <= 1.0);
        prev = z;
      }
    }
  }

  SUBCASE("transition sharpens with the particle number") {
    for (double lambda = 1.25; lambda < 2.0; lambda += 0.125) {
      double prev = 1.0;
      for (const int n : {50, 100, 400, 1600}) {
        const double z = zbar_closed_form(lambda, n);
        CHECK(z <= prev + 1e-12);
        prev = z;
      }
    }
  }

  SUBCASE("dropped-term diagnostic stays small near the threshold") {
    CHECK(zbar_closed_form_dropped_term(2.0, 100) ==
          doctest::Approx(0.05 * normal_pdf(0.0)));
    CHECK(zbar_closed_form_dropped_term(2.0, 100) < 0.02);
  }
}

TEST_CASE("Monte-Carlo averaging of the dressed root") {
  SUBCASE("degenerate width reproduces the closed form exactly") {
    for (const double lambda : {1.0, 2.5, 4.0}) {
      const McEstimate est = zbar_mc_average_sigma(lambda, 0.0, 10000, 7);
      CHECK(est.mean == zbar_meanfield_closed(lambda));
      CHECK(est.std_error == 0.0);
    }
  }

  SUBCASE("same seed, same bits") {
    const McEstimate a = zbar_mc_average(2.0, 100, 50000, 12345);
    const McEstimate b = zbar_mc_average(2.0, 100, 50000, 12345);
    CHECK(std::memcmp(&a.mean, &b.mean, sizeof(double)) == 0);
    CHECK(std::memcmp(&a.std_error, &b.std_error, sizeof(double)) == 0);
    const McEstimate c = zbar_mc_average(2.0, 100, 50000, 54321);
    CHECK(a.mean != c.mean);
  }

  SUBCASE("sample-count precondition") {
    CHECK_THROWS_AS(zbar_mc_average(2.0, 100, 9999, 1), std::invalid_argument);
  }

  SUBCASE("deep Josephson regime has no trapped weight") {
    const McEstimate est = zbar_mc_average(0.5, 100, 100000, 3);
    CHECK(est.mean == 0.0);  // branch point sits 30 sigma out
  }

  SUBCASE("agrees with the closed form up to the plateau approximation") {
    const McEstimate est = zbar_mc_average(2.0, 100, 1000000, 11);
    CHECK(std::abs(est.mean - zbar_closed_form(2.0, 100)) <
          3.0 * est.std_error + 0.02);
  }

  SUBCASE("smooth-quadrature oracle within three standard errors") {
    for (const double lambda : {1.5, 2.0, 3.0, 5.0}) {
      for (const int n : {50, 100, 400}) {
        const McEstimate est = zbar_mc_average(lambda, n, 1000000, 99);
        const double exact =
            oracles::zbar_truncated_average(lambda, FluctuationModel{n}.sigma());
        CHECK(std::abs(est.mean - exact) <
              3.0 * std::max(est.std_error, 1e-12) + 1e-9);
      }
    }
  }

  SUBCASE("Gauss-Hermite oracle where the branch point is far out") {
    // Polynomial quadrature cannot see the branch-point kink; compare on a
    // grid where it sits at least six sigma from the mean.
    for (const double lambda : {1.0, 1.1, 5.0, 6.0, 8.0}) {
      for (const int n : {100, 400, 1600}) {
        const double sigma = FluctuationModel{n}.sigma();
        REQUIRE(std::abs(FluctuationModel::x0(lambda)) >= 5.9 * sigma);
        const double x0 = FluctuationModel::x0(lambda);
        const auto integrand = [&](double zeta) {
          const double delta = sigma * zeta;
          return delta > x0 ? zbar_fluct(lambda, delta) : 0.0;
        };
        const double gh = oracles::normal_expectation_gh(integrand, 64);
        const McEstimate est = zbar_mc_average(lambda, n, 1000000, 4242);
        CHECK(std::abs(est.mean - gh) <
              3.0 * std::max(est.std_error, 1e-12) + 1e-9);
      }
    }
  }

  SUBCASE("corrected bookkeeping only moves the far tail") {
    const McEstimate plain = zbar_mc_average(3.0, 100, 100000, 8);
    const McEstimate corrected =
        zbar_mc_average(3.0, 100, 100000, 8, TailHandling::corrected);
    CHECK(plain.mean == corrected.mean);  // tail is ~17 sigma away
  }
}

TEST_CASE("critical interaction strength") {
  SUBCASE("worked value") {
    const CriticalInteraction crit = lambda_critical(100, 0.001);
    CHECK(crit.full == doctest::Approx(1.5530166808888617).epsilon(1e-9));
    CHECK(crit.asymptotic == doctest::Approx(1.4243676521809034).epsilon(1e-9));
  }

  SUBCASE("mean-field limit") {
    CHECK(lambda_critical(1000000, 0.001).full ==
          doctest::Approx(2.0).epsilon(0.005));
    CHECK(lambda_critical(1000000, 0.2).full == doctest::Approx(2.0).epsilon(0.005));
  }

  SUBCASE("domain") {
    CHECK_THROWS_AS(lambda_critical(100, 0.0), std::domain_error);
    CHECK_THROWS_AS(lambda_critical(100, 0.5), std::domain_error);
    CHECK_THROWS_AS(lambda_critical(0, 0.001), std::invalid_argument);
  }
}
