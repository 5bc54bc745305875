#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <thread>
#include <vector>

#include "fracdmd/errors.hpp"
#include "fracdmd/fraccalc.hpp"
#include "oracles.hpp"

using namespace fracdmd;
using cplx = std::complex<double>;

TEST_SUITE("mittag_leffler") {

TEST_CASE("order one and two reduce to exp and cosh") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> r(0.0, 5.0), a(-M_PI, M_PI);
  for (int k = 0; k < 200; ++k) {
    const cplx z = std::polar(r(rng), a(rng));
    CHECK(std::abs(mittag_leffler(1.0, z) - std::exp(z)) < 1e-9);
    CHECK(std::abs(mittag_leffler(2.0, z * z) - std::cosh(z)) < 1e-9);
  }
}

TEST_CASE("value at zero is exactly one") {
  for (int k = 1; k <= 20; ++k) CHECK(mittag_leffler(0.1 * k, 0.0) == cplx(1.0, 0.0));
}

TEST_CASE("half order matches exp(z^2) erfc(-z) on the real line") {
  for (double x = -6.0; x <= 6.0; x += 0.25) {
    const double exact = std::exp(x * x) * std::erfc(-x);
    const cplx v = mittag_leffler(0.5, x);
    CHECK(v.imag() == 0.0);
    // Worst case is at the series/asymptotic switch on the negative axis.
    CHECK(v.real() == doctest::Approx(exact).epsilon(2e-9));
  }
}

TEST_CASE("agrees with an extended-precision series for moderate arguments") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> r(0.0, 3.0), a(-M_PI, M_PI);
  for (double q : {0.5, 0.7, 0.9, 1.3}) {
    for (int k = 0; k < 50; ++k) {
      const cplx z = std::polar(r(rng), a(rng));
      const cplx ref = oracle::mittag_leffler_series(q, z);
      CHECK(std::abs(mittag_leffler(q, z) - ref) < 1e-11 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("series and asymptotic branches agree near the switch") {
  for (double q : {0.3, 0.5, 0.8}) {
    for (double angle : {0.0, 0.4, 2.0, M_PI}) {
      const cplx z = std::polar(std::pow(MLParams{}.series_radius, q), angle);
      MLParams series_only;
      series_only.series_radius = 1e9;
      MLParams asym_only;
      asym_only.series_radius = 1e-9;
      const cplx s = mittag_leffler(q, z, series_only);
      const cplx a = mittag_leffler(q, z, asym_only);
      CHECK(std::abs(s - a) < 2e-9 * std::max(1.0, std::abs(s)));
    }
  }
}

TEST_CASE("large negative arguments decay algebraically") {
  for (double q : {0.3, 0.5, 0.8}) {
    const double x = 1e4;
    // E_q(-x) = 1/(x Gamma(1-q)) - 1/(x^2 Gamma(1-2q)) + ...
    const double lead = 1.0 / (x * std::tgamma(1.0 - q)) - 1.0 / (x * x * std::tgamma(1.0 - 2.0 * q));
    CHECK(mittag_leffler(q, -x).real() == doctest::Approx(lead).epsilon(1e-7));
  }
}

TEST_CASE("conjugate symmetry and real output for real input") {
  for (double q : {0.4, 0.9}) {
    for (cplx z : {cplx(2.0, 1.0), cplx(-30.0, 5.0), cplx(40.0, -40.0)}) {
      const cplx a = mittag_leffler(q, z);
      const cplx b = mittag_leffler(q, std::conj(z));
      CHECK(std::abs(a - std::conj(b)) <= 1e-12 * std::abs(a));
    }
    CHECK(mittag_leffler(q, -250.0).imag() == 0.0);
  }
}

TEST_CASE("invalid inputs and non-convergence") {
  CHECK_THROWS_AS(mittag_leffler(0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(mittag_leffler(2.5, 1.0), ParameterError);
  CHECK_THROWS_AS(mittag_leffler(0.5, cplx(NAN, 0.0)), ParameterError);
  MLParams bad;
  bad.tol = 1e-3;
  CHECK_THROWS_AS(mittag_leffler(0.5, 1.0, bad), ParameterError);
  bad = MLParams{};
  bad.max_terms = 10;
  CHECK_THROWS_AS(mittag_leffler(0.5, 1.0, bad), ParameterError);

  MLParams tiny;
  tiny.series_radius = 1e9;
  tiny.max_terms = 50;
  try {
    mittag_leffler(1.0, 60.0, tiny);
    FAIL("expected AccuracyError");
  } catch (const AccuracyError& e) {
    CHECK(e.partial().real() > 0.0);
  }
}

TEST_CASE("concurrent evaluation is reproducible") {
  std::vector<cplx> pts;
  for (int k = 0; k < 64; ++k) pts.push_back(std::polar(0.5 * k, 0.1 * k));
  std::vector<cplx> serial;
  for (const auto z : pts) serial.push_back(mittag_leffler(0.6, z));
  std::vector<cplx> threaded(pts.size());
  {
    std::vector<std::jthread> workers;
    for (int w = 0; w < 4; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t k = w; k < pts.size(); k += 4) threaded[k] = mittag_leffler(0.6, pts[k]);
      });
    }
  }
  for (std::size_t k = 0; k < pts.size(); ++k) CHECK(threaded[k] == serial[k]);
}

}
