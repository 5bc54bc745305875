#include <doctest.h>

#include <cmath>
#include <numeric>

#include "fracdmd/errors.hpp"
#include "fracdmd/fraccalc.hpp"
#include "oracles.hpp"

using namespace fracdmd;

namespace {

SampledSignal sample(double (*f)(double), double dt, std::size_t n, double t0 = 0.0) {
  SampledSignal s{t0, dt, std::vector<double>(n)};
  for (std::size_t k = 0; k < n; ++k) s.values[k] = f(t0 + static_cast<double>(k) * dt);
  return s;
}

double power_integral(int p, double q, double t) {
  return std::tgamma(p + 1.0) / std::tgamma(p + q + 1.0) * std::pow(t, p + q);
}

}  // namespace

TEST_SUITE("fraccalc") {

TEST_CASE("uniform weights integrate constants and linears exactly") {
  for (double q : {0.05, 0.3, 0.5, 0.9, 1.0}) {
    for (std::size_t n : {1u, 2u, 7u, 8u, 9u, 50u, 1000u}) {
      const double h = 0.01;
      const auto w = singular_weights(q, h, n);
      REQUIRE(w.size() == n + 1);
      const double T = h * static_cast<double>(n);
      const double sum = std::accumulate(w.begin(), w.end(), 0.0);
      CHECK(sum == doctest::Approx(std::pow(T, q) / std::tgamma(q + 1.0)).epsilon(1e-13));
      double lin = 0.0;
      for (std::size_t k = 0; k <= n; ++k) lin += w[k] * h * static_cast<double>(k);
      CHECK(lin == doctest::Approx(power_integral(1, q, T)).epsilon(1e-12));
      for (double v : w) CHECK(v >= 0.0);
    }
  }
}

TEST_CASE("q = 1 weights are the trapezoid rule") {
  const auto w = singular_weights(1.0, 0.5, 4);
  CHECK(w[0] == doctest::Approx(0.25));
  CHECK(w[1] == doctest::Approx(0.5));
  CHECK(w[2] == doctest::Approx(0.5));
  CHECK(w[3] == doctest::Approx(0.5));
  CHECK(w[4] == doctest::Approx(0.25));
}

TEST_CASE("zero intervals give a zero weight") {
  const auto w = singular_weights(0.5, 0.1, 0);
  REQUIRE(w.size() == 1);
  CHECK(w[0] == 0.0);
}

TEST_CASE("build_singular_rule spans the horizon") {
  const auto rule = build_singular_rule(0.4, 2.0, 101);
  CHECK(rule.nodes.size() == 101);
  CHECK(rule.horizon() == 2.0);
  std::vector<double> ones(101, 1.0);
  CHECK(rule.apply(ones) == doctest::Approx(std::pow(2.0, 0.4) / std::tgamma(1.4)).epsilon(1e-13));
  CHECK_THROWS_AS(rule.apply(std::vector<double>(3, 1.0)), ParameterError);
  CHECK_THROWS_AS(build_singular_rule(0.4, 2.0, 1), ParameterError);
  CHECK_THROWS_AS(build_singular_rule(0.4, -1.0, 10), ParameterError);
}

TEST_CASE("rl_integral power laws") {
  const double dt = 1e-3;
  const auto c = sample([](double) { return 1.0; }, dt, 1001);
  const auto lin = sample([](double t) { return t; }, dt, 1001);
  const auto quad = sample([](double t) { return t * t; }, dt, 1001);
  for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    for (double t : {0.001, 0.37, 1.0}) {
      CHECK(std::abs(rl_integral(c, q, t) - power_integral(0, q, t)) < 1e-12);
      CHECK(std::abs(rl_integral(lin, q, t) - power_integral(1, q, t)) < 1e-12);
      CHECK(std::abs(rl_integral(quad, q, t) - power_integral(2, q, t)) < 1e-6);
    }
    CHECK(rl_integral(c, q, 0.0) == 0.0);
  }
}

TEST_CASE("rl_integral off-grid evaluation and shifted start") {
  const auto lin = sample([](double t) { return 2.0 * t + 1.0; }, 0.01, 101);
  for (double q : {0.25, 0.75}) {
    const double t = 0.4567;
    const double exact = 2.0 * power_integral(1, q, t) + power_integral(0, q, t);
    CHECK(rl_integral(lin, q, t) == doctest::Approx(exact).epsilon(1e-12));
  }
  // Starting at t0 = 1: integral of (tau - 1) from 1 to 2.
  const auto shifted = sample([](double t) { return t - 1.0; }, 0.01, 101, 1.0);
  CHECK(rl_integral(shifted, 0.5, 2.0) == doctest::Approx(power_integral(1, 0.5, 1.0)).epsilon(1e-12));
}

TEST_CASE("rl_integral of a smooth signal matches adaptive quadrature") {
  const auto s = sample([](double t) { return std::sin(3.0 * t) + std::exp(-t); }, 1e-3, 2001);
  for (double q : {0.2, 0.5, 0.8}) {
    const double ref = oracle::rl_integral([](double t) { return std::sin(3.0 * t) + std::exp(-t); }, q, 2.0);
    CHECK(std::abs(rl_integral(s, q, 2.0) - ref) < 5e-6);
  }
}

TEST_CASE("weight hook perturbs the result") {
  const auto c = sample([](double) { return 1.0; }, 1e-3, 1001);
  const double base = rl_integral(c, 0.5, 1.0);
  const double bumped = rl_integral(c, 0.5, 1.0, [](std::span<double> w) {
    for (double& v : w) v *= 1.001;
  });
  CHECK(bumped == doctest::Approx(base * 1.001).epsilon(1e-13));
}

TEST_CASE("finite differences are exact for quadratics") {
  std::vector<double> v;
  for (int k = 0; k < 6; ++k) v.push_back(3.0 * k * k * 0.01 - k * 0.1);
  const auto d = finite_difference(v, 0.1);
  for (int k = 0; k < 6; ++k) CHECK(d[k] == doctest::Approx(6.0 * k * 0.1 - 1.0).epsilon(1e-12));
  CHECK_THROWS_AS(finite_difference(std::vector<double>{1.0, 2.0}, 0.1), ParameterError);
}

TEST_CASE("caputo power laws") {
  const double dt = 1e-3;
  const auto c = sample([](double) { return 5.0; }, dt, 1001);
  const auto lin = sample([](double t) { return t; }, dt, 1001);
  const auto quad = sample([](double t) { return t * t; }, dt, 1001);
  for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    for (double t : {0.25, 1.0}) {
      CHECK(std::abs(caputo_derivative(c, q, t)) < 1e-12);
      CHECK(std::abs(caputo_derivative(lin, q, t) - std::pow(t, 1.0 - q) / std::tgamma(2.0 - q)) < 1e-10);
      CHECK(std::abs(caputo_derivative(quad, q, t) - 2.0 * std::pow(t, 2.0 - q) / std::tgamma(3.0 - q)) < 1e-4);
    }
  }
}

TEST_CASE("rl_derivative of t and of a constant") {
  const auto lin = sample([](double t) { return t; }, 1e-3, 1001);
  const auto one = sample([](double) { return 1.0; }, 1e-3, 1001);
  for (double p : {0.3, 0.6}) {
    for (double t : {0.5, 1.0}) {
      CHECK(rl_derivative(lin, p, t) == doctest::Approx(std::pow(t, 1.0 - p) / std::tgamma(2.0 - p)).epsilon(1e-6));
      // A constant has a nonzero Riemann-Liouville derivative t^-p / Gamma(1-p).
      CHECK(rl_derivative(one, p, t) == doctest::Approx(std::pow(t, -p) / std::tgamma(1.0 - p)).epsilon(1e-4));
    }
  }
}

TEST_CASE("invalid arguments are rejected") {
  const auto lin = sample([](double t) { return t; }, 0.1, 11);
  CHECK_THROWS_AS(rl_integral(lin, 0.0, 0.5), ParameterError);
  CHECK_THROWS_AS(rl_integral(lin, 1.5, 0.5), ParameterError);
  CHECK_THROWS_AS(rl_integral(lin, std::nan(""), 0.5), ParameterError);
  CHECK_THROWS_AS(rl_integral(lin, 0.5, 1.5), DomainError);
  CHECK_THROWS_AS(rl_integral(lin, 0.5, -0.1), DomainError);
  CHECK_THROWS_AS(caputo_derivative(lin, 1.0, 0.5), ParameterError);
  CHECK_THROWS_AS(rl_derivative(lin, 1.0, 0.5), ParameterError);

  SampledSignal bad = lin;
  bad.values[3] = INFINITY;
  CHECK_THROWS_AS(rl_integral(bad, 0.5, 0.5), ParameterError);
  SampledSignal short_signal{0.0, 0.1, {1.0}};
  CHECK_THROWS_AS(rl_integral(short_signal, 0.5, 0.0), ParameterError);
  SampledSignal zero_dt{0.0, 0.0, {1.0, 2.0}};
  CHECK_THROWS_AS(rl_integral(zero_dt, 0.5, 0.0), ParameterError);
  CHECK_THROWS_AS(singular_weights(0.5, 0.0, 3), ParameterError);
}

}
