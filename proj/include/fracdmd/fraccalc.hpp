#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracdmd {

// Uniformly sampled scalar signal: sample k lives at t0 + k*dt.
struct SampledSignal {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double t_end() const { return t0 + static_cast<double>(values.size() - 1) * dt; }
};

// Throws ParameterError unless dt > 0, N >= min_samples and all values finite.
void validate(const SampledSignal& signal, std::size_t min_samples = 2);

// Product-integration rule for C_q * int_0^T (T - tau)^(q-1) g(tau) dtau,
// C_q = 1/Gamma(q), exact when g is piecewise linear on the nodes.
struct SingularQuadRule {
  double q = 1.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  double horizon() const { return nodes.empty() ? 0.0 : nodes.back(); }
  double apply(std::span<const double> samples) const;
};

SingularQuadRule build_singular_rule(double q, double horizon, std::size_t n_nodes);

// Weights of the uniform-grid rule only (no node vector); weights[k] pairs with
// sample k of a grid with the given step and n_intervals + 1 samples.
std::vector<double> singular_weights(double q, double step, std::size_t n_intervals);

// Mutates quadrature weights before they are applied. Used by the validation
// suite as a negative control; leave empty in normal use.
using WeightHook = std::function<void(std::span<double>)>;

double rl_integral(const SampledSignal& signal, double q, double t, const WeightHook& hook = {});

// Second-order finite differences: central inside, one-sided at both ends.
std::vector<double> finite_difference(std::span<const double> values, double dt);

double caputo_derivative(const SampledSignal& signal, double q, double t);

// d/dt J^(1-p) of the signal, differentiated numerically on a grid four times
// finer than the sampling. Intended as a test oracle.
double rl_derivative(const SampledSignal& signal, double p, double t);

struct MLParams {
  // Series is used while |z|^(1/q) <= series_radius; beyond it the
  // exponential-asymptotic expansion takes over.
  double series_radius = 20.0;
  int max_terms = 2000;
  double tol = 1e-14;
};

void validate(const MLParams& params);

// One-parameter Mittag-Leffler function E_q(z) = sum_m z^m / Gamma(q m + 1).
std::complex<double> mittag_leffler(double q, std::complex<double> z, const MLParams& params = {});

}  // namespace fracdmd
