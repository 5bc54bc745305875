#include "fracdmd/fraccalc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fracdmd/errors.hpp"
#include "product_weights.hpp"

namespace fracdmd {

namespace {

void check_order(double q, bool allow_one, const char* what) {
  const bool ok = std::isfinite(q) && q > 0.0 && (allow_one ? q <= 1.0 : q < 1.0);
  if (!ok) {
    throw ParameterError(std::string(what) + ": order " + std::to_string(q) +
                         (allow_one ? " outside (0, 1]" : " outside (0, 1)"));
  }
}

// Index of t on the sample grid, or -1 when t falls strictly between samples.
long grid_index(const SampledSignal& signal, double t) {
  const double pos = (t - signal.t0) / signal.dt;
  const double nearest = std::round(pos);
  if (std::abs(pos - nearest) <= 1e-9 * std::max(1.0, std::abs(pos))) {
    return static_cast<long>(nearest);
  }
  return -1;
}

void check_time(const SampledSignal& signal, double t, const char* what) {
  const double slack = 1e-9 * signal.dt;
  if (!(t >= signal.t0 - slack && t <= signal.t_end() + slack)) {
    throw DomainError(std::string(what) + ": t = " + std::to_string(t) + " outside [" +
                      std::to_string(signal.t0) + ", " + std::to_string(signal.t_end()) + "]");
  }
}

// Product weights for an arbitrary increasing node set ending at t: the
// piecewise-linear interpolant on the nodes is integrated exactly against
// (t - tau)^(q-1) / Gamma(q).
std::vector<double> general_weights(std::span<const double> nodes, double q) {
  const std::size_t m = nodes.size();
  std::vector<double> w(m, 0.0);
  const double t = nodes.back();
  for (std::size_t j = 0; j + 1 < m; ++j) {
    const double h = nodes[j + 1] - nodes[j];
    const double far = t - nodes[j];
    const double near = t - nodes[j + 1];
    const double i0 = (std::pow(far, q) - std::pow(near, q)) / q;
    const double i1 = (std::pow(far, q + 1.0) - std::pow(near, q + 1.0)) / (q + 1.0);
    w[j] += (i1 - near * i0) / h;
    w[j + 1] += (far * i0 - i1) / h;
  }
  const double scale = 1.0 / std::tgamma(q);
  for (double& v : w) v *= scale;
  return w;
}

}  // namespace

void validate(const SampledSignal& signal, std::size_t min_samples) {
  if (!(std::isfinite(signal.dt) && signal.dt > 0.0)) {
    throw ParameterError("sampled signal: dt must be positive and finite");
  }
  if (!std::isfinite(signal.t0)) throw ParameterError("sampled signal: t0 must be finite");
  if (signal.values.size() < min_samples) {
    throw ParameterError("sampled signal: need at least " + std::to_string(min_samples) +
                         " samples, got " + std::to_string(signal.values.size()));
  }
  if (!std::all_of(signal.values.begin(), signal.values.end(),
                   [](double v) { return std::isfinite(v); })) {
    throw ParameterError("sampled signal: non-finite sample");
  }
}

std::vector<double> singular_weights(double q, double step, std::size_t n_intervals) {
  check_order(q, true, "singular_weights");
  if (!(step > 0.0) || !std::isfinite(step)) throw ParameterError("singular_weights: step must be positive");
  std::vector<double> w(n_intervals + 1, 0.0);
  if (n_intervals == 0) return w;

  const double a = q + 1.0;
  const double c = std::pow(step, q) / std::tgamma(q + 2.0);
  const std::size_t n = n_intervals;
  w[0] = c * detail::start_factor(q, n);
  for (std::size_t j = 1; j < n; ++j) w[j] = c * detail::second_difference(a, n - j);
  w[n] = c;
  return w;
}

double SingularQuadRule::apply(std::span<const double> samples) const {
  if (samples.size() != weights.size()) {
    throw ParameterError("singular rule: expected " + std::to_string(weights.size()) +
                         " samples, got " + std::to_string(samples.size()));
  }
  return std::inner_product(weights.begin(), weights.end(), samples.begin(), 0.0);
}

SingularQuadRule build_singular_rule(double q, double horizon, std::size_t n_nodes) {
  check_order(q, true, "build_singular_rule");
  if (!(std::isfinite(horizon) && horizon > 0.0)) {
    throw ParameterError("build_singular_rule: horizon must be positive");
  }
  if (n_nodes < 2) throw ParameterError("build_singular_rule: need at least 2 nodes");

  SingularQuadRule rule;
  rule.q = q;
  const std::size_t n = n_nodes - 1;
  const double h = horizon / static_cast<double>(n);
  rule.nodes.resize(n_nodes);
  for (std::size_t k = 0; k < n_nodes; ++k) rule.nodes[k] = static_cast<double>(k) * h;
  rule.nodes.back() = horizon;
  rule.weights = singular_weights(q, h, n);
  return rule;
}

double rl_integral(const SampledSignal& signal, double q, double t, const WeightHook& hook) {
  check_order(q, true, "rl_integral");
  validate(signal);
  check_time(signal, t, "rl_integral");

  const long idx = grid_index(signal, t);
  if (idx >= 0) {
    const auto n = static_cast<std::size_t>(std::min<long>(idx, static_cast<long>(signal.size()) - 1));
    std::vector<double> w = singular_weights(q, signal.dt, n);
    if (hook) hook(w);
    return std::inner_product(w.begin(), w.end(), signal.values.begin(), 0.0);
  }

  // Off-grid: all whole samples before t plus the interpolated value at t.
  const auto whole = static_cast<std::size_t>(std::floor((t - signal.t0) / signal.dt)) + 1;
  std::vector<double> nodes(whole + 1);
  std::vector<double> vals(whole + 1);
  for (std::size_t k = 0; k < whole; ++k) {
    nodes[k] = signal.t0 + static_cast<double>(k) * signal.dt;
    vals[k] = signal.values[k];
  }
  nodes[whole] = t;
  const double frac = (t - nodes[whole - 1]) / signal.dt;
  vals[whole] = (1.0 - frac) * signal.values[whole - 1] + frac * signal.values[whole];

  std::vector<double> w = general_weights(nodes, q);
  if (hook) hook(w);
  return std::inner_product(w.begin(), w.end(), vals.begin(), 0.0);
}

std::vector<double> finite_difference(std::span<const double> values, double dt) {
  const std::size_t n = values.size();
  if (n < 3) throw ParameterError("finite_difference: need at least 3 samples");
  std::vector<double> d(n);
  const double inv = 1.0 / (2.0 * dt);
  d[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) * inv;
  for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (values[k + 1] - values[k - 1]) * inv;
  d[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) * inv;
  return d;
}

double caputo_derivative(const SampledSignal& signal, double q, double t) {
  check_order(q, false, "caputo_derivative");
  validate(signal, 3);
  check_time(signal, t, "caputo_derivative");
  SampledSignal slope{signal.t0, signal.dt, finite_difference(signal.values, signal.dt)};
  return rl_integral(slope, 1.0 - q, t);
}

double rl_derivative(const SampledSignal& signal, double p, double t) {
  check_order(p, false, "rl_derivative");
  validate(signal, 3);
  check_time(signal, t, "rl_derivative");

  const double delta = signal.dt / 4.0;
  const double lo = signal.t0;
  const double hi = signal.t_end();
  auto integral = [&](double s) { return rl_integral(signal, 1.0 - p, std::clamp(s, lo, hi)); };

  if (t - delta >= lo && t + delta <= hi) {
    return (integral(t + delta) - integral(t - delta)) / (2.0 * delta);
  }
  if (t + delta > hi) {
    return (3.0 * integral(t) - 4.0 * integral(t - delta) + integral(t - 2.0 * delta)) / (2.0 * delta);
  }
  return (-3.0 * integral(t) + 4.0 * integral(t + delta) - integral(t + 2.0 * delta)) / (2.0 * delta);
}

}  // namespace fracdmd
