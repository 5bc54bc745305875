#include "fracdmd/validate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>

#include <Eigen/Eigenvalues>

#include "fracdmd/fode.hpp"
#include "fracdmd/fraccalc.hpp"
#include "fracdmd/okhs.hpp"

namespace fracdmd {

namespace {

constexpr double kOrders[] = {0.1, 0.3, 0.5, 0.7, 0.9};

SampledSignal power_signal(int p, double dt = 1e-3) {
  SampledSignal s{0.0, dt, {}};
  const auto n = static_cast<std::size_t>(std::llround(1.0 / dt)) + 1;
  s.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) s.values[k] = std::pow(static_cast<double>(k) * dt, p);
  return s;
}

// Largest error of J^q t^p over the orders and a few evaluation points.
double rl_power_error(int p, const WeightHook& hook) {
  const SampledSignal s = power_signal(p);
  double worst = 0.0;
  for (double q : kOrders) {
    for (double t : {0.25, 0.5, 1.0}) {
      const double exact = std::tgamma(p + 1.0) / std::tgamma(p + q + 1.0) * std::pow(t, p + q);
      worst = std::max(worst, std::abs(rl_integral(s, q, t, hook) - exact));
    }
  }
  return worst;
}

double caputo_power_error(int p) {
  const SampledSignal s = power_signal(p);
  double worst = 0.0;
  for (double q : kOrders) {
    for (double t : {0.25, 0.5, 1.0}) {
      const double exact = p == 0 ? 0.0 : std::tgamma(p + 1.0) / std::tgamma(p + 1.0 - q) * std::pow(t, p - q);
      worst = std::max(worst, std::abs(caputo_derivative(s, q, t) - exact));
    }
  }
  return worst;
}

double semigroup_error() {
  // J^0.3 (J^0.4 sin) vs J^0.7 sin on [0, 1].
  const double dt = 1e-3;
  SampledSignal s{0.0, dt, {}};
  const std::size_t n = 1001;
  for (std::size_t k = 0; k < n; ++k) s.values.push_back(std::sin(static_cast<double>(k) * dt));
  SampledSignal inner{0.0, dt, std::vector<double>(n)};
  for (std::size_t k = 0; k < n; ++k) inner.values[k] = rl_integral(s, 0.4, static_cast<double>(k) * dt);
  double worst = 0.0;
  for (double t : {0.5, 1.0}) worst = std::max(worst, std::abs(rl_integral(inner, 0.3, t) - rl_integral(s, 0.7, t)));
  return worst;
}

std::vector<std::complex<double>> sample_points() {
  std::vector<std::complex<double>> pts;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> radius(0.0, 5.0), angle(-M_PI, M_PI);
  for (int k = 0; k < 100; ++k) pts.push_back(std::polar(radius(rng), k % 4 == 0 ? 0.0 : angle(rng)));
  return pts;
}

std::vector<Trajectory> sample_trajectories() {
  std::vector<Trajectory> trajs;
  for (int i = 0; i < 4; ++i) {
    Trajectory t{0.01, Eigen::MatrixXd(101, 2)};
    for (int k = 0; k <= 100; ++k) {
      const double s = k * 0.01;
      t.states(k, 0) = std::cos(s + i) * (1.0 + 0.1 * i);
      t.states(k, 1) = std::sin(2.0 * s - i) * 0.5;
    }
    trajs.push_back(std::move(t));
  }
  return trajs;
}

double trapezoid_gram_error(const std::vector<Trajectory>& trajs, const KernelSpec& kernel) {
  const Eigen::MatrixXd g = gram_matrix(trajs, 1.0, kernel);
  double worst = 0.0;
  for (std::size_t j = 0; j < trajs.size(); ++j) {
    for (std::size_t i = 0; i < trajs.size(); ++i) {
      const auto& a = trajs[j];
      const auto& b = trajs[i];
      double acc = 0.0;
      for (Eigen::Index s = 0; s < a.states.rows(); ++s) {
        const double ws = (s == 0 || s + 1 == a.states.rows() ? 0.5 : 1.0) * a.dt;
        for (Eigen::Index t = 0; t < b.states.rows(); ++t) {
          const double wt = (t == 0 || t + 1 == b.states.rows() ? 0.5 : 1.0) * b.dt;
          const Eigen::VectorXd x = a.states.row(s).transpose();
          const Eigen::VectorXd y = b.states.row(t).transpose();
          acc += ws * wt * kernel_eval(kernel, {x.data(), 2}, {y.data(), 2});
        }
      }
      worst = std::max(worst, std::abs(acc - g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i))));
    }
  }
  return worst;
}

double solver_terminal_error(double q, double dt) {
  FodeProblem p;
  p.q = q;
  p.rhs = fields::Linear1d{-1.0};
  p.x0 = Eigen::VectorXd::Constant(1, 1.0);
  p.T = 1.0;
  p.dt = dt;
  const Trajectory t = solve(p);
  return std::abs(t.states(t.states.rows() - 1, 0) - mittag_leffler(q, -1.0).real());
}

CheckResult at_most(std::string name, double measured, double tol) {
  return {std::move(name), measured, tol, std::isfinite(measured) && measured <= tol};
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
  WeightHook hook;
  if (options.weight_perturbation != 0.0) {
    hook = [eps = options.weight_perturbation](std::span<double> w) {
      for (double& v : w) v *= 1.0 + eps;
    };
  }

  std::vector<CheckResult> out;
  out.push_back(at_most("rl_integral power law p=0", rl_power_error(0, hook), 1e-8));
  out.push_back(at_most("rl_integral power law p=1", rl_power_error(1, hook), 1e-8));
  out.push_back(at_most("rl_integral power law p=2", rl_power_error(2, hook), 1e-4));
  out.push_back(at_most("caputo power law p=0,1", std::max(caputo_power_error(0), caputo_power_error(1)), 1e-8));
  out.push_back(at_most("caputo power law p=2", caputo_power_error(2), 1e-4));
  out.push_back(at_most("semigroup J^0.3 J^0.4 = J^0.7", semigroup_error(), 1e-5));

  double min_weight = INFINITY;
  for (double q : {0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
    const auto rule = build_singular_rule(q, 2.0, 257);
    min_weight = std::min(min_weight, *std::min_element(rule.weights.begin(), rule.weights.end()));
  }
  out.push_back({"singular rule weights nonnegative (min weight)", min_weight, 0.0, min_weight >= 0.0});

  const auto pts = sample_points();
  double e1 = 0.0, e2 = 0.0;
  for (const auto z : pts) {
    e1 = std::max(e1, std::abs(mittag_leffler(1.0, z) - std::exp(z)));
    e2 = std::max(e2, std::abs(mittag_leffler(2.0, z * z) - std::cosh(z)));
  }
  out.push_back(at_most("Mittag-Leffler E_1(z) = exp(z), |z| <= 5", e1, 1e-9));
  out.push_back(at_most("Mittag-Leffler E_2(z^2) = cosh(z), |z| <= 5", e2, 1e-9));
  double e0 = 0.0;
  for (int k = 1; k <= 19; ++k) e0 = std::max(e0, std::abs(mittag_leffler(0.1 * k, 0.0) - 1.0));
  out.push_back(at_most("Mittag-Leffler E_q(0) = 1", e0, 0.0));
  out.push_back(at_most("Mittag-Leffler E_0.5(1) = e erfc(-1)",
                        std::abs(mittag_leffler(0.5, 1.0).real() - std::exp(1.0) * std::erfc(-1.0)), 1e-9));

  const auto trajs = sample_trajectories();
  const KernelSpec gauss{KernelFamily::Gaussian, 1.0};
  const Eigen::MatrixXd g = gram_matrix(trajs, 0.5, gauss);
  out.push_back(at_most("Gram symmetry (max |G - G^T|)", (g - g.transpose()).cwiseAbs().maxCoeff(), 1e-10 * g.norm()));
  const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g).eigenvalues().minCoeff();
  out.push_back(at_most("Gram PSD (-min eigenvalue)", -min_eig, 1e-8 * g.norm()));
  out.push_back(at_most("q=1 Gram vs trapezoid double integral", trapezoid_gram_error(trajs, gauss), 1e-10));

  std::vector<Trajectory> constants;
  for (int i = 0; i < 3; ++i) constants.push_back({0.1, Eigen::MatrixXd::Constant(11, 2, 0.3 * i)});
  const Eigen::MatrixXd a = interaction_matrix(constants, 0.5, gauss, OperatorVariant::FractionalLiouville);
  out.push_back(at_most("interaction matrix of constant trajectories", a.cwiseAbs().maxCoeff(), 0.0));

  double terminal = 0.0;
  double worst_ratio = INFINITY;
  for (double q : {0.3, 0.5, 0.8}) {
    const double coarse = solver_terminal_error(q, 1e-3);
    const double fine = solver_terminal_error(q, 5e-4);
    terminal = std::max(terminal, coarse);
    worst_ratio = std::min(worst_ratio, coarse / fine);
  }
  out.push_back(at_most("solver terminal error vs E_q(-1), dt=1e-3", terminal, 1e-3));
  out.push_back({"solver error ratio when halving dt (min)", worst_ratio, 1.8, worst_ratio >= 1.8});
  return out;
}

std::string format_report(const std::vector<CheckResult>& results) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-50s %14s %14s  %s\n", "check", "measured", "tolerance", "status");
  out += line;
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%-50s %14.6e %14.6e  %s\n", r.name.c_str(), r.measured, r.tolerance,
                  r.passed ? "PASS" : "FAIL");
    out += line;
  }
  return out;
}

}  // namespace fracdmd
