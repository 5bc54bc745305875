#include "fracdmd/okhs.hpp"

#include <cmath>
#include <string>

#include "fracdmd/errors.hpp"
#include "fracdmd/fraccalc.hpp"
#include "fracdmd/parallel.hpp"

namespace fracdmd {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_order(double q) {
  if (!(std::isfinite(q) && q > 0.0 && q <= 1.0)) {
    throw ParameterError("occupation kernel order " + std::to_string(q) + " outside (0, 1]");
  }
}

void check_set(const std::vector<Trajectory>& trajs) {
  if (trajs.empty()) throw ParameterError("empty trajectory list");
  for (const auto& t : trajs) validate(t);
  const std::size_t n = trajs.front().dim();
  for (const auto& t : trajs) {
    if (t.dim() != n) {
      throw ParameterError("trajectories disagree on state dimension (" + std::to_string(n) + " vs " +
                           std::to_string(t.dim()) + ")");
    }
  }
}

// A trajectory prepared for quadrature: row-major samples plus rule weights.
struct Prepared {
  RowMatrix points;
  std::vector<double> weights;
  std::size_t dim = 0;

  std::span<const double> point(std::size_t k) const {
    return {points.data() + k * dim, dim};
  }
};

Prepared prepare(const Trajectory& raw, double q, int refine_factor) {
  const Trajectory traj = refine_factor > 1 ? refine(raw, refine_factor) : raw;
  Prepared p;
  p.points = traj.states;
  p.dim = traj.dim();
  p.weights = singular_weights(q, traj.dt, traj.samples() - 1);
  return p;
}

std::vector<Prepared> prepare_all(const std::vector<Trajectory>& trajs, double q, int refine_factor) {
  std::vector<Prepared> out(trajs.size());
  parallel_for(trajs.size(), [&](std::size_t i) { out[i] = prepare(trajs[i], q, refine_factor); });
  return out;
}

double weighted_kernel_sum(const KernelSpec& kernel, const Prepared& traj, std::span<const double> x) {
  double acc = 0.0;
  for (std::size_t k = 0; k < traj.weights.size(); ++k) {
    acc += traj.weights[k] * kernel_eval(kernel, x, traj.point(k));
  }
  return acc;
}

}  // namespace

void validate(const Trajectory& traj) {
  if (!(std::isfinite(traj.dt) && traj.dt > 0.0)) throw ParameterError("trajectory: dt must be positive");
  if (traj.states.rows() < 2) throw ParameterError("trajectory: need at least 2 samples");
  if (traj.states.cols() < 1) throw ParameterError("trajectory: state dimension must be >= 1");
  if (!traj.states.allFinite()) throw ParameterError("trajectory: non-finite state");
}

Trajectory refine(const Trajectory& traj, int factor) {
  if (factor < 1) throw ParameterError("refine: factor must be >= 1");
  validate(traj);
  if (factor == 1) return traj;
  const Eigen::Index n = traj.states.rows();
  Trajectory out;
  out.dt = traj.dt / factor;
  out.states.resize((n - 1) * factor + 1, traj.states.cols());
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    for (int s = 0; s < factor; ++s) {
      const double a = static_cast<double>(s) / factor;
      out.states.row(k * factor + s) = (1.0 - a) * traj.states.row(k) + a * traj.states.row(k + 1);
    }
  }
  out.states.row(out.states.rows() - 1) = traj.states.row(n - 1);
  return out;
}

OperatorVariant parse_variant(std::string_view text) {
  if (text == "liouville") return OperatorVariant::Liouville;
  if (text == "fractional") return OperatorVariant::FractionalLiouville;
  throw ParameterError("unknown operator variant '" + std::string(text) + "' (liouville|fractional)");
}

std::string_view to_string(OperatorVariant variant) {
  return variant == OperatorVariant::Liouville ? "liouville" : "fractional";
}

double gram_order(OperatorVariant variant, double q) {
  return variant == OperatorVariant::Liouville ? 1.0 : q;
}

double occupation_kernel_at(const Trajectory& traj, double q, const KernelSpec& kernel,
                            std::span<const double> x) {
  check_order(q);
  validate(traj);
  validate(kernel);
  if (x.size() != traj.dim()) {
    throw ParameterError("occupation_kernel_at: point has dimension " + std::to_string(x.size()) +
                         ", trajectory has " + std::to_string(traj.dim()));
  }
  return weighted_kernel_sum(kernel, prepare(traj, q, 1), x);
}

Eigen::MatrixXd gram_matrix(const std::vector<Trajectory>& trajs, double q, const KernelSpec& kernel,
                            int refine_factor) {
  check_order(q);
  check_set(trajs);
  validate(kernel);
  const auto prepared = prepare_all(trajs, q, refine_factor);
  const std::size_t m = trajs.size();

  // Upper triangle, one task per pair.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = j; i < m; ++i) pairs.emplace_back(j, i);

  Eigen::MatrixXd g(m, m);
  parallel_for(pairs.size(), [&](std::size_t p) {
    const auto [j, i] = pairs[p];
    const Prepared& outer = prepared[j];
    const Prepared& inner = prepared[i];
    double acc = 0.0;
    for (std::size_t k = 0; k < outer.weights.size(); ++k) {
      acc += outer.weights[k] * weighted_kernel_sum(kernel, inner, outer.point(k));
    }
    g(j, i) = acc;
  });
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = j + 1; i < m; ++i) g(i, j) = g(j, i);
  return g;
}

Eigen::MatrixXd interaction_matrix(const std::vector<Trajectory>& trajs, double q,
                                   const KernelSpec& kernel, OperatorVariant variant,
                                   int refine_factor) {
  check_order(q);
  check_set(trajs);
  validate(kernel);
  const double order = gram_order(variant, q);
  const auto prepared = prepare_all(trajs, order, refine_factor);
  const std::size_t m = trajs.size();

  Eigen::MatrixXd a(m, m);
  parallel_for(m * m, [&](std::size_t p) {
    const std::size_t j = p / m;
    const std::size_t i = p % m;
    const Trajectory& target = trajs[i];
    if (target.states.row(0) == target.states.row(target.states.rows() - 1)) {
      a(j, i) = 0.0;
      return;
    }
    const Eigen::VectorXd start = target.states.row(0).transpose();
    const Eigen::VectorXd end = target.states.row(target.states.rows() - 1).transpose();
    const std::span<const double> s(start.data(), target.dim());
    const std::span<const double> e(end.data(), target.dim());
    const Prepared& outer = prepared[j];
    double acc = 0.0;
    for (std::size_t k = 0; k < outer.weights.size(); ++k) {
      const auto x = outer.point(k);
      acc += outer.weights[k] * (kernel_eval(kernel, x, e) - kernel_eval(kernel, x, s));
    }
    a(j, i) = acc;
  });
  return a;
}

double occupation_functional(const Trajectory& traj, double q, std::size_t component) {
  check_order(q);
  validate(traj);
  if (component >= traj.dim()) {
    throw ParameterError("occupation_functional: component " + std::to_string(component) +
                         " out of range for dimension " + std::to_string(traj.dim()));
  }
  const std::vector<double> w = singular_weights(q, traj.dt, traj.samples() - 1);
  double acc = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) acc += w[k] * traj.states(static_cast<Eigen::Index>(k), component);
  return acc;
}

OccupationGram assemble_gram(const std::vector<Trajectory>& trajs, double q, const KernelSpec& kernel,
                             OperatorVariant variant, int refine_factor) {
  OccupationGram out;
  out.q = gram_order(variant, q);
  out.variant = variant;
  out.kernel = kernel;
  out.G = gram_matrix(trajs, out.q, kernel, refine_factor);
  out.A = interaction_matrix(trajs, q, kernel, variant, refine_factor);
  return out;
}

}  // namespace fracdmd
