#include "fracdmd/fode.hpp"

#include <cmath>
#include <string>

#include "fracdmd/errors.hpp"
#include "product_weights.hpp"

namespace fracdmd {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::size_t expected_dim(const VectorField& field) {
  return std::visit(overloaded{[](const fields::Linear1d&) -> std::size_t { return 1; },
                               [](const fields::LinearNd& f) -> std::size_t {
                                 return static_cast<std::size_t>(f.matrix.rows());
                               },
                               [](const auto&) -> std::size_t { return 0; }},
                    field);
}

// k^q - (k-1)^q for k >= 1 without cancellation.
double power_increment(double q, std::size_t k) {
  const double kd = static_cast<double>(k);
  if (k == 1) return 1.0;
  return -std::pow(kd, q) * std::expm1(q * std::log1p(-1.0 / kd));
}

}  // namespace

std::string field_name(const VectorField& field) {
  return std::visit(overloaded{[](const fields::Zero&) { return std::string("zero"); },
                               [](const fields::Linear1d&) { return std::string("linear-1d"); },
                               [](const fields::LinearNd&) { return std::string("linear-nd"); },
                               [](const fields::Logistic&) { return std::string("logistic"); },
                               [](const fields::Polynomial&) { return std::string("polynomial"); }},
                    field);
}

Eigen::VectorXd evaluate(const VectorField& field, const Eigen::VectorXd& x) {
  return std::visit(
      overloaded{[&](const fields::Zero&) -> Eigen::VectorXd { return Eigen::VectorXd::Zero(x.size()); },
                 [&](const fields::Linear1d& f) -> Eigen::VectorXd { return f.lambda * x; },
                 [&](const fields::LinearNd& f) -> Eigen::VectorXd { return f.matrix * x; },
                 [&](const fields::Logistic& f) -> Eigen::VectorXd {
                   return (f.r * x.array() * (1.0 - x.array() / f.capacity)).matrix();
                 },
                 [&](const fields::Polynomial& f) -> Eigen::VectorXd {
                   // Horner, componentwise.
                   Eigen::VectorXd acc = Eigen::VectorXd::Zero(x.size());
                   for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) {
                     acc = (acc.array() * x.array() + *it).matrix();
                   }
                   return acc;
                 }},
      field);
}

void validate(const FodeProblem& problem) {
  if (!(std::isfinite(problem.q) && problem.q > 0.0 && problem.q <= 1.0)) {
    throw ParameterError("fode: order q must lie in (0, 1]");
  }
  if (!(std::isfinite(problem.T) && problem.T > 0.0)) throw ParameterError("fode: T must be positive");
  if (!(std::isfinite(problem.dt) && problem.dt > 0.0)) throw ParameterError("fode: dt must be positive");
  if (problem.T / problem.dt < 10.0 - 1e-9) throw ParameterError("fode: T/dt must be at least 10");
  const double steps = problem.T / problem.dt;
  if (std::abs(steps - std::round(steps)) > 1e-6 * steps) {
    throw ParameterError("fode: T must be an integer multiple of dt");
  }
  if (problem.corrector_iterations < 1 || problem.corrector_iterations > 5) {
    throw ParameterError("fode: corrector_iterations must lie in [1, 5]");
  }
  if (problem.x0.size() == 0 || !problem.x0.allFinite()) throw ParameterError("fode: x0 must be non-empty and finite");
  const std::size_t need = expected_dim(problem.rhs);
  if (need != 0 && need != static_cast<std::size_t>(problem.x0.size())) {
    throw ParameterError("fode: " + field_name(problem.rhs) + " expects dimension " + std::to_string(need) +
                         ", x0 has " + std::to_string(problem.x0.size()));
  }
  if (const auto* lin = std::get_if<fields::LinearNd>(&problem.rhs); lin && lin->matrix.rows() != lin->matrix.cols()) {
    throw ParameterError("fode: linear-nd matrix must be square");
  }
  if (const auto* lg = std::get_if<fields::Logistic>(&problem.rhs); lg && !(lg->capacity != 0.0)) {
    throw ParameterError("fode: logistic capacity must be nonzero");
  }
}

Trajectory solve(const FodeProblem& problem) {
  validate(problem);
  const double q = problem.q;
  const double h = problem.dt;
  const auto steps = static_cast<std::size_t>(std::llround(problem.T / h));
  const Eigen::Index n = problem.x0.size();

  // Weight tables shared by every step.
  std::vector<double> second(steps + 2, 0.0);
  for (std::size_t k = 1; k < second.size(); ++k) second[k] = detail::second_difference(q + 1.0, k);
  std::vector<double> increment(steps + 1, 0.0);
  for (std::size_t k = 1; k <= steps; ++k) increment[k] = power_increment(q, k);
  const double corrector_scale = std::pow(h, q) / std::tgamma(q + 2.0);
  const double predictor_scale = std::pow(h, q) / std::tgamma(q + 1.0);

  Trajectory out;
  out.dt = h;
  out.states.resize(static_cast<Eigen::Index>(steps + 1), n);
  out.states.row(0) = problem.x0.transpose();
  Eigen::MatrixXd f(static_cast<Eigen::Index>(steps + 1), n);
  f.row(0) = evaluate(problem.rhs, problem.x0).transpose();

  for (std::size_t step = 0; step < steps; ++step) {
    const std::size_t next = step + 1;  // t_next = next * h

    Eigen::VectorXd predictor_sum = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd corrector_sum = detail::start_factor(q, next) * f.row(0).transpose();
    for (std::size_t j = 0; j <= step; ++j) {
      predictor_sum += increment[next - j] * f.row(static_cast<Eigen::Index>(j)).transpose();
      if (j > 0) corrector_sum += second[next - j] * f.row(static_cast<Eigen::Index>(j)).transpose();
    }

    Eigen::VectorXd x = problem.x0 + predictor_scale * predictor_sum;
    const Eigen::VectorXd history = problem.x0 + corrector_scale * corrector_sum;
    for (int it = 0; it < problem.corrector_iterations; ++it) {
      x = history + corrector_scale * evaluate(problem.rhs, x);
    }
    const Eigen::VectorXd fx = evaluate(problem.rhs, x);
    if (!x.allFinite() || !fx.allFinite()) {
      throw DivergenceError("fode: state became non-finite after t = " + std::to_string(step * h),
                            static_cast<double>(step) * h);
    }
    out.states.row(static_cast<Eigen::Index>(next)) = x.transpose();
    f.row(static_cast<Eigen::Index>(next)) = fx.transpose();
  }
  return out;
}

}  // namespace fracdmd
