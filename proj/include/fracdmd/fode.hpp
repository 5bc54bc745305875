#pragma once

#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "fracdmd/okhs.hpp"

namespace fracdmd {

// Built-in vector fields f for D_*^q x = f(x).
namespace fields {

struct Zero {};

// f(x) = lambda x, scalar state.
struct Linear1d {
  double lambda = -1.0;
};

// f(x) = M x.
struct LinearNd {
  Eigen::MatrixXd matrix;
};

// f_i(x) = r x_i (1 - x_i / capacity), componentwise.
struct Logistic {
  double r = 1.0;
  double capacity = 1.0;
};

// f_i(x) = sum_k coeffs[k] x_i^k, componentwise (e.g. {0, a, 0, b} for a
// Duffing-like cubic restoring term).
struct Polynomial {
  std::vector<double> coeffs;
};

}  // namespace fields

using VectorField = std::variant<fields::Zero, fields::Linear1d, fields::LinearNd, fields::Logistic,
                                 fields::Polynomial>;

std::string field_name(const VectorField& field);
Eigen::VectorXd evaluate(const VectorField& field, const Eigen::VectorXd& x);

struct FodeProblem {
  double q = 1.0;
  VectorField rhs = fields::Zero{};
  Eigen::VectorXd x0;
  double T = 1.0;
  double dt = 0.01;
  int corrector_iterations = 1;  // 1 is standard ABM; up to 5
};

void validate(const FodeProblem& problem);

// Adams-Bashforth-Moulton predictor-corrector on the Volterra form
// x(t) = x0 + J^q f(x)(t): fractional rectangle predictor, product-trapezoid
// corrector. Throws DivergenceError on a non-finite state.
Trajectory solve(const FodeProblem& problem);

}  // namespace fracdmd
