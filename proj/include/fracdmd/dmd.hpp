#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fracdmd/fraccalc.hpp"
#include "fracdmd/kernels.hpp"
#include "fracdmd/okhs.hpp"

namespace fracdmd {

// Which finite-rank matrix supplies the eigenvectors.
//   Forward: (G + reg I)^-1 A^T, the Galerkin matrix of the operator itself;
//            its eigenvectors are the coefficient vectors of approximate
//            eigenfunctions, which is what the reconstruction formulas need.
//   Adjoint: (G + reg I)^-1 A, the compressed adjoint. Same eigenvalues.
enum class EigenBasis { Forward, Adjoint };

EigenBasis parse_basis(std::string_view text);
std::string_view to_string(EigenBasis basis);

struct DecompositionConfig {
  OperatorVariant variant = OperatorVariant::FractionalLiouville;
  double q = 1.0;
  KernelSpec kernel;
  double reg = 0.0;  // Tikhonov shift on G and on the eigenfunction Gram matrix
  int quad_refine = 1;
  EigenBasis basis = EigenBasis::Forward;
  // Keep only the r eigenpairs of smallest |lambda|. Unset keeps all M.
  std::optional<std::size_t> max_modes;
};

void validate(const DecompositionConfig& cfg);

struct ModelDiagnostics {
  double gram_rcond = 0.0;          // reciprocal condition estimate of G + reg I
  double eigvec_condition = 0.0;    // 2-norm condition number of the eigenvector matrix
  double mode_rcond = 0.0;          // reciprocal condition estimate of the mode system
};

struct FiniteRankModel {
  OperatorVariant variant = OperatorVariant::FractionalLiouville;
  double q = 1.0;
  KernelSpec kernel;
  double reg = 0.0;
  int quad_refine = 1;
  EigenBasis basis = EigenBasis::Forward;
  Eigen::VectorXcd eigenvalues;    // r
  Eigen::MatrixXcd coeffs;         // M x r, column i = normalized eigenvector
  Eigen::MatrixXcd modes;          // r x n, row i = dynamic mode
  std::vector<Trajectory> trajectories;
  ModelDiagnostics diagnostics;

  std::size_t rank() const { return static_cast<std::size_t>(eigenvalues.size()); }
  std::size_t dim() const { return trajectories.empty() ? 0 : trajectories.front().dim(); }
  // Kernel order of the occupation-kernel basis.
  double basis_order() const { return gram_order(variant, q); }
};

// Solves (G + reg I) X = A with a symmetric factorization.
// Throws ConditioningError when the reciprocal condition estimate drops below
// machine epsilon.
Eigen::MatrixXd finite_rank_matrix(const Eigen::MatrixXd& G, const Eigen::MatrixXd& A, double reg);

FiniteRankModel decompose(const std::vector<Trajectory>& trajs, const DecompositionConfig& cfg);

// Underlying RKHS function of eigenfunction i evaluated at x0, i.e. phi_i[x](0)
// for any trajectory starting at x0.
std::complex<double> eigenfunction_at(const FiniteRankModel& model, std::size_t i,
                                      std::span<const double> x0);

// All eigenfunctions at once.
Eigen::VectorXcd eigenfunctions_at(const FiniteRankModel& model, std::span<const double> x0);

struct Prediction {
  std::vector<double> times;
  Eigen::MatrixXd states;      // times.size() x n, real part of the reconstruction
  double max_imag = 0.0;       // largest discarded imaginary magnitude
  double max_imag_rel = 0.0;   // same, relative to the largest state magnitude
};

// x(t) ~ Re sum_i xi_i phi_i(x0) b_i(t) with b_i(t) = exp(lambda_i t) for the
// Liouville variant and E_q(lambda_i t^q) for the fractional variant.
Prediction predict(const FiniteRankModel& model, std::span<const double> x0,
                   std::span<const double> times, const MLParams& ml = {});

// Relative L2 error of the reconstruction of each training trajectory from its
// own initial state, on its own sample grid. Falls back to the absolute error
// for an identically zero trajectory.
std::vector<double> training_errors(const FiniteRankModel& model, const MLParams& ml = {});

// Model documents: JSON text, doubles written in shortest round-trip form.
std::string model_to_json(const FiniteRankModel& model);
FiniteRankModel model_from_json(const std::string& text);

}  // namespace fracdmd
