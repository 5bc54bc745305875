#include "fracdmd/dmd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "fracdmd/errors.hpp"
#include "fracdmd/parallel.hpp"

namespace fracdmd {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_rcond(double rcond, const char* what) {
  if (!(rcond >= kEps)) {
    throw ConditioningError(std::string(what) + " is numerically singular (rcond " + std::to_string(rcond) +
                                "); increase the regularization",
                            rcond);
  }
}

// Reciprocal condition estimate of a symmetric factorization. Eigen's estimate
// skips exactly zero pivots, so the pivot spread bounds it from above.
template <typename Ldlt>
double checked_rcond(const Ldlt& ldlt) {
  const auto d = ldlt.vectorD().cwiseAbs();
  const double spread = d.maxCoeff() > 0.0 ? d.minCoeff() / d.maxCoeff() : 0.0;
  return std::min(static_cast<double>(ldlt.rcond()), spread);
}

}  // namespace

EigenBasis parse_basis(std::string_view text) {
  if (text == "forward") return EigenBasis::Forward;
  if (text == "adjoint") return EigenBasis::Adjoint;
  throw ParameterError("unknown eigen basis '" + std::string(text) + "' (forward|adjoint)");
}

std::string_view to_string(EigenBasis basis) {
  return basis == EigenBasis::Forward ? "forward" : "adjoint";
}

void validate(const DecompositionConfig& cfg) {
  if (!(std::isfinite(cfg.q) && cfg.q > 0.0 && cfg.q <= 1.0)) {
    throw ParameterError("decomposition: order q must lie in (0, 1]");
  }
  if (!(std::isfinite(cfg.reg) && cfg.reg >= 0.0)) throw ParameterError("decomposition: reg must be >= 0");
  if (cfg.quad_refine < 1) throw ParameterError("decomposition: quad_refine must be >= 1");
  if (cfg.max_modes && *cfg.max_modes == 0) throw ParameterError("decomposition: max_modes must be >= 1");
  validate(cfg.kernel);
}

Eigen::MatrixXd finite_rank_matrix(const Eigen::MatrixXd& G, const Eigen::MatrixXd& A, double reg) {
  if (G.rows() != G.cols() || A.rows() != G.rows() || A.cols() != G.cols()) {
    throw ParameterError("finite_rank_matrix: G and A must be square and of equal size");
  }
  if (!(reg >= 0.0)) throw ParameterError("finite_rank_matrix: reg must be >= 0");
  const Eigen::Index m = G.rows();
  const Eigen::MatrixXd shifted = G + reg * Eigen::MatrixXd::Identity(m, m);
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(shifted);
  if (ldlt.info() != Eigen::Success) throw ConditioningError("finite_rank_matrix: factorization failed", 0.0);
  check_rcond(checked_rcond(ldlt), "G + reg I");
  return ldlt.solve(A);
}

FiniteRankModel decompose(const std::vector<Trajectory>& trajs, const DecompositionConfig& cfg) {
  validate(cfg);
  const OccupationGram og = assemble_gram(trajs, cfg.q, cfg.kernel, cfg.variant, cfg.quad_refine);
  const Eigen::Index m = og.G.rows();

  const Eigen::MatrixXd X =
      finite_rank_matrix(og.G, cfg.basis == EigenBasis::Forward ? Eigen::MatrixXd(og.A.transpose()) : og.A, cfg.reg);

  const Eigen::EigenSolver<Eigen::MatrixXd> es(X, true);
  if (es.info() != Eigen::Success) throw ConditioningError("decompose: eigensolver did not converge", 0.0);
  const Eigen::VectorXcd lambda = es.eigenvalues();
  const Eigen::MatrixXcd vectors = es.eigenvectors();

  // Descending |lambda|, ties by descending imaginary part.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ma = std::abs(lambda(a));
    const double mb = std::abs(lambda(b));
    if (ma != mb) return ma > mb;
    return lambda(a).imag() > lambda(b).imag();
  });
  if (cfg.max_modes && *cfg.max_modes < order.size()) {
    order.erase(order.begin(), order.end() - static_cast<std::ptrdiff_t>(*cfg.max_modes));
  }
  const auto r = static_cast<Eigen::Index>(order.size());

  FiniteRankModel model;
  model.variant = cfg.variant;
  model.q = cfg.q;
  model.kernel = cfg.kernel;
  model.reg = cfg.reg;
  model.quad_refine = cfg.quad_refine;
  model.basis = cfg.basis;
  model.trajectories = trajs;
  model.eigenvalues.resize(r);
  model.coeffs.resize(m, r);

  const Eigen::MatrixXcd Gc = og.G.cast<std::complex<double>>();
  for (Eigen::Index i = 0; i < r; ++i) {
    model.eigenvalues(i) = lambda(order[i]);
    const Eigen::VectorXcd v = vectors.col(order[i]);
    const double norm2 = std::abs(v.dot(Gc * v));
    if (!(norm2 > 0.0)) throw ConditioningError("decompose: eigenvector has zero OKHS norm", 0.0);
    model.coeffs.col(i) = v / std::sqrt(norm2);
  }

  // Galerkin system for the modes: entry (i, j) = <phi_j, phi_i>.
  const Eigen::MatrixXcd& V = model.coeffs;
  const Eigen::MatrixXcd H = V.adjoint() * Gc * V + cfg.reg * Eigen::MatrixXcd::Identity(r, r);
  const std::size_t n = trajs.front().dim();
  const double order_q = og.q;
  Eigen::MatrixXd D(m, static_cast<Eigen::Index>(n));
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t k) {
    const Trajectory t = refine(trajs[k], cfg.quad_refine);
    for (std::size_t j = 0; j < n; ++j) {
      D(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = occupation_functional(t, order_q, j);
    }
  });
  const Eigen::LDLT<Eigen::MatrixXcd> mode_solver(H);
  model.diagnostics.mode_rcond = checked_rcond(mode_solver);
  check_rcond(model.diagnostics.mode_rcond, "eigenfunction Gram matrix");
  model.modes = mode_solver.solve(V.adjoint() * D.cast<std::complex<double>>());

  model.diagnostics.gram_rcond =
      checked_rcond(Eigen::LDLT<Eigen::MatrixXd>(og.G + cfg.reg * Eigen::MatrixXd::Identity(m, m)));
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
  const auto& s = svd.singularValues();
  model.diagnostics.eigvec_condition = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : INFINITY;
  return model;
}

Eigen::VectorXcd eigenfunctions_at(const FiniteRankModel& model, std::span<const double> x0) {
  if (x0.size() != model.dim()) {
    throw ParameterError("eigenfunction_at: point has dimension " + std::to_string(x0.size()) +
                         ", model has " + std::to_string(model.dim()));
  }
  const std::size_t m = model.trajectories.size();
  Eigen::VectorXd kernel_values(static_cast<Eigen::Index>(m));
  parallel_for(m, [&](std::size_t k) {
    kernel_values(static_cast<Eigen::Index>(k)) =
        occupation_kernel_at(refine(model.trajectories[k], model.quad_refine), model.basis_order(),
                             model.kernel, x0);
  });
  return model.coeffs.transpose() * kernel_values.cast<std::complex<double>>();
}

std::complex<double> eigenfunction_at(const FiniteRankModel& model, std::size_t i,
                                      std::span<const double> x0) {
  if (i >= model.rank()) {
    throw ParameterError("eigenfunction_at: index " + std::to_string(i) + " out of range for rank " +
                         std::to_string(model.rank()));
  }
  return eigenfunctions_at(model, x0)(static_cast<Eigen::Index>(i));
}

Prediction predict(const FiniteRankModel& model, std::span<const double> x0, std::span<const double> times,
                   const MLParams& ml) {
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(std::isfinite(times[k]) && times[k] >= 0.0)) throw ParameterError("predict: times must be finite and >= 0");
    if (k > 0 && times[k] < times[k - 1]) throw ParameterError("predict: times must be sorted ascending");
  }
  const Eigen::VectorXcd phi0 = eigenfunctions_at(model, x0);
  const Eigen::Index r = static_cast<Eigen::Index>(model.rank());
  const auto n = static_cast<Eigen::Index>(model.dim());

  // Row i of `weighted` is xi_i * phi_i(x0).
  const Eigen::MatrixXcd weighted = phi0.asDiagonal() * model.modes;

  Prediction out;
  out.times.assign(times.begin(), times.end());
  out.states.resize(static_cast<Eigen::Index>(times.size()), n);
  std::vector<double> imag(times.size(), 0.0);
  parallel_for(times.size(), [&](std::size_t k) {
    const double t = times[k];
    Eigen::VectorXcd basis(r);
    for (Eigen::Index i = 0; i < r; ++i) {
      const std::complex<double> lam = model.eigenvalues(i);
      basis(i) = model.variant == OperatorVariant::Liouville ? std::exp(lam * t)
                                                             : mittag_leffler(model.q, lam * std::pow(t, model.q), ml);
    }
    const Eigen::VectorXcd x = weighted.transpose() * basis;
    out.states.row(static_cast<Eigen::Index>(k)) = x.real().transpose();
    imag[k] = x.imag().cwiseAbs().maxCoeff();
  });
  out.max_imag = imag.empty() ? 0.0 : *std::max_element(imag.begin(), imag.end());
  const double scale = out.states.size() ? out.states.cwiseAbs().maxCoeff() : 0.0;
  out.max_imag_rel = scale > 0.0 ? out.max_imag / scale : out.max_imag;
  return out;
}

std::vector<double> training_errors(const FiniteRankModel& model, const MLParams& ml) {
  std::vector<double> errors;
  for (const auto& traj : model.trajectories) {
    std::vector<double> times(traj.samples());
    for (std::size_t k = 0; k < times.size(); ++k) times[k] = static_cast<double>(k) * traj.dt;
    const Eigen::VectorXd x0 = traj.states.row(0).transpose();
    const Prediction p = predict(model, {x0.data(), static_cast<std::size_t>(x0.size())}, times, ml);
    const double ref = traj.states.norm();
    const double diff = (p.states - traj.states).norm();
    errors.push_back(ref > 0.0 ? diff / ref : diff);
  }
  return errors;
}

}  // namespace fracdmd
