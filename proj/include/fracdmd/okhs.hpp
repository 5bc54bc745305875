#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "fracdmd/kernels.hpp"

namespace fracdmd {

// Uniformly sampled trajectory gamma : [0, T] -> R^n. Row k of states is the
// state at time k * dt.
struct Trajectory {
  double dt = 1.0;
  Eigen::MatrixXd states;

  std::size_t samples() const { return static_cast<std::size_t>(states.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(states.cols()); }
  double horizon() const { return static_cast<double>(states.rows() - 1) * dt; }
};

void validate(const Trajectory& traj);

// Linear re-interpolation onto a grid `factor` times finer.
Trajectory refine(const Trajectory& traj, int factor);

enum class OperatorVariant { Liouville, FractionalLiouville };

OperatorVariant parse_variant(std::string_view text);
std::string_view to_string(OperatorVariant variant);

// Order of the occupation kernels used for the Gram matrix: 1 for the
// Liouville operator, q for the fractional Liouville operator.
double gram_order(OperatorVariant variant, double q);

// K_{gamma,q}(x) = C_q int_0^T (T - t)^(q-1) K(x, gamma(t)) dt.
double occupation_kernel_at(const Trajectory& traj, double q, const KernelSpec& kernel,
                            std::span<const double> x);

// G(j, i) = <Gamma_i, Gamma_j>, a double singular-weight integral of the kernel
// along trajectories j and i. `refine_factor` re-interpolates every trajectory.
Eigen::MatrixXd gram_matrix(const std::vector<Trajectory>& trajs, double q, const KernelSpec& kernel,
                            int refine_factor = 1);

// A(j, i) = <A* Gamma_i, Gamma_j>
//         = C_p int_0^{T_j} (T_j - tau)^(p-1) [K(gamma_j(tau), gamma_i(T_i)) - K(gamma_j(tau), gamma_i(0))] dtau
// with p = 1 for Liouville and p = q for the fractional variant.
Eigen::MatrixXd interaction_matrix(const std::vector<Trajectory>& trajs, double q,
                                   const KernelSpec& kernel, OperatorVariant variant,
                                   int refine_factor = 1);

// C_q int_0^T (T - tau)^(q-1) gamma_j(tau) dtau: the pairing of coordinate j of
// the full-state observable with Gamma_{gamma,q}.
double occupation_functional(const Trajectory& traj, double q, std::size_t component);

struct OccupationGram {
  double q = 1.0;  // weight order actually used (1 for Liouville)
  Eigen::MatrixXd G;
  Eigen::MatrixXd A;
  OperatorVariant variant = OperatorVariant::FractionalLiouville;
  KernelSpec kernel;
};

OccupationGram assemble_gram(const std::vector<Trajectory>& trajs, double q, const KernelSpec& kernel,
                             OperatorVariant variant, int refine_factor = 1);

}  // namespace fracdmd
