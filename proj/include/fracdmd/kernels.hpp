#pragma once

#include <span>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace fracdmd {

enum class KernelFamily { Gaussian, ExponentialDot };

// Base RKHS kernel.
//   Gaussian:       exp(-|x - y|^2 / mu)
//   ExponentialDot: exp(x . y / mu)
struct KernelSpec {
  KernelFamily family = KernelFamily::Gaussian;
  double mu = 1.0;

  bool operator==(const KernelSpec&) const = default;
};

void validate(const KernelSpec& spec);

// Parses "gaussian:mu=<v>" or "expdot:mu=<v>"; the ":mu=..." suffix is optional.
KernelSpec parse_kernel(std::string_view text);
std::string to_string(const KernelSpec& spec);

double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y);

// Entry (i, j) = K(a.row(i), b.row(j)). Points are stored one per row.
Eigen::MatrixXd kernel_cross_matrix(const KernelSpec& spec, const Eigen::MatrixXd& a,
                                    const Eigen::MatrixXd& b);

}  // namespace fracdmd
