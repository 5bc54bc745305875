#include "fracdmd/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "fracdmd/errors.hpp"

namespace fracdmd {

void validate(const KernelSpec& spec) {
  if (!(std::isfinite(spec.mu) && spec.mu > 0.0)) {
    throw ParameterError("kernel: mu must be positive and finite");
  }
}

KernelSpec parse_kernel(std::string_view text) {
  KernelSpec spec;
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  if (name == "gaussian") {
    spec.family = KernelFamily::Gaussian;
  } else if (name == "expdot") {
    spec.family = KernelFamily::ExponentialDot;
  } else {
    throw ParameterError("kernel: unknown family '" + std::string(name) + "'");
  }
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    if (!rest.starts_with("mu=")) {
      throw ParameterError("kernel: expected 'mu=<value>' after ':' in '" + std::string(text) + "'");
    }
    rest.remove_prefix(3);
    const std::string value(rest);
    char* end = nullptr;
    spec.mu = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size()) {
      throw ParameterError("kernel: bad mu value '" + value + "'");
    }
  }
  validate(spec);
  return spec;
}

std::string to_string(const KernelSpec& spec) {
  std::ostringstream out;
  out.precision(17);
  out << (spec.family == KernelFamily::Gaussian ? "gaussian" : "expdot") << ":mu=" << spec.mu;
  return out.str();
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ParameterError("kernel_eval: dimension mismatch (" + std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()) + ")");
  }
  double acc = 0.0;
  if (spec.family == KernelFamily::Gaussian) {
    for (std::size_t i = 0; i < x.size(); ++i) acc += (x[i] - y[i]) * (x[i] - y[i]);
    return std::exp(-acc / spec.mu);
  }
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return std::exp(acc / spec.mu);
}

Eigen::MatrixXd kernel_cross_matrix(const KernelSpec& spec, const Eigen::MatrixXd& a,
                                    const Eigen::MatrixXd& b) {
  validate(spec);
  if (a.cols() != b.cols()) {
    throw ParameterError("kernel_cross_matrix: dimension mismatch (" + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.cols()) + ")");
  }
  const Eigen::Index n = a.cols();
  Eigen::MatrixXd out(a.rows(), b.rows());
  // Row-major copies give contiguous points for kernel_eval.
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> ar = a, br = b;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const std::span<const double> x(ar.data() + i * n, static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      out(i, j) = kernel_eval(spec, x, {br.data() + j * n, static_cast<std::size_t>(n)});
    }
  }
  return out;
}

}  // namespace fracdmd
