#include <doctest.h>

#include <cmath>
#include <vector>

#include "fracdmd/errors.hpp"
#include "fracdmd/kernels.hpp"

using namespace fracdmd;

TEST_SUITE("kernels") {

TEST_CASE("kernel values") {
  const std::vector<double> x{1.0, 2.0}, y{0.5, -1.0};
  const KernelSpec g{KernelFamily::Gaussian, 2.0};
  const KernelSpec e{KernelFamily::ExponentialDot, 4.0};
  CHECK(kernel_eval(g, x, y) == doctest::Approx(std::exp(-(0.25 + 9.0) / 2.0)));
  CHECK(kernel_eval(g, x, x) == 1.0);
  CHECK(kernel_eval(e, x, y) == doctest::Approx(std::exp((0.5 - 2.0) / 4.0)));
  CHECK(kernel_eval(g, x, y) == kernel_eval(g, y, x));
  CHECK_THROWS_AS(kernel_eval(g, x, std::vector<double>{1.0}), ParameterError);
}

TEST_CASE("parse and format round trip") {
  const KernelSpec a = parse_kernel("gaussian:mu=0.3");
  CHECK(a.family == KernelFamily::Gaussian);
  CHECK(a.mu == 0.3);
  CHECK(parse_kernel(to_string(a)) == a);
  const KernelSpec b = parse_kernel("expdot:mu=1e-2");
  CHECK(b.family == KernelFamily::ExponentialDot);
  CHECK(b.mu == 0.01);
  CHECK(parse_kernel("gaussian").mu == 1.0);
  const KernelSpec odd{KernelFamily::Gaussian, 0.1 + 0.2};
  CHECK(parse_kernel(to_string(odd)) == odd);
}

TEST_CASE("malformed kernel specs") {
  CHECK_THROWS_AS(parse_kernel("laplace:mu=1"), ParameterError);
  CHECK_THROWS_AS(parse_kernel("gaussian:mu="), ParameterError);
  CHECK_THROWS_AS(parse_kernel("gaussian:mu=abc"), ParameterError);
  CHECK_THROWS_AS(parse_kernel("gaussian:mu=1x"), ParameterError);
  CHECK_THROWS_AS(parse_kernel("gaussian:sigma=1"), ParameterError);
  CHECK_THROWS_AS(parse_kernel("gaussian:mu=-1"), ParameterError);
  CHECK_THROWS_AS(parse_kernel("gaussian:mu=0"), ParameterError);
  CHECK_THROWS_AS(validate(KernelSpec{KernelFamily::Gaussian, INFINITY}), ParameterError);
}

TEST_CASE("cross matrix") {
  Eigen::MatrixXd a(2, 2), b(3, 2);
  a << 0, 0, 1, 1;
  b << 0, 0, 1, 0, 2, 2;
  const KernelSpec g{KernelFamily::Gaussian, 1.0};
  const Eigen::MatrixXd k = kernel_cross_matrix(g, a, b);
  REQUIRE(k.rows() == 2);
  REQUIRE(k.cols() == 3);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Eigen::VectorXd x = a.row(i).transpose(), y = b.row(j).transpose();
      CHECK(k(i, j) == kernel_eval(g, {x.data(), 2}, {y.data(), 2}));
    }
  }
  CHECK_THROWS_AS(kernel_cross_matrix(g, a, Eigen::MatrixXd(2, 3)), ParameterError);
}

}
