#pragma once

// Independent reference computations for the tests. Nothing here reuses the
// library's quadrature weights or series code.

#include <array>
#include <cmath>
#include <complex>
#include <functional>

namespace oracle {

// Adaptive Gauss-Kronrod (7/15) on [a, b].
inline double gauss_kronrod(const std::function<double(double)>& f, double a, double b, double tol,
                            int depth = 40) {
  static constexpr std::array<double, 8> xk = {0.991455371120812639, 0.949107912342758525, 0.864864423359769073,
                                               0.741531185599394440, 0.586087235467691130, 0.405845151377397167,
                                               0.207784955007898468, 0.0};
  static constexpr std::array<double, 8> wk = {0.022935322010529225, 0.063092092629978553, 0.104790010322250184,
                                               0.140653259715525919, 0.169004726639267903, 0.190350578064785410,
                                               0.204432940075298892, 0.209482141084727828};
  static constexpr std::array<double, 4> wg = {0.129484966168869693, 0.279705391489276668, 0.381830050505118945,
                                               0.417959183673469388};
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double kron = wk[7] * f(c);
  double gauss = wg[3] * f(c);
  for (int i = 0; i < 7; ++i) {
    const double s = f(c - h * xk[i]) + f(c + h * xk[i]);
    kron += wk[i] * s;
    if (i % 2 == 1) gauss += wg[i / 2] * s;
  }
  kron *= h;
  gauss *= h;
  if (std::abs(kron - gauss) <= tol || depth == 0) return kron;
  return gauss_kronrod(f, a, c, 0.5 * tol, depth - 1) + gauss_kronrod(f, c, b, 0.5 * tol, depth - 1);
}

// (1/Gamma(q)) int_0^T (T - tau)^(q-1) g(tau) dtau via u = (T - tau)^q, which
// turns the weakly singular integrand into a smooth one.
inline double rl_integral(const std::function<double(double)>& g, double q, double T, double tol = 1e-12) {
  if (q == 1.0) return gauss_kronrod(g, 0.0, T, tol);
  const double upper = std::pow(T, q);
  auto smooth = [&](double u) { return g(T - std::pow(u, 1.0 / q)); };
  return gauss_kronrod(smooth, 0.0, upper, tol) / std::tgamma(q + 1.0);
}

// E_q(z) by direct summation in long double; adequate for |z| up to ~10.
inline std::complex<double> mittag_leffler_series(double q, std::complex<double> z) {
  std::complex<long double> sum = 0.0L;
  std::complex<long double> power = 1.0L;
  const std::complex<long double> zz(z.real(), z.imag());
  for (int m = 0; m < 600; ++m) {
    const long double term_scale = std::exp(-std::lgamma(static_cast<long double>(q) * m + 1.0L));
    const std::complex<long double> term = power * term_scale;
    sum += term;
    if (m > 10 && std::abs(term) < 1e-22L * std::abs(sum)) break;
    power *= zz;
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

}  // namespace oracle
