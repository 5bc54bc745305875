#pragma once

#include <cmath>
#include <cstddef>

namespace fracdmd::detail {

// (k+1)^a - 2 k^a + (k-1)^a for k >= 1. For larger k the binomial series
// 2 k^a sum_{m even} C(a,m) k^-m avoids the cancellation of the direct form.
inline double second_difference(double a, std::size_t k) {
  const double kd = static_cast<double>(k);
  if (k < 8) return std::pow(kd + 1.0, a) - 2.0 * std::pow(kd, a) + std::pow(kd - 1.0, a);
  const double x = 1.0 / kd;
  double coeff = 1.0;
  double xm = 1.0;
  double sum = 0.0;
  for (int m = 1; m <= 80; ++m) {
    coeff *= (a - m + 1) / m;
    xm *= x;
    if (m % 2 == 1) continue;
    const double term = coeff * xm;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return 2.0 * std::pow(kd, a) * sum;
}

// (n-1)^(q+1) - (n-q-1) n^q, the first-node weight factor, for n >= 1.
inline double start_factor(double q, std::size_t n) {
  const double a = q + 1.0;
  const double nd = static_cast<double>(n);
  if (n < 8) return std::pow(nd - 1.0, a) - (nd - q - 1.0) * std::pow(nd, q);
  const double x = 1.0 / nd;
  double coeff = 1.0;
  double xm = 1.0;
  double sum = 0.0;
  for (int m = 1; m <= 80; ++m) {
    coeff *= (a - m + 1) / m;
    xm *= -x;
    if (m == 1) continue;
    const double term = coeff * xm;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return std::pow(nd, a) * sum;
}

}  // namespace fracdmd::detail
