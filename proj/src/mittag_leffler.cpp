#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "fracdmd/errors.hpp"
#include "fracdmd/fraccalc.hpp"

namespace fracdmd {

namespace {

using cplx = std::complex<double>;

double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

long double log_gamma(long double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgammal_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

// sin(pi x), exactly zero at integers.
double sin_pi(double x) {
  const double r = std::fmod(x, 2.0);
  if (r == 0.0 || std::abs(r) == 1.0) return 0.0;
  return std::sin(std::numbers::pi * r);
}

// Neumaier-compensated accumulator, applied per component.
struct CompensatedSum {
  double re = 0.0, re_c = 0.0, im = 0.0, im_c = 0.0;

  static void add(double& s, double& c, double v) {
    const double t = s + v;
    c += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
    s = t;
  }
  void add(cplx v) {
    add(re, re_c, v.real());
    add(im, im_c, v.imag());
  }
  cplx value() const { return {re + re_c, im + im_c}; }
};

// Summed in extended precision: near the switch the terms grow to about
// exp(|z|^(1/q)) before cancelling, so the working precision sets the error.
cplx series(double q, cplx z, const MLParams& params) {
  using ld = long double;
  using lcplx = std::complex<ld>;
  const bool real_axis = z.imag() == 0.0;
  const lcplx zz(z.real(), z.imag());
  lcplx power = zz;
  lcplx sum = 1.0L;
  ld previous = 1.0L;
  auto narrow = [&] {
    return real_axis ? cplx(static_cast<double>(sum.real()), 0.0)
                     : cplx(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
  };
  for (int m = 1; m < params.max_terms; ++m) {
    const ld scale = std::exp(-log_gamma(static_cast<ld>(q) * m + 1.0L));
    const lcplx term = power * scale;
    sum += term;
    const ld mag = std::abs(term);
    if (mag == 0.0L || (mag < previous && mag <= static_cast<ld>(params.tol) * std::abs(sum))) {
      return narrow();
    }
    previous = mag;
    power *= zz;
  }
  throw AccuracyError("mittag_leffler: series did not converge within " + std::to_string(params.max_terms) +
                          " terms",
                      narrow());
}

cplx asymptotic(double q, cplx z, const MLParams& params) {
  constexpr double pi = std::numbers::pi;
  const double r = std::abs(z);
  const double arg = std::arg(z);
  const double w = std::pow(r, 1.0 / q);

  // Exponential contributions from every branch of z^(1/q) on the sheet
  // -q pi < arg z + 2 pi n <= q pi.
  cplx result = 0.0;
  for (int n = -1; n <= 1; ++n) {
    const double theta = arg + 2.0 * pi * n;
    if (!(theta > -q * pi && theta <= q * pi)) continue;
    const double phase = theta / q;
    result += std::polar(std::exp(w * std::cos(phase)), w * std::sin(phase)) / q;
  }

  // Algebraic tail -sum_k z^-k / Gamma(1 - q k), using
  // 1/Gamma(1-a) = Gamma(a) sin(pi a) / pi; truncated at its smallest term.
  const double log_r = std::log(r);
  CompensatedSum tail;
  double previous = INFINITY;
  for (int k = 1; k < params.max_terms; ++k) {
    const double a = q * k;
    const double envelope = std::exp(log_gamma(a) - k * log_r) / pi;
    if (envelope > previous) break;
    const double s = sin_pi(a);
    if (s != 0.0) tail.add(std::polar(envelope * s, -k * arg));
    if (envelope <= params.tol * std::abs(tail.value())) break;
    previous = envelope;
  }
  result -= tail.value();
  if (z.imag() == 0.0) result.imag(0.0);
  return result;
}

}  // namespace

void validate(const MLParams& params) {
  if (!(params.series_radius > 0.0)) throw ParameterError("MLParams: series_radius must be positive");
  if (params.max_terms < 50) throw ParameterError("MLParams: max_terms must be at least 50");
  if (!(params.tol > 0.0 && params.tol <= 1e-6)) throw ParameterError("MLParams: tol must lie in (0, 1e-6]");
}

std::complex<double> mittag_leffler(double q, std::complex<double> z, const MLParams& params) {
  if (!(std::isfinite(q) && q > 0.0 && q <= 2.0)) {
    throw ParameterError("mittag_leffler: order " + std::to_string(q) + " outside (0, 2]");
  }
  validate(params);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw ParameterError("mittag_leffler: non-finite argument");
  }
  if (z == cplx(0.0, 0.0)) return 1.0;

  const double w = std::pow(std::abs(z), 1.0 / q);
  return w <= params.series_radius ? series(q, z, params) : asymptotic(q, z, params);
}

}  // namespace fracdmd
