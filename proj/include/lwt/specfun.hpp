#pragma once

#include <complex>

#include "lwt/errors.hpp"

namespace lwt {

using cplx = std::complex<double>;

// Principal branch of log Gamma (real on the positive axis, analytic off the
// cut (-inf, 0]).  Relative accuracy ~1e-13 for |Im z| <= 100, Re z in [-50, 50].
// Throws PoleError within 1e-10 of a non-positive integer, DomainError on
// non-finite input.
cplx log_gamma(cplx z);

// exp(log_gamma(z)).  Throws OverflowError when the modulus exceeds double range.
cplx gamma(cplx z);

// Digamma (logarithmic derivative of Gamma), principal values.
cplx digamma(cplx z);

// Modified Bessel function of imaginary order, K_{it}(x) for real t and x > 0,
// computed from K_{it}(x) = int_0^inf exp(-x cosh u) cos(t u) du.  Real valued,
// even in t.  Valid for |t| <= bessel_k_t_max and x >= 1e-3 at absolute
// accuracy ~1e-12.  Throws DomainError for x <= 0 or |t| > bessel_k_t_max.
double bessel_k_imag_order(double t, double x);

inline constexpr double bessel_k_t_max = 64.0;

}  // namespace lwt
