#include "lwt/specfun.hpp"

#include <cmath>
#include <numbers>

namespace lwt {

namespace {

constexpr double pi = std::numbers::pi;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Lanczos approximation, g = 7 with 9 coefficients.
constexpr double lanczos_c[9] = {
    0.99999999999980993,    676.5203681218851,      -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6,  1.5056327351493116e-7};

// Valid for Re z >= 0.5; the partial-fraction sum stays in the right half
// plane there, so every log below is principal and the result is the
// principal branch.
cplx log_gamma_right(cplx z) {
  cplx a(lanczos_c[0], 0.0);
  for (int k = 1; k < 9; ++k) a += lanczos_c[k] / (z + cplx(k - 1.0, 0.0));
  cplx w = z + 6.5;  // z + g - 1/2
  return 0.5 * std::log(2.0 * pi) + (z - 0.5) * std::log(w) - w + std::log(a);
}

// Continuous (unwound) branch of log sin(pi z) on Im z >= 0, normalized so it
// agrees with the real logarithm on (0, 1).
cplx log_sin_pi_upper(cplx z) {
  return cplx(0.0, 0.5 * pi) - std::log(2.0) - cplx(0.0, pi) * z +
         std::log(1.0 - std::exp(cplx(0.0, 2.0 * pi) * z));
}

void check_pole(cplx z) {
  double r = std::round(z.real());
  if (r <= 0.0 && std::hypot(z.real() - r, z.imag()) < 1e-10)
    throw PoleError("log_gamma: argument within 1e-10 of a non-positive integer");
}

// cot(pi z) without overflow for large |Im z|; principal values.
cplx cot_pi(cplx z) {
  if (z.imag() < 0.0) return std::conj(cot_pi(std::conj(z)));
  cplx q = std::exp(cplx(0.0, 2.0 * pi) * z);  // |q| <= 1
  return cplx(0.0, 1.0) * (q + 1.0) / (q - 1.0);
}

}  // namespace

cplx log_gamma(cplx z) {
  if (!finite(z)) throw DomainError("log_gamma: non-finite argument");
  if (z.real() >= 0.5) return log_gamma_right(z);
  check_pole(z);
  bool lower = z.imag() < 0.0;
  cplx zz = lower ? std::conj(z) : z;
  cplx lg = std::log(pi) - log_sin_pi_upper(zz) - log_gamma_right(1.0 - zz);
  return lower ? std::conj(lg) : lg;
}

cplx gamma(cplx z) {
  cplx lg = log_gamma(z);
  if (lg.real() > 709.0) throw OverflowError("gamma: result exceeds double range");
  return std::exp(lg);
}

cplx digamma(cplx z) {
  if (!finite(z)) throw DomainError("digamma: non-finite argument");
  if (z.real() < 0.5) {
    check_pole(z);
    return digamma(1.0 - z) - pi * cot_pi(z);
  }
  cplx acc(0.0, 0.0);
  while (z.real() < 10.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  cplx inv = 1.0 / z, inv2 = inv * inv;
  // asymptotic series with Bernoulli numbers B2..B10
  cplx tail = inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
              inv2 * (1.0 / 252.0 -
              inv2 * (1.0 / 240.0 -
              inv2 * (1.0 / 132.0)))));
  return acc + std::log(z) - 0.5 * inv - tail;
}

double bessel_k_imag_order(double t, double x) {
  if (!std::isfinite(t) || !std::isfinite(x))
    throw DomainError("bessel_k_imag_order: non-finite argument");
  if (x <= 0.0) throw DomainError("bessel_k_imag_order: requires x > 0");
  t = std::fabs(t);
  if (t > bessel_k_t_max)
    throw DomainError("bessel_k_imag_order: |t| exceeds supported range");

  // Trapezoid rule on the even integrand exp(-x cosh u) cos(t u).  The
  // integrand is analytic in the strip |Im u| < pi/2 where cos(t u) grows
  // like exp(t |Im u|), so the step is shrunk as t grows to keep the
  // discretization error below ~1e-15.
  const double strip = 1.33;
  const double h = 2.0 * pi * strip / (36.0 + t * strip);
  const double ratio = std::max(45.0 / x, 1.0001);
  const double umax = std::max(1.0, std::acosh(ratio));
  const int nmax = static_cast<int>(umax / h) + 2;
  double sum = 0.5 * std::exp(-x);
  for (int k = 1; k <= nmax; ++k) {
    double u = k * h;
    sum += std::exp(-x * std::cosh(u)) * std::cos(t * u);
  }
  return h * sum;
}

}  // namespace lwt
