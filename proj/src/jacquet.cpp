#include <algorithm>
#include <cmath>
#include <vector>

#include "lwt/errors.hpp"
#include "lwt/quadrature.hpp"
#include "lwt/specfun.hpp"
#include "lwt/whittaker.hpp"

// Direct quadrature of the Jacquet integral: the power function evaluated on
// the big-cell Bruhat coordinates of w_n u z, integrated against the standard
// character e^{2 pi i (u_{12} + u_{23})} over the unipotent radical.  For
// n = 3 the coordinates are (u1, u2, w) with w the twisted superdiagonal
// corner; the two radii
//
//   R3^2  = y2^2 (y1^2 + u1^2) + (w + u1 u2)^2     (exponent 1 + a1 - a2)
//   R23^2 = y1^2 (y2^2 + u2^2) + w^2               (exponent 1 + a2 - a3)
//
// carry the whole u-dependence, and w does not enter the character.

namespace lwt {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

template <class F>
cplx gl_panel(F&& f, double a, double b, int degree) {
  const auto& gw = gauss_legendre(degree);
  const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < gw.first.size(); ++i)
    acc += gw.second[i] * f(mid + rad * gw.first[i]);
  return rad * acc;
}

double ceil_half(double x) { return 0.5 * std::ceil(2.0 * x); }

// ---------------------------------------------------------------- GL(2) ----

cplx jacquet_gl2(double t, double y) {
  const cplx B(1.0, 2.0 * t);  // 1 + alpha1 - alpha2
  const double ysq = y * y;
  // push the contour to Im u = -hs inside the strip |Im u| < y; this trades
  // oscillatory cancellation for the explicit damping factor e^{-2 pi hs}
  const double hs = 0.8 * y;
  auto f = [&](double x) -> cplx {
    const cplx u(x, -hs);
    const cplx w = u * u + ysq;  // Re w >= y^2 - hs^2 > 0: principal power safe
    return std::pow(w, -0.5 * B) *
           std::exp(cplx(0.0, -kTwoPi * x));
  };
  const double x0 = ceil_half(std::max(2.0, 3.0 * y));
  // central panels narrow enough to resolve the peak scale ~0.6 y and the
  // log-phase of the complex power at large |t|
  const double wtarget = std::min(0.5, std::max(0.45 * y, 0.1));
  const int ncentral = static_cast<int>(std::ceil(2.0 * x0 / wtarget));
  const double cw = 2.0 * x0 / ncentral;
  cplx centre(0.0, 0.0);
  for (int kp = 0; kp < ncentral; ++kp)
    centre += gl_panel(f, -x0 + kp * cw, -x0 + (kp + 1) * cw, 16);
  AccelResult right = integrate_oscillatory_tail(f, x0, 0.5, 20, 14);
  AccelResult left = integrate_oscillatory_tail(
      [&](double x) { return f(-x); }, x0, 0.5, 20, 14);

  const double damp = std::exp(-kTwoPi * hs);
  const cplx ypow = std::exp(0.5 * B * std::log(y));
  const cplx pref = std::pow(cplx(kPi, 0.0), -0.5 * B) * gamma(0.5 * B);
  const double scale = std::abs(pref) * std::sqrt(y) * damp;
  if (scale * (right.error_estimate + left.error_estimate) > 1e-6)
    throw ConvergenceError("jacquet_oracle: gl2 tail estimate exceeds 1e-6");
  return pref * ypow * damp * (centre + right.value + left.value);
}

// ---------------------------------------------------------------- GL(3) ----

struct GL3Setup {
  cplx B1, B2;        // 1 + a1 - a2 and 1 + a2 - a3
  double mu;          // (a1 - a2)/(2i), the imaginary order of the reduced inner
  double y1, y2;
  bool bessel_inner;  // closed-form inner integral (cross-check variant)
};

struct Piece {
  cplx value;
  double est;
};

// inner integral int_R (x^2 + a^2)^{-B1/2} e^{-2 pi i x} dx, evaluated as a
// cosine integral (the sine part is odd) or by its Bessel closed form.
Piece inner_profile(const GL3Setup& s, double a) {
  if (s.bessel_inner) {
    const cplx order = 0.5 * (s.B1 - 1.0);
    const cplx val = 2.0 * std::sqrt(kPi) *
                     std::exp(order * std::log(kPi / a)) *
                     bessel_k_imag_order(s.mu, kTwoPi * a) / gamma(0.5 * s.B1);
    return {val, 1e-14};
  }
  const double asq = a * a;
  auto f = [&](double x) -> cplx {
    return std::pow(cplx(x * x + asq, 0.0), -0.5 * s.B1) *
           std::cos(kTwoPi * x);
  };
  cplx centre(0.0, 0.0);
  double lo = 0.0;
  // geometric grading through the peak when its width a is below panel scale
  if (a < 0.4) {
    double edge = std::max(a, 1e-3);
    while (lo < 0.5) {
      const double hi = std::min(edge, 0.5);
      centre += gl_panel(f, lo, hi, 10);
      lo = hi;
      edge *= 2.0;
    }
  }
  const double x0 = ceil_half(std::max(lo, std::max(1.0, 2.0 * a)));
  for (double p = lo; p < x0 - 0.25; p += 0.5)
    centre += gl_panel(f, p, p + 0.5, 10);
  AccelResult tail = integrate_oscillatory_tail(f, x0, 0.5, 16, 10);
  return {2.0 * (centre + tail.value), 2.0 * tail.error_estimate};
}

// middle integral over the twisted corner coordinate w at fixed u2:
//   q^{-B1} int_R (y1^2 q^2 + w^2)^{-B2/2} G(y2 sqrt(y1^2 q^2 + w^2)/q^2)
//                 e^{2 pi i w u2 / q^2} dw
Piece middle_profile(const GL3Setup& s, double u2) {
  const double q2 = s.y2 * s.y2 + u2 * u2;
  const double q = std::sqrt(q2);
  const double freq = std::abs(u2) / q2;  // oscillation frequency in w
  double est = 0.0;
  auto f = [&](double w) -> cplx {
    const double r2 = s.y1 * s.y1 * q2 + w * w;
    Piece g = inner_profile(s, s.y2 * std::sqrt(r2) / q2);
    est = std::max(est, g.est);
    return std::pow(cplx(r2, 0.0), -0.5 * s.B2) * g.value *
           std::exp(cplx(0.0, kTwoPi * w * u2 / q2));
  };
  const double half_period = freq > 0.0 ? 0.5 / freq : 1e300;
  const double decay_scale = q2 / (kTwoPi * s.y2);
  const double step = std::min(half_period, 2.0 * decay_scale);
  const double peak = s.y1 * q;
  const double width = std::min(step, std::max(0.5 * peak, 0.1));
  const double wc = std::ceil(std::max(2.0 * peak, 1.2 * step) / width) * width;
  cplx centre(0.0, 0.0);
  for (double a = -wc; a < wc - 0.5 * width; a += width)
    centre += gl_panel(f, a, a + width, 12);
  AccelResult up = integrate_oscillatory_tail(f, wc, step, 20, 12);
  AccelResult down = integrate_oscillatory_tail(
      [&](double w) { return f(-w); }, wc, step, 20, 12);
  const double qpow = std::pow(q, -1.0);  // |q^{-B1}| for tempered B1
  const cplx qfac = std::exp(-s.B1 * std::log(q));
  const double span = 2.0 * wc + 40.0 * step;
  return {qfac * (centre + up.value + down.value),
          qpow * (up.error_estimate + down.error_estimate + est * span)};
}

cplx jacquet_gl3(const std::vector<double>& t, const std::vector<double>& y,
                 bool bessel_inner) {
  const auto alpha = alpha_from_t(3, t);
  const cplx a1 = alpha[0], a2 = alpha[1], a3 = alpha[2];
  GL3Setup s;
  s.B1 = 1.0 + a1 - a2;
  s.B2 = 1.0 + a2 - a3;
  s.mu = (a1 - a2).imag() * 0.5;
  s.y1 = y[0];
  s.y2 = y[1];
  s.bessel_inner = bessel_inner;

  double mid_est = 0.0;
  auto f = [&](double u2) -> cplx {
    Piece m = middle_profile(s, u2);
    mid_est = std::max(mid_est, m.est);
    return m.value * std::exp(cplx(0.0, -kTwoPi * u2));
  };
  const double width = s.y2 >= 0.5 ? 0.5 : 0.25;
  const double u0 = std::ceil(2.0 * std::max(1.0, s.y2) / width) * width;
  cplx centre(0.0, 0.0);
  for (double a = -u0; a < u0 - 0.5 * width; a += width)
    centre += gl_panel(f, a, a + width, 12);
  AccelResult up = integrate_oscillatory_tail(f, u0, 0.5, 20, 10);
  AccelResult down = integrate_oscillatory_tail(
      [&](double u2) { return f(-u2); }, u0, 0.5, 20, 10);
  const cplx inner3 = centre + up.value + down.value;

  // completed prefactor over the three positive roots, and the y powers;
  // the sqrt(2) pins the rank-3 completed normalization to the convention in
  // which Stade's square-norm formula holds with constant
  // 1/(2 pi^{3s} Gamma(3s/2)) (see whittaker.cpp, kGl3MellinConstant)
  cplx pref(std::sqrt(2.0), 0.0);
  for (const cplx& b : {s.B1, s.B1 + s.B2 - 1.0, s.B2})
    pref *= std::pow(cplx(kPi, 0.0), -0.5 * b) * gamma(0.5 * b);
  const cplx ypow = std::exp((1.0 - a3) * std::log(s.y1) +
                             (1.0 + a1) * std::log(s.y2));
  const double scale = std::abs(pref) * s.y1 * s.y2;
  const double est = scale * (up.error_estimate + down.error_estimate +
                              mid_est * (2.0 * u0 + 20.0));
  if (est > 1e-6)
    throw ConvergenceError("jacquet_oracle: gl3 tail estimate exceeds 1e-6");
  return pref * ypow * inner3;
}

}  // namespace

cplx jacquet_oracle(int n, const std::vector<double>& t,
                    const std::vector<double>& y) {
  if (n != 2 && n != 3)
    throw DomainError("jacquet_oracle: n must be 2 or 3");
  if (static_cast<int>(t.size()) != n - 1 ||
      static_cast<int>(y.size()) != n - 1)
    throw DomainError("jacquet_oracle: t and y must have n - 1 entries");
  for (double yi : y)
    if (!(yi > 0.0)) throw DomainError("jacquet_oracle: y must be positive");
  if (n == 2) return jacquet_gl2(t[0], y[0]);
  return jacquet_gl3(t, y, false);
}

namespace detail {
cplx jacquet_oracle_gl3_bessel_reduced(const std::vector<double>& t,
                                       const std::vector<double>& y) {
  if (t.size() != 2 || y.size() != 2)
    throw DomainError("jacquet_oracle: t and y must have 2 entries");
  for (double yi : y)
    if (!(yi > 0.0)) throw DomainError("jacquet_oracle: y must be positive");
  return jacquet_gl3(t, y, true);
}
}  // namespace detail

}  // namespace lwt
