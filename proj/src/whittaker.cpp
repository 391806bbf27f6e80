#include "lwt/whittaker.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "lwt/errors.hpp"
#include "lwt/parallel.hpp"
#include "lwt/specfun.hpp"

namespace lwt {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Overall constant of the double Mellin-Barnes representation.  The 1/4 is
// what the Basset formula gives when the Jacquet integral is reduced twice;
// the extra sqrt(2) fixes the completed rank-3 normalization so that the
// Stade square-norm formula holds with constant 1/(2 pi^{3s} Gamma(3s/2)),
// the same convention under which the rank-2 function is 2 sqrt(y) K_{it}.
// Cross-method agreement with jacquet_oracle is re-checked by the tests.
const double kGl3MellinConstant = 0.25 * std::sqrt(2.0);

// Contour lattice data for the GL(3) double Mellin-Barnes integral
//
//   W = c * y1 y2 * (2 pi)^{-2} sum_{a,b} u[a] v[b] inv_d[a+b]
//                                * (pi y1)^{-s1_a} (pi y2)^{-s2_b} h^2
//
// where u, v are the axis Gamma products and inv_d the coupled denominator,
// which depends on tau1 + tau2 only and therefore lives on the antidiagonal
// index a + b.
struct MBKernel {
  double h = 0.0;
  std::vector<cplx> s1, s2;
  std::vector<cplx> u, v;
  std::vector<cplx> inv_d;
};

MBKernel build_gl3_kernel(const std::vector<cplx>& alpha,
                          const ContourSpec& spec) {
  spec.validate();
  double shift = 0.0;
  for (const cplx& a : alpha) shift = std::max(shift, std::abs(a.imag()));
  const double sigma1 = spec.real_parts.at(0);
  const double sigma2 = spec.real_parts.size() > 1 ? spec.real_parts[1] : sigma1;
  // widen the truncation height so the Gamma decay has fully set in even
  // when the spectral parameters push the kernel ridge off tau = 0
  const double height = spec.height + shift;
  const double h = 1.0 / static_cast<double>(spec.nodes_per_unit);
  const int half = static_cast<int>(std::ceil(height / h));
  const int npts = 2 * half + 1;

  MBKernel k;
  k.h = h;
  k.s1.resize(npts);
  k.s2.resize(npts);
  k.u.resize(npts);
  k.v.resize(npts);
  k.inv_d.resize(2 * npts - 1);
  for (int a = 0; a < npts; ++a) {
    const double tau = (a - half) * h;
    k.s1[a] = cplx(sigma1, tau);
    k.s2[a] = cplx(sigma2, tau);
    cplx pu(1.0, 0.0), pv(1.0, 0.0);
    for (const cplx& al : alpha) {
      pu *= gamma(0.5 * (k.s1[a] - al));
      pv *= gamma(0.5 * (k.s2[a] + al));
    }
    k.u[a] = pu;
    k.v[a] = pv;
  }
  for (int m = 0; m < 2 * npts - 1; ++m) {
    const double tau = (m - 2 * half) * h;
    k.inv_d[m] = 1.0 / gamma(0.5 * cplx(sigma1 + sigma2, tau));
  }
  return k;
}

// Worst-case magnitude of the truncated-away part, estimated from the decay
// of the edge rows/columns of the lattice summand at the given y.
double kernel_tail_estimate(const MBKernel& k, double y1, double y2) {
  const int npts = static_cast<int>(k.s1.size());
  const double p1 = std::pow(kPi * y1, -k.s1[0].real());
  const double p2 = std::pow(kPi * y2, -k.s2[0].real());
  auto row_mag = [&](int a) {
    double s = 0.0;
    for (int b = 0; b < npts; ++b)
      s += std::abs(k.v[b]) * std::abs(k.inv_d[a + b]);
    return std::abs(k.u[a]) * s;
  };
  auto col_mag = [&](int b) {
    double s = 0.0;
    for (int a = 0; a < npts; ++a)
      s += std::abs(k.u[a]) * std::abs(k.inv_d[a + b]);
    return std::abs(k.v[b]) * s;
  };
  double edge = 0.0;
  for (int e : {0, npts - 1}) {
    edge += row_mag(e);
    edge += col_mag(e);
  }
  // geometric continuation of the observed edge decay
  double inner = row_mag(2) + row_mag(npts - 3) + col_mag(2) + col_mag(npts - 3);
  double ratio = inner > 0.0 ? std::min(0.9, edge / inner) : 0.5;
  const double series = 1.0 / (1.0 - std::pow(ratio, 0.5));
  return kGl3MellinConstant * y1 * y2 * p1 * p2 * k.h * k.h /
         (4.0 * kPi * kPi) * edge * series;
}

cplx eval_gl3_kernel(const MBKernel& k, double y1, double y2) {
  const int npts = static_cast<int>(k.s1.size());
  const double l1 = std::log(kPi * y1);
  const double l2 = std::log(kPi * y2);
  std::vector<cplx> x2(npts);
  for (int b = 0; b < npts; ++b) x2[b] = k.v[b] * std::exp(-k.s2[b] * l2);
  cplx total(0.0, 0.0);
  for (int a = 0; a < npts; ++a) {
    cplx q(0.0, 0.0);
    const cplx* d = k.inv_d.data() + a;
    for (int b = 0; b < npts; ++b) q += x2[b] * d[b];
    total += k.u[a] * std::exp(-k.s1[a] * l1) * q;
  }
  return kGl3MellinConstant * y1 * y2 * k.h * k.h / (4.0 * kPi * kPi) * total;
}

std::vector<cplx> alpha_gl3(double t1, double t2) {
  return alpha_from_t(3, {t1, t2});
}

void require_positive(double y, const char* what) {
  if (!(y > 0.0)) throw DomainError(std::string(what) + " must be positive");
}

}  // namespace

cplx i_nu(const SpectralPoint& p, const std::vector<double>& y) {
  const int m = p.n - 1;
  if (static_cast<int>(y.size()) != m)
    throw DomainError("i_nu: y must have n - 1 coordinates");
  const auto b = b_matrix(p.n);
  cplx log_val(0.0, 0.0);
  for (int i = 0; i < m; ++i) {
    require_positive(y[i], "i_nu: y");
    cplx e(0.0, 0.0);
    for (int j = 0; j < m; ++j)
      e += static_cast<double>(b[i][j]) * p.nu[j];
    log_val += e * std::log(y[i]);
  }
  return std::exp(log_val);
}

double whittaker_gl2(double t, double y) {
  require_positive(y, "whittaker_gl2: y");
  return 2.0 * std::sqrt(y) * bessel_k_imag_order(t, 2.0 * kPi * y);
}

cplx whittaker_gl3_complex(double t1, double t2, double y1, double y2,
                           const ContourSpec& contour, double accuracy) {
  require_positive(y1, "whittaker_gl3: y1");
  require_positive(y2, "whittaker_gl3: y2");
  if (!(accuracy > 0.0)) throw DomainError("whittaker_gl3: accuracy must be > 0");
  MBKernel k = build_gl3_kernel(alpha_gl3(t1, t2), contour);
  const double tail = kernel_tail_estimate(k, y1, y2);
  if (tail > accuracy)
    throw ContourTruncationError(
        "whittaker_gl3: contour tail estimate " + err_num(tail) +
        " exceeds accuracy budget; increase the contour height");
  return eval_gl3_kernel(k, y1, y2);
}

double whittaker_gl3(double t1, double t2, double y1, double y2,
                     const ContourSpec& contour, double accuracy) {
  return whittaker_gl3_complex(t1, t2, y1, y2, contour, accuracy).real();
}

std::vector<cplx> whittaker_gl3_grid(double t1, double t2,
                                     const std::vector<double>& y1,
                                     const std::vector<double>& y2,
                                     const ContourSpec& contour,
                                     double accuracy) {
  if (y1.empty() || y2.empty())
    throw DomainError("whittaker_gl3_grid: empty axis");
  for (double y : y1) require_positive(y, "whittaker_gl3_grid: y1");
  for (double y : y2) require_positive(y, "whittaker_gl3_grid: y2");
  MBKernel k = build_gl3_kernel(alpha_gl3(t1, t2), contour);
  const double tail =
      kernel_tail_estimate(k, *std::min_element(y1.begin(), y1.end()),
                           *std::min_element(y2.begin(), y2.end()));
  if (tail > accuracy)
    throw ContourTruncationError(
        "whittaker_gl3_grid: contour tail estimate " + err_num(tail) +
        " exceeds accuracy budget; increase the contour height");

  const int npts = static_cast<int>(k.s1.size());
  const std::size_t n1 = y1.size(), n2 = y2.size();

  // per-column kernel contraction: q[j][a] = sum_b v[b] (pi y2_j)^{-s2_b}
  //                                              * inv_d[a+b]
  std::vector<std::vector<cplx>> q(n2, std::vector<cplx>(npts));
  parallel_for(n2, [&](std::size_t j) {
    std::vector<cplx> x2(npts);
    const double l2 = std::log(kPi * y2[j]);
    for (int b = 0; b < npts; ++b) x2[b] = k.v[b] * std::exp(-k.s2[b] * l2);
    for (int a = 0; a < npts; ++a) {
      cplx acc(0.0, 0.0);
      const cplx* d = k.inv_d.data() + a;
      for (int b = 0; b < npts; ++b) acc += x2[b] * d[b];
      q[j][a] = acc;
    }
  });

  std::vector<cplx> out(n1 * n2);
  parallel_for(n1, [&](std::size_t i) {
    std::vector<cplx> x1(npts);
    const double l1 = std::log(kPi * y1[i]);
    for (int a = 0; a < npts; ++a) x1[a] = k.u[a] * std::exp(-k.s1[a] * l1);
    const double pref =
        kGl3MellinConstant * y1[i] * k.h * k.h / (4.0 * kPi * kPi);
    for (std::size_t j = 0; j < n2; ++j) {
      cplx acc(0.0, 0.0);
      const std::vector<cplx>& qj = q[j];
      for (int a = 0; a < npts; ++a) acc += x1[a] * qj[a];
      out[i * n2 + j] = pref * y2[j] * acc;
    }
  });
  return out;
}

WhittakerEvaluator::WhittakerEvaluator(SpectralPoint point,
                                       WhittakerMethod method,
                                       ContourSpec contour, double accuracy)
    : point_(std::move(point)),
      method_(method),
      contour_(std::move(contour)),
      accuracy_(accuracy) {
  if (!(accuracy_ > 0.0))
    throw DomainError("WhittakerEvaluator: accuracy must be > 0");
  contour_.validate();
  if (method_ == WhittakerMethod::ClosedFormGL2 && point_.n != 2)
    throw DomainError("WhittakerEvaluator: ClosedFormGL2 requires n = 2");
  if (method_ == WhittakerMethod::MellinBarnesGL3 && point_.n != 3)
    throw DomainError("WhittakerEvaluator: MellinBarnesGL3 requires n = 3");
  if (method_ == WhittakerMethod::JacquetOracle &&
      point_.n != 2 && point_.n != 3)
    throw DomainError("WhittakerEvaluator: JacquetOracle requires n in {2, 3}");
}

cplx WhittakerEvaluator::operator()(const std::vector<double>& y) const {
  if (static_cast<int>(y.size()) != point_.n - 1)
    throw DomainError("WhittakerEvaluator: y must have n - 1 coordinates");
  switch (method_) {
    case WhittakerMethod::ClosedFormGL2:
      return cplx(whittaker_gl2(point_.t[0], y[0]), 0.0);
    case WhittakerMethod::MellinBarnesGL3:
      return whittaker_gl3_complex(point_.t[0], point_.t[1], y[0], y[1],
                                   contour_, accuracy_);
    case WhittakerMethod::JacquetOracle:
      return jacquet_oracle(point_.n, point_.t, y);
  }
  throw DomainError("WhittakerEvaluator: unknown method");
}

}  // namespace lwt
