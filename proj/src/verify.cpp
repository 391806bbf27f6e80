#include "lwt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include <json.hpp>

#include "lwt/errors.hpp"
#include "lwt/whittaker.hpp"

namespace lwt {
namespace {

constexpr double pi = std::numbers::pi;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string fmt(cplx z) {
  if (z.imag() == 0.0) return fmt(z.real());
  return fmt(z.real()) + (z.imag() < 0 ? " - " : " + ") +
         fmt(std::abs(z.imag())) + "i";
}

bool near_gamma_pole(cplx z) {
  if (std::abs(z.imag()) > 1e-10) return false;
  const double r = std::round(z.real());
  return r <= 0.0 && std::abs(z.real() - r) < 1e-10;
}

// Gauss-Legendre panel nodes and weights for one axis of the log-coordinate
// box; weights carry du only (jacobians are absorbed into the integrand's
// exponents by the callers).
void log_axis(double lo, double hi, const QuadratureRule& rule,
              std::vector<double>& u, std::vector<double>& w) {
  const auto& [gx, gw] = gauss_legendre(rule.degree);
  const double ulo = std::log(lo);
  const double pw = (std::log(hi) - ulo) / rule.panels;
  u.clear();
  w.clear();
  for (int p = 0; p < rule.panels; ++p) {
    const double mid = ulo + (p + 0.5) * pw;
    for (int k = 0; k < rule.degree; ++k) {
      u.push_back(mid + 0.5 * pw * gx[k]);
      w.push_back(0.5 * pw * gw[k]);
    }
  }
}

}  // namespace

std::string identity_kind_name(IdentityKind k) {
  switch (k) {
    case IdentityKind::StadeN2: return "stade_n2";
    case IdentityKind::StadeN3: return "stade_n3";
    case IdentityKind::ResidueR11: return "residue_r11";
    case IdentityKind::MellinKernel: return "mellin_kernel";
    case IdentityKind::MellinRoundtrip: return "mellin_roundtrip";
    case IdentityKind::PlancherelEquality: return "plancherel_equality";
  }
  throw DomainError("identity_kind_name: unknown kind");
}

IdentityReport make_identity_report(IdentityKind k, cplx lhs, cplx rhs,
                                    double threshold,
                                    std::map<std::string, std::string> params) {
  IdentityReport r;
  r.identity = k;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_err = std::abs(lhs - rhs);
  r.rel_err =
      r.abs_err / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  r.threshold = threshold;
  // Identities with an exactly-zero side (e.g. the kernel below the jump)
  // make the relative error meaningless, so either error passing the
  // threshold counts.
  r.pass = r.rel_err <= threshold || r.abs_err <= threshold;
  r.params = std::move(params);
  return r;
}

std::string identity_reports_to_json(
    const std::vector<IdentityReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const IdentityReport& r : reports) {
    nlohmann::json j;
    j["identity"] = identity_kind_name(r.identity);
    j["lhs"] = {r.lhs.real(), r.lhs.imag()};
    j["rhs"] = {r.rhs.real(), r.rhs.imag()};
    j["abs_err"] = r.abs_err;
    j["rel_err"] = r.rel_err;
    j["threshold"] = r.threshold;
    j["pass"] = r.pass;
    j["params"] = r.params;
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

Box default_stade_box(int n) {
  if (n == 2) return {{std::exp(-28.0), std::exp(2.0)}};
  if (n == 3)
    return {{std::exp(-22.0), std::exp(2.0)},
            {std::exp(-22.0), std::exp(2.0)}};
  throw UnsupportedRank("default_stade_box: n must be 2 or 3");
}

QuadratureRule default_stade_rule(int n) {
  if (n == 2) return {30, 10};
  if (n == 3) return {24, 10};
  throw UnsupportedRank("default_stade_rule: n must be 2 or 3");
}

cplx stade_rhs(int n, const SpectralPoint& p, const SecondSpectralPoint& q,
               cplx s) {
  if (n != 2 && n != 3) throw UnsupportedRank("stade_rhs: n must be 2 or 3");
  if (p.n != n || q.n != n)
    throw DomainError("stade_rhs: spectral points must have rank n");
  std::vector<cplx> lg;
  lg.reserve(static_cast<size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      // Add the two alpha entries in a value-determined order so the
      // rounding, and hence the final value, is identical under p <-> q.
      cplx a = p.alpha[j], b = q.alpha[k];
      if (b.real() < a.real() ||
          (b.real() == a.real() && b.imag() < a.imag()))
        std::swap(a, b);
      const cplx z = 0.5 * (s + (a + b));
      if (near_gamma_pole(z))
        throw PoleError("stade_rhs: Gamma argument at a pole");
      lg.push_back(log_gamma(z));
    }
  }
  // Sorted summation makes the value bitwise invariant under permutations of
  // either alpha set and under p <-> q.
  std::sort(lg.begin(), lg.end(), [](const cplx& a, const cplx& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  cplx total(0.0, 0.0);
  for (const cplx& v : lg) total += v;
  const cplx denom_arg = 0.5 * static_cast<double>(n) * s;
  if (near_gamma_pole(denom_arg)) return cplx(0.0, 0.0);
  total -= log_gamma(denom_arg);
  total -= std::log(2.0);
  total -= s * (0.5 * n * (n - 1)) * std::log(pi);
  return std::exp(total);
}

cplx stade_lhs(int n, const SpectralPoint& p, const SecondSpectralPoint& q,
               cplx s, const QuadratureRule& rule, const Box& y_box,
               double tail_rel) {
  if (n != 2 && n != 3) throw UnsupportedRank("stade_lhs: n must be 2 or 3");
  if (p.n != n || q.n != n)
    throw DomainError("stade_lhs: spectral points must have rank n");
  if (!(s.real() >= 1.0))
    throw DomainError("stade_lhs: requires Re(s) >= 1");
  rule.validate();
  const Box box = y_box.empty() ? default_stade_box(n) : y_box;
  if (static_cast<int>(box.size()) != n - 1)
    throw DomainError("stade_lhs: box dimension must be n - 1");
  if (tail_rel <= 0.0) tail_rel = n == 2 ? 1e-8 : 1e-5;

  // When the caller leaves the box to us, a first pass on the default box
  // fixes the scale |I|; if the tail bound misses tail_rel * |I| (the
  // integral may be cancellation-small, e.g. for complex s), the box is
  // widened until the analytic decay bounds clear the budget and the
  // quadrature is re-run once.  An explicit caller box is never widened.
  const bool adaptive = y_box.empty();

  if (n == 2) {
    const double t = p.t[0];
    const double u = q.t[0];
    const double sigma = s.real();
    // Small-y bound from |K_it(x)| <= K_0(x) <= log(2/x) + 1:
    // int_0^lo 4 (L + log(lo/y))^2 y^{sigma-1} dy with L = log(1/(pi lo)) + 1.
    auto low_bound = [&](double lo) {
      const double L = std::log(1.0 / (pi * lo)) + 1.0;
      return 4.0 * std::pow(lo, sigma) / sigma *
             (L * L + 2.0 * L / sigma + 2.0 / (sigma * sigma));
    };
    // Large-y bound from K_it(x) <= sqrt(pi/(2x)) e^{-x}: the integrand
    // decays like e^{-4 pi y}, so the remainder is its edge value / (4 pi).
    auto high_bound = [&](double hi) {
      return std::pow(hi, sigma - 2.0) * std::exp(-4.0 * pi * hi) /
             (4.0 * pi);
    };
    double lo = box[0][0], hi = box[0][1];
    QuadratureRule r2 = rule;
    for (int round = 0;; ++round) {
      const cplx I = integrate_box(
          [&](const std::vector<double>& y) {
            const double wpq = whittaker_gl2(t, y[0]) * whittaker_gl2(u, y[0]);
            // y^s from the pairing weight, y^{-2} from d*y
            return wpq * std::exp((s - 2.0) * std::log(y[0]));
          },
          r2, {{lo, hi}});
      const double tail = low_bound(lo) + high_bound(hi);
      const double budget = tail_rel * std::abs(I);
      if (tail <= budget) return I;
      if (!adaptive || round == 1)
        throw TailBudgetExceeded("stade_lhs: y-box tail estimate " +
                                 fmt(tail) + " exceeds budget " + fmt(budget));
      while (low_bound(lo) > 0.25 * budget && lo > 1e-250)
        lo *= std::exp(-4.0);
      while (high_bound(hi) > 0.25 * budget) hi *= std::exp(0.5);
      const double stretch =
          std::log(hi / lo) / std::log(box[0][1] / box[0][0]);
      r2.panels = static_cast<int>(std::ceil(rule.panels * stretch));
    }
  }

  // Rank 3: Gauss-Legendre panel nodes in log coordinates, evaluated with one
  // shared contour-kernel pass per spectral point over the whole lattice.
  Box b = box;
  QuadratureRule r3 = rule;
  for (int round = 0;; ++round) {
    std::vector<double> u1, w1, u2, w2;
    log_axis(b[0][0], b[0][1], r3, u1, w1);
    log_axis(b[1][0], b[1][1], r3, u2, w2);
    std::vector<double> y1(u1.size()), y2(u2.size());
    for (size_t i = 0; i < u1.size(); ++i) y1[i] = std::exp(u1[i]);
    for (size_t j = 0; j < u2.size(); ++j) y2[j] = std::exp(u2[j]);

    ContourSpec mb;
    mb.real_parts = {0.5};
    mb.height = 16.0;
    mb.nodes_per_unit = 12;
    const std::vector<cplx> wp =
        whittaker_gl3_grid(p.t[0], p.t[1], y1, y2, mb, 1e-10);
    const bool same_point = p.t[0] == q.t[0] && p.t[1] == q.t[1];
    const std::vector<cplx> wq =
        same_point ? wp : whittaker_gl3_grid(q.t[0], q.t[1], y1, y2, mb, 1e-10);

    // Density per du1 du2: W_p W_q y1^{2s} y2^{s} * haar = W_p W_q times
    // y1^{2s-2} y2^{s-2} after the dy -> du jacobian.
    std::vector<cplx> e1(u1.size()), e2(u2.size());
    for (size_t i = 0; i < u1.size(); ++i)
      e1[i] = w1[i] * std::exp((2.0 * s - 2.0) * u1[i]);
    for (size_t j = 0; j < u2.size(); ++j)
      e2[j] = w2[j] * std::exp((s - 2.0) * u2[j]);

    const size_t n2 = y2.size();
    cplx I(0.0, 0.0);
    std::vector<double> row_abs(u1.size(), 0.0), col_abs(u2.size(), 0.0);
    for (size_t i = 0; i < u1.size(); ++i) {
      cplx row(0.0, 0.0);
      for (size_t j = 0; j < n2; ++j) {
        const cplx v = wp[i * n2 + j] * wq[i * n2 + j] * e2[j];
        row += v;
        col_abs[j] += std::abs(v * e1[i]);
      }
      I += row * e1[i];
      row_abs[i] = 0.0;
      for (size_t j = 0; j < n2; ++j)
        row_abs[i] += std::abs(wp[i * n2 + j] * wq[i * n2 + j] * e2[j] * e1[i]);
    }

    // Edge-band tail estimate per axis and side: absolute mass of the
    // outermost band of panels vs the next band in, continued geometrically.
    const double band_frac = 2.0 / r3.panels;  // two panels per band
    auto band_tail = [&](const std::vector<double>& mass, bool low_side) {
      const size_t nb = static_cast<size_t>(band_frac * mass.size());
      double m0 = 0.0, m1 = 0.0;
      for (size_t k = 0; k < nb; ++k) {
        const size_t i0 = low_side ? k : mass.size() - 1 - k;
        const size_t i1 = low_side ? nb + k : mass.size() - 1 - nb - k;
        m0 += mass[i0];
        m1 += mass[i1];
      }
      if (m0 == 0.0) return 0.0;
      if (m0 >= m1) return std::numeric_limits<double>::infinity();
      const double ratio = m0 / m1;
      return m0 * ratio / (1.0 - ratio);
    };
    const double t_lo1 = band_tail(row_abs, true);
    const double t_hi1 = band_tail(row_abs, false);
    const double t_lo2 = band_tail(col_abs, true);
    const double t_hi2 = band_tail(col_abs, false);
    const double tail = t_lo1 + t_hi1 + t_lo2 + t_hi2;
    const double budget = tail_rel * std::abs(I);
    if (tail <= budget) return I;
    if (!adaptive || round == 1)
      throw TailBudgetExceeded("stade_lhs: y-box tail estimate " + fmt(tail) +
                               " exceeds budget " + fmt(budget));
    // Widen the offending sides; the low sides decay only polynomially in
    // log y, so they get six more log units, the high side a fraction.
    const double cut = 0.125 * budget;
    if (t_lo1 > cut) b[0][0] *= std::exp(-6.0);
    if (t_lo2 > cut) b[1][0] *= std::exp(-6.0);
    if (t_hi1 > cut) b[0][1] *= std::exp(1.0);
    if (t_hi2 > cut) b[1][1] *= std::exp(1.0);
    const double stretch = std::max(
        std::log(b[0][1] / b[0][0]) / std::log(box[0][1] / box[0][0]),
        std::log(b[1][1] / b[1][0]) / std::log(box[1][1] / box[1][0]));
    r3.panels = static_cast<int>(std::ceil(rule.panels * stretch));
  }
}

cplx residue_r11(const SpectralTestFunction& H, double t1, double t2,
                 double eps) {
  if (!(eps >= 0.0)) throw DomainError("residue_r11: eps must be >= 0");
  const SpectralPoint sp = make_spectral_point(3, {t1, t2});
  if (degenerate_alpha(sp))
    throw DegenerateParameters("residue_r11: coincident spectral parameters");
  // With alpha_1 = i(2 t1 + t2) and alpha_2 = i(-t1 + t2):
  //   (2 alpha_1 - alpha_2)/2 = i(5 t1 + t2)/2,  (alpha_1 + 2 alpha_2)/2
  //   = 3 i t2 / 2, and the H arguments reduce to (t1, t2 + i eps).
  const cplx A(0.0, 0.5 * (5.0 * t1 + t2));
  const cplx B(0.0, 1.5 * t2);
  const cplx Ad = A - 1.5 * eps;
  const cplx Bd = B - 1.5 * eps;
  for (const cplx& z : {A, B, Ad, Bd})
    if (near_gamma_pole(z))
      throw PoleError("residue_r11: Gamma argument at a pole");
  const cplx ratio =
      std::exp(log_gamma(A) + log_gamma(B) - log_gamma(Ad) - log_gamma(Bd));
  return H(cplx(t1, 0.0), cplx(t2, eps)) * ratio /
         (6.0 * std::pow(pi, 3.0 * eps));
}

cplx mellin_forward(const GridFunction& f, cplx s) {
  if (f.n != 2)
    throw DomainError("mellin_forward: needs a one-dimensional lattice");
  return integrate_box(f, [&](const std::vector<double>& y) {
    return std::exp((s - 1.0) * std::log(y[0]));
  });
}

ContourSpec mellin_inverse_contour() {
  ContourSpec spec;
  spec.real_parts = {2.0};
  // Transforms of Gevrey-class bumps decay only like exp(-c sqrt(tau)) with
  // c near 1.3 for the test profile, so clearing the 1e-9 truncation budget
  // takes a tall contour; the trapezoid step 1/12 is far finer than these
  // integrands need, so the height, not the node density, sets the cost.
  spec.height = 460.0;
  spec.nodes_per_unit = 12;
  return spec;
}

cplx mellin_inverse(const std::function<cplx(cplx)>& ft, double x,
                    const ContourSpec& spec) {
  if (!(x > 0.0)) throw DomainError("mellin_inverse: requires x > 0");
  const double lx = std::log(x);
  return integrate_line(
      [&](cplx s) { return ft(s) * std::exp(-s * lx); }, spec, 0, 1e-9);
}

ContourSpec mellin_kernel_contour() {
  ContourSpec spec;
  spec.real_parts = {2.0};
  spec.height = 12.0;
  spec.nodes_per_unit = 16;
  return spec;
}

double mellin_kernel(double x, const ContourSpec& spec) {
  if (!(x > 0.0)) throw DomainError("mellin_kernel: requires x > 0");
  if (x == 1.0)
    throw BoundaryError("mellin_kernel: x = 1 is on the jump discontinuity");
  spec.validate();
  const double c = spec.real_parts.at(0);
  if (!(c > 0.0))
    throw DomainError("mellin_kernel: the line must satisfy Re s > 0");
  const double lx = std::log(x);
  auto phi = [&](double tau) -> cplx {
    const cplx sv(c, tau);
    return std::exp(sv * lx) / (sv * (sv + 1.0));
  };
  // Conjugate symmetry folds the line onto tau >= 0.  The integrand decays
  // only like 1/tau^2, so [0, T0] is integrated directly and the remainder
  // is summed over half-period panels with Levin acceleration.
  const double half_period = pi / std::abs(lx);
  const double T0 = spec.height;
  const double panel_w = std::min(2.0, half_period);
  const int head_panels = std::max(4, static_cast<int>(std::ceil(T0 / panel_w)));
  const auto& [gx, gw] = gauss_legendre(16);
  cplx head(0.0, 0.0);
  const double hw = T0 / head_panels;
  for (int pnl = 0; pnl < head_panels; ++pnl) {
    const double mid = (pnl + 0.5) * hw;
    for (int k = 0; k < 16; ++k)
      head += 0.5 * hw * gw[k] * phi(mid + 0.5 * hw * gx[k]);
  }
  const AccelResult tail =
      integrate_oscillatory_tail(phi, T0, half_period, 24, 10);
  if (tail.error_estimate > 1e-9 * pi)
    throw ConvergenceError(
        "mellin_kernel: oscillatory tail failed to settle (estimate " +
        err_num(tail.error_estimate) + ")");
  return (head + tail.value).real() / pi;
}

cplx mellin_pairing_y(const GridFunction& f1, const GridFunction& f2) {
  if (f1.n != 2 || f2.n != 2)
    throw DomainError("mellin_pairing_y: needs one-dimensional lattices");
  f1.validate();
  f2.validate();
  if (f1.shape != f2.shape ||
      std::abs(f1.box[0][0] - f2.box[0][0]) > 1e-12 * f1.box[0][0] ||
      std::abs(f1.box[0][1] - f2.box[0][1]) > 1e-12 * f1.box[0][1])
    throw DomainError("mellin_pairing_y: lattices differ");
  const double h = f1.log_step(0);
  double acc = 0.0;
  for (int i = 0; i < f1.shape[0]; ++i) {
    const double trap = (i == 0 || i == f1.shape[0] - 1) ? 0.5 : 1.0;
    acc += trap * f1.samples[static_cast<size_t>(i)] *
           f2.samples[static_cast<size_t>(i)];
  }
  return cplx(acc * h, 0.0);
}

cplx mellin_pairing_t(const GridFunction& f1, const GridFunction& f2,
                      double height, int nodes_per_unit) {
  if (!(height > 0.0) || nodes_per_unit < 2)
    throw DomainError("mellin_pairing_t: bad contour settings");
  // Real samples make ft(-i tau) = conj(ft(i tau)), so the line folds onto
  // tau >= 0 with the real part doubled.
  const double h = 1.0 / nodes_per_unit;
  const int half = static_cast<int>(std::ceil(height * nodes_per_unit));
  double acc = 0.0;
  for (int k = 0; k <= half; ++k) {
    const double tau = k * h;
    const cplx a = mellin_forward(f1, cplx(0.0, tau));
    const cplx b = mellin_forward(f2, cplx(0.0, tau));
    const double term = (a * std::conj(b)).real();
    double weight = k == 0 ? 1.0 : 2.0;
    if (k == half) weight *= 0.5;
    acc += weight * term;
  }
  return cplx(acc * h / (2.0 * pi), 0.0);
}

namespace {

// Smooth compactly supported test profile exp(2 - 2/(1 - v^2)) in log
// coordinates, with support [lo, hi].
double log_bump(double y, double lo, double hi) {
  const double mid = 0.5 * (std::log(lo) + std::log(hi));
  const double halfw = 0.5 * (std::log(hi) - std::log(lo));
  const double v = (std::log(y) - mid) / halfw;
  if (std::abs(v) >= 1.0) return 0.0;
  return std::exp(2.0 - 2.0 / (1.0 - v * v));
}

GridFunction sampled_log_bump(double support_lo, double support_hi,
                              const Box& box, int m, const std::string& label) {
  return make_grid_function(
      2, box, {m},
      [&](const std::vector<double>& y) {
        return log_bump(y[0], support_lo, support_hi);
      },
      label);
}

}  // namespace

std::vector<IdentityReport> verify_all(const VerifyOptions& opt) {
  std::vector<IdentityReport> out;
  std::mt19937 rng(opt.seed);
  auto draw = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };

  // Rank-2 pairing at the closed point: both sides equal pi/2.
  {
    const SpectralPoint p = make_spectral_point(2, {0.0});
    out.push_back(make_identity_report(
        IdentityKind::StadeN2, stade_lhs(2, p, p, 1.0, opt.stade_rule_n2),
        stade_rhs(2, p, p, 1.0), 1e-6,
        {{"t", "0"}, {"u", "0"}, {"s", "1"}, {"closed_value", "pi/2"}}));
  }
  // Rank-2 pairing at a random tempered pair, s = 3/2.
  {
    const double t = draw(0.2, 2.0);
    const double u = draw(0.2, 2.0);
    const SpectralPoint p = make_spectral_point(2, {t});
    const SpectralPoint q = make_spectral_point(2, {u});
    out.push_back(make_identity_report(
        IdentityKind::StadeN2, stade_lhs(2, p, q, 1.5, opt.stade_rule_n2),
        stade_rhs(2, p, q, 1.5), 1e-6,
        {{"t", fmt(t)}, {"u", fmt(u)}, {"s", "3/2"}}));
  }
  // Rank-2 pairing at one complex s on the boundary line Re s = 1.
  {
    const double t = draw(0.2, 2.0);
    const double u = draw(0.2, 2.0);
    const SpectralPoint p = make_spectral_point(2, {t});
    const SpectralPoint q = make_spectral_point(2, {u});
    const cplx s(1.0, 0.7);
    out.push_back(make_identity_report(
        IdentityKind::StadeN2, stade_lhs(2, p, q, s, opt.stade_rule_n2),
        stade_rhs(2, p, q, s), 1e-6,
        {{"t", fmt(t)}, {"u", fmt(u)}, {"s", fmt(s)}}));
  }
  // Rank-3 pairing at the origin, s = 1.
  if (opt.include_rank3) {
    const SpectralPoint p = make_spectral_point(3, {0.0, 0.0});
    out.push_back(make_identity_report(
        IdentityKind::StadeN3, stade_lhs(3, p, p, 1.0, opt.stade_rule_n3),
        stade_rhs(3, p, p, 1.0), 1e-3,
        {{"t", "(0,0)"}, {"u", "(0,0)"}, {"s", "1"}}));
  }
  // Residue limit at a small regularization parameter.
  {
    const double t1 = draw(1.0, 1.4);
    const double t2 = draw(1.0, 1.4);
    const double eps = std::pow(2.0, -10);
    const SpectralTestFunction H = [](cplx z1, cplx z2) {
      return std::exp(-0.5 * (z1 * z1 + z1 * z2 + z2 * z2));
    };
    out.push_back(make_identity_report(
        IdentityKind::ResidueR11, residue_r11(H, t1, t2, eps),
        H(cplx(t1, 0.0), cplx(t2, 0.0)) / 6.0, 1e-3,
        {{"t1", fmt(t1)}, {"t2", fmt(t2)}, {"eps", "2^-10"},
         {"H", "exp(-(z1^2+z1*z2+z2^2)/2)"}}));
  }
  // Kernel values on both sides of the jump.
  {
    const double e = std::exp(1.0);
    const struct { double x, closed; } cases[] = {
        {2.0, 0.5}, {0.5, 0.0}, {e, 1.0 - 1.0 / e}};
    for (const auto& cs : cases)
      out.push_back(make_identity_report(
          IdentityKind::MellinKernel, mellin_kernel(cs.x), cs.closed, 1e-8,
          {{"x", fmt(cs.x)}}));
  }
  // Forward-inverse round trip of a smooth bump on [1/2, 2]: worst of 20
  // interior points.
  {
    const Box box = {{0.5, 2.0}};
    const GridFunction f = sampled_log_bump(0.5, 2.0, box, 257, "bump");
    auto ft = [&](cplx s) { return mellin_forward(f, s); };
    double worst = -1.0;
    cplx worst_lhs(0.0, 0.0), worst_rhs(0.0, 0.0);
    double worst_x = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double lx =
          std::log(0.5) + (k + 1) * (std::log(2.0) - std::log(0.5)) / 21.0;
      const double x = std::exp(lx);
      const cplx lhs = mellin_inverse(ft, x);
      const cplx rhs(log_bump(x, 0.5, 2.0), 0.0);
      if (std::abs(lhs - rhs) > worst) {
        worst = std::abs(lhs - rhs);
        worst_lhs = lhs;
        worst_rhs = rhs;
        worst_x = x;
      }
    }
    out.push_back(make_identity_report(
        IdentityKind::MellinRoundtrip, worst_lhs, worst_rhs, 1e-8,
        {{"support", "[1/2, 2]"}, {"points", "20"}, {"worst_x", fmt(worst_x)}}));
  }
  // Multiplicative Plancherel: distinct bumps paired in y and on the line
  // Re s = 0.
  {
    const Box box = {{0.5, 2.0}};
    const GridFunction f1 = sampled_log_bump(0.5, 2.0, box, 257, "f1");
    const GridFunction f2 = sampled_log_bump(0.6, 1.8, box, 257, "f2");
    out.push_back(make_identity_report(
        IdentityKind::PlancherelEquality, mellin_pairing_y(f1, f2),
        mellin_pairing_t(f1, f2), 1e-6,
        {{"f1", "bump on [1/2, 2]"}, {"f2", "bump on [0.6, 1.8]"}}));
  }
  return out;
}

}  // namespace lwt
