#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lwt/quadrature.hpp"
#include "lwt/spectral.hpp"

namespace lwt {

// Identities checked by this module: the Stade Gamma-product evaluation of
// the double-Whittaker integral (ranks 2 and 3), the residue limit of the
// rank-3 spectral expansion, and the Mellin inversion appendix (kernel
// formula, forward/inverse round trip, Plancherel on the critical line).
enum class IdentityKind {
  StadeN2,
  StadeN3,
  ResidueR11,
  MellinKernel,
  MellinRoundtrip,
  PlancherelEquality,
};

std::string identity_kind_name(IdentityKind k);

// Outcome of one identity check.  rel_err compares against the larger side,
// floored so that 0 = 0 reports zero error.  params echoes the inputs that
// produced the numbers (formatted, for the report table and JSON output).
struct IdentityReport {
  IdentityKind identity = IdentityKind::StadeN2;
  cplx lhs{};
  cplx rhs{};
  double abs_err = 0.0;
  double rel_err = 0.0;
  double threshold = 0.0;  // pass when rel_err <= threshold
  bool pass = false;
  std::map<std::string, std::string> params;
};

IdentityReport make_identity_report(IdentityKind k, cplx lhs, cplx rhs,
                                    double threshold,
                                    std::map<std::string, std::string> params);

std::string identity_reports_to_json(const std::vector<IdentityReport>& reports);

// Default integration box for the double-Whittaker integral, sized from the
// measured small-y behavior of the kernels (power times powers of log) so
// the discarded tail stays below 1e-2 of the identity's error target:
// [e^-28, e^2] for rank 2, [e^-20, e^2]^2 for rank 3.
Box default_stade_box(int n);
QuadratureRule default_stade_rule(int n);

// Left side of the pairing identity: int W_p(y) W_q(y) prod_j y_j^{(n-j)s}
// d*y over the positive chamber, by Gauss-Legendre panels in log coordinates
// (rank 3 reuses one shared contour-kernel pass per spectral point across
// the whole lattice).  Requires Re(s) >= 1 and n in {2, 3}.  The tail
// outside y_box is estimated from the integrand's edge decay; if it exceeds
// tail_rel * |integral| the result is untrustworthy and TailBudgetExceeded
// is thrown.  tail_rel = 0 picks 1e-8 for rank 2 and 1e-5 for rank 3.
cplx stade_lhs(int n, const SpectralPoint& p, const SecondSpectralPoint& q,
               cplx s, const QuadratureRule& rule, const Box& y_box = {},
               double tail_rel = 0.0);

// Right side in closed form:
//   prod_{j,k} Gamma((s + alpha_j + beta_k)/2) / (2 pi^{s n(n-1)/2}
//   Gamma(n s / 2)).
// The Gamma factors are summed in log space in a sorted order, making the
// value bitwise invariant under permutations of alpha or beta and under
// exchanging p and q.  Throws PoleError if a numerator Gamma argument lands
// on a pole; a denominator pole gives 0.
cplx stade_rhs(int n, const SpectralPoint& p, const SecondSpectralPoint& q,
               cplx s);

// Weyl-symmetric test function of two spectral coordinates; the second
// argument acquires an imaginary shift i*eps inside residue_r11.
using SpectralTestFunction = std::function<cplx(cplx, cplx)>;

// The surviving residue term of the rank-3 spectral contour shift, as an
// explicit function of the regularization parameter eps >= 0:
//   (1 / (6 pi^{3 eps})) H(t1, t2 + i eps)
//     * Gamma(A) Gamma(B) / (Gamma(A - 3 eps/2) Gamma(B - 3 eps/2))
// with A = i(5 t1 + t2)/2 and B = 3 i t2 / 2.  At eps = 0 the Gamma ratios
// cancel identically and the value is exactly H(t1, t2)/6; the approach to
// that limit is first order in eps.  Throws DegenerateParameters when the
// alpha derived from (t1, t2) collide and PoleError when a Gamma argument
// degenerates (e.g. t2 = 0 or 5 t1 + t2 = 0).
cplx residue_r11(const SpectralTestFunction& H, double t1, double t2,
                 double eps);

// One-dimensional Mellin transform int_0^inf f(y) y^s dy/y of a sampled
// function (trapezoid rule on its log-uniform lattice; spectrally accurate
// for smooth f vanishing at the box edges).  f must be a rank-2 lattice,
// i.e. one-dimensional.
cplx mellin_forward(const GridFunction& f, cplx s);

// Contour for the inverse transform: the vertical line Re s = 2, tall
// enough for smooth compactly supported test functions at 1e-9 tails.
ContourSpec mellin_inverse_contour();

// Inverse transform h(x) = (1/(2 pi i)) int_{(line)} ft(s) x^{-s} ds by the
// trapezoid rule on the truncated line, with the usual tail guard.
cplx mellin_inverse(const std::function<cplx(cplx)>& ft, double x,
                    const ContourSpec& spec = mellin_inverse_contour());

// Contour for the kernel integral: the line Re s = 2 with a short directly
// integrated head (the tail is handled separately below).
ContourSpec mellin_kernel_contour();

// The discontinuous-integral kernel (1/(2 pi i)) int_{(2)} x^s ds/(s(s+1)),
// equal to 1 - 1/x for x > 1 and 0 for x < 1.  The integrand decays only
// like 1/|s|^2, so the line is split into a direct head and an oscillatory
// tail summed in half-period panels with Levin acceleration.  Throws
// BoundaryError at the jump point x = 1.
double mellin_kernel(double x, const ContourSpec& spec = mellin_kernel_contour());

// Multiplicative pairing int f1(y) conj(f2(y)) dy/y on the shared lattice of
// f1 and f2 (DomainError if the lattices differ).
cplx mellin_pairing_y(const GridFunction& f1, const GridFunction& f2);

// The same pairing computed on the critical line:
// (1/(2 pi)) int_R ft1(i tau) conj(ft2(i tau)) d tau, truncated at |tau| <=
// height with the trapezoid rule; unitarity of the Mellin transform makes
// this equal mellin_pairing_y.
cplx mellin_pairing_t(const GridFunction& f1, const GridFunction& f2,
                      double height = 48.0, int nodes_per_unit = 8);

// Deterministic settings for the aggregated identity suite.
struct VerifyOptions {
  unsigned seed = 20260823;     // drives the random tempered spectral points
  bool include_rank3 = true;    // the rank-3 pairing costs a few seconds
  QuadratureRule stade_rule_n2 = default_stade_rule(2);
  QuadratureRule stade_rule_n3 = default_stade_rule(3);
};

// Runs one representative check per identity family (several for the kernel
// values) and returns the reports in a fixed order.
std::vector<IdentityReport> verify_all(const VerifyOptions& opt = {});

}  // namespace lwt
