#pragma once

#include <vector>

#include "lwt/quadrature.hpp"
#include "lwt/spectral.hpp"

namespace lwt {

// Power function I_nu(y) = prod_i y_i^{sum_j b_ij nu_j}.
cplx i_nu(const SpectralPoint& p, const std::vector<double>& y);

// Completed GL(2) Whittaker function, closed form 2 sqrt(y) K_{it}(2 pi y).
double whittaker_gl2(double t, double y);

// Completed GL(3) Whittaker function via a truncated double Mellin-Barnes
// integral on Re s1 = Re s2 = 1/2.  The full complex value satisfies
// conj(W(y1, y2)) = W(y2, y1) for real t, so the imaginary part vanishes on
// the diagonal y1 = y2 but not identically.
cplx whittaker_gl3_complex(double t1, double t2, double y1, double y2,
                           const ContourSpec& contour = {},
                           double accuracy = 1e-8);

// Real part of the above; the scalar value reported by the CLI.
double whittaker_gl3(double t1, double t2, double y1, double y2,
                     const ContourSpec& contour = {}, double accuracy = 1e-8);

// Grid evaluation sharing one kernel pass over the contour lattice.
// Returns row-major values W(y1[i], y2[j]) at index i * y2.size() + j.
std::vector<cplx> whittaker_gl3_grid(double t1, double t2,
                                     const std::vector<double>& y1,
                                     const std::vector<double>& y2,
                                     const ContourSpec& contour = {},
                                     double accuracy = 1e-8);

// Direct numerical evaluation of the completed Jacquet integral: the
// Gamma/pi prefactor times the integral of the power function over the
// unipotent group against the standard character e^{2 pi i (u_1 + ... )}.
// Independent of the closed-form and Mellin-Barnes paths; n in {2, 3}.
cplx jacquet_oracle(int n, const std::vector<double>& t,
                    const std::vector<double>& y);

namespace detail {
// Variant of the n = 3 oracle with the innermost unipotent coordinate
// integrated in closed form (Fourier transform of (u^2 + a^2)^{-b} in terms
// of a Bessel K of imaginary order), leaving a 2-dimensional quadrature.
// Used in tests to cross-check the honest 3-dimensional oracle.
cplx jacquet_oracle_gl3_bessel_reduced(const std::vector<double>& t,
                                       const std::vector<double>& y);
}  // namespace detail

enum class WhittakerMethod { ClosedFormGL2, MellinBarnesGL3, JacquetOracle };

// Immutable evaluator; calls are pure and thread safe.
class WhittakerEvaluator {
 public:
  WhittakerEvaluator(SpectralPoint point, WhittakerMethod method,
                     ContourSpec contour = ContourSpec{},
                     double accuracy = 1e-8);

  cplx operator()(const std::vector<double>& y) const;

  const SpectralPoint& point() const { return point_; }
  WhittakerMethod method() const { return method_; }
  const ContourSpec& contour() const { return contour_; }
  double accuracy() const { return accuracy_; }

 private:
  SpectralPoint point_;
  WhittakerMethod method_;
  ContourSpec contour_;
  double accuracy_;
};

}  // namespace lwt
