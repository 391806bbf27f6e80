#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lwt/specfun.hpp"

namespace lwt {

// Per-coordinate integration box [lo, hi] in y-space.
using Box = std::vector<std::array<double, 2>>;

// Tensor Gauss-Legendre settings: panels per axis, points per panel.
struct QuadratureRule {
  int panels = 8;
  int degree = 16;
  void validate() const;  // panels >= 1, degree in [4, 64]
};

// Vertical-line discretization for Mellin-Barnes and inverse-Mellin work:
// real parts of the lines, truncation height T, and trapezoid nodes per unit.
struct ContourSpec {
  std::vector<double> real_parts{0.5};
  double height = 14.0;
  int nodes_per_unit = 10;
  void validate() const;  // T > 0, npu >= 4, T * npu >= 64
};

// Samples of a test function on a log-uniform lattice over a positive box.
struct GridFunction {
  int n = 2;                 // rank; the lattice lives in R_+^{n-1}
  Box box;                   // per-axis [lo, hi], 0 < lo < hi
  std::vector<int> shape;    // per-axis sample counts, >= 8
  std::vector<double> samples;  // row-major
  std::string label;

  int dim() const { return n - 1; }
  double log_step(int axis) const;
  double node(int axis, int i) const;  // y-coordinate of lattice line i
  std::vector<double> axis_nodes(int axis) const;
  size_t index(const std::vector<int>& idx) const;
  void validate() const;
};

// Builds a GridFunction by sampling f at the lattice nodes.
GridFunction make_grid_function(
    int n, const Box& box, const std::vector<int>& shape,
    const std::function<double(const std::vector<double>&)>& f,
    const std::string& label);

// Gauss-Legendre nodes and weights on [-1, 1]; cached, thread safe.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int degree);

// integral of f over the box against plain Lebesgue measure dy, computed in
// log coordinates with tensor Gauss-Legendre panels.
cplx integrate_box(const std::function<cplx(const std::vector<double>&)>& f,
                   const QuadratureRule& rule, const Box& box);

// Same integral for a sampled integrand: trapezoid rule on the log-uniform
// lattice of f, with the optional weight g evaluated at the nodes.  Spectrally
// accurate when f vanishes to high order at the box boundary.
cplx integrate_box(const GridFunction& f,
                   const std::function<cplx(const std::vector<double>&)>& g);

// (1/(2 pi i)) int g(s) ds over the vertical segment Re s = real_parts[line],
// |Im s| <= T, by the trapezoid rule.  The tail above the truncation height is
// estimated from the decay of |g| near the ends; if the estimate exceeds
// tail_budget, throws ContourTruncationError.
cplx integrate_line(const std::function<cplx(cplx)>& g, const ContourSpec& spec,
                    int line = 0, double tail_budget = 1e-6);

// Doubles resolution until two successive estimates agree to tol.
struct RefineResult {
  cplx value;
  double achieved_error;
  int levels;
};
RefineResult refine_until(const std::function<cplx(int)>& eval_at_level,
                          double tol, int max_levels = 12);

// Levin u-transform of sum a_0 + a_1 + ...; returns the accelerated value and
// a conservative error estimate.
struct AccelResult {
  cplx value;
  double error_estimate;
};
AccelResult levin_sum(const std::vector<cplx>& terms);

// integral of f over [start, inf) for an oscillatory integrand decaying
// (possibly only algebraically): panel integrals of width `step` summed with
// Levin acceleration.  Pass the half-period of the dominant oscillation as
// `step` so successive panels alternate in sign.
AccelResult integrate_oscillatory_tail(const std::function<cplx(double)>& f,
                                       double start, double step,
                                       int npanels = 16, int degree = 10);

}  // namespace lwt
