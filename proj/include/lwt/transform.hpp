#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lwt/quadrature.hpp"
#include "lwt/spectral.hpp"
#include "lwt/whittaker.hpp"

namespace lwt {

// Spectral-side function of t (R^{n-1} -> C).
using SpectralFunction = std::function<cplx(const std::vector<double>&)>;

// Forward transform f^#(t) = int f(y) W_t(y) d*y over the support lattice of
// f, by the trapezoid rule in log coordinates.  The evaluator supplies the
// method, contour and accuracy; its spectral point is replaced by t.  For the
// GL(3) Mellin-Barnes method the Whittaker values on the lattice are produced
// by the shared-kernel grid path, so the cost per t is one kernel build.
cplx forward(const GridFunction& f, const WhittakerEvaluator& W,
             const std::vector<double>& t);

// c(alpha) = prod_{k<l} Gamma((alpha_k - alpha_l)/2).  Throws
// DegenerateParameters when two alpha entries coincide (the product hits a
// Gamma pole).
cplx c_function(const SpectralPoint& p);

// Spectral density 1 / prod_{k<l} |Gamma((alpha_k - alpha_l)/2)|^2
// = 1 / |c(alpha)|^2.  Returns exactly 0 at degenerate alpha (the pole of c
// kills the density); for GL(2) this equals t sinh(pi t) / pi.
double plancherel_density(const SpectralPoint& p);

// Inverse transform
//   f(y) = (4 pi)^{-(n-1)} int_{t_box} F(t) W_{-t}(y)
//          plancherel_density(t) dt
// (the constant is 1/(4 pi) for GL(2), matching the classical
// Kontorovich-Lebedev pair, and 1/(16 pi^2) for GL(3))
// by tensor Gauss-Legendre panels over t_box.  W supplies method, contour and
// accuracy (its own spectral point is ignored); W_{-t}(y) = conj(W_t(y)) for
// real t.  The tail outside t_box is estimated from the decay of the
// integrand near each face, scaled like the result itself; if the estimate
// exceeds tail_budget (an absolute error bound on the returned value), throws
// TailBudgetExceeded.
cplx inverse(const SpectralFunction& F, const WhittakerEvaluator& W,
             const std::vector<double>& y, const Box& t_box,
             const QuadratureRule& rule, double tail_budget = 1e-4);

// <f1, f2> = int f1(y) conj(f2(y)) d*y on the shared lattice of f1 and f2.
// Throws DomainError if the lattices differ.
cplx inner_product_y(const GridFunction& f1, const GridFunction& f2);

// <F1, F2> = (4 pi)^{-(n-1)} int_{t_box} F1 conj(F2)
// plancherel_density dt, the same normalization as the inverse transform.
cplx inner_product_t(const SpectralFunction& F1, const SpectralFunction& F2,
                     int n, const Box& t_box, const QuadratureRule& rule);

// Uniform lattice of f^# samples over a t-box with clamped cubic (Catmull-Rom
// style) interpolation per axis; used to amortize forward evaluations across
// the inverse quadrature nodes.
class SpectralTable {
 public:
  SpectralTable(Box t_box, std::vector<int> shape);

  int dim() const { return static_cast<int>(shape_.size()); }
  const Box& box() const { return box_; }
  const std::vector<int>& shape() const { return shape_; }
  double step(int axis) const;
  double node(int axis, int i) const;
  size_t size() const { return values_.size(); }
  cplx& at(size_t flat) { return values_[flat]; }
  const cplx& at(size_t flat) const { return values_[flat]; }
  std::vector<double> node_coords(size_t flat) const;

  // Fills every lattice value as F(t); deterministic under parallel execution.
  void fill(const SpectralFunction& F);

  // Cubic interpolation; t must lie inside the box (DomainError otherwise).
  cplx operator()(const std::vector<double>& t) const;

 private:
  Box box_;
  std::vector<int> shape_;
  std::vector<cplx> values_;
};

// Test-bump profile on the scaled log coordinate x in [-1, 1] of the support
// box (zero outside), peak value 1 at the center:
//   SmoothCompact:      exp(a - a / (1 - x^2)), infinitely flat at the edges;
//   TruncatedGaussian:  exp(-x^2 / (2 sigma^2)) with sigma = param (relative
//                       to the half-width), cut off at the edges where it has
//                       already decayed to exp(-1/(2 sigma^2)).
// The Gaussian profile concentrates the spectral transform far better (its
// tail in t is Gaussian down to the cutoff floor), so it is the default for
// inversion and Plancherel work; the compact profile is the classical bump.
enum class BumpShape { SmoothCompact, TruncatedGaussian };

double bump_profile(BumpShape shape, double param, double x);

// Samples a product of one-axis profiles over the support box.  The support
// box must sit inside the grid box.
GridFunction make_bump(int n, const Box& grid_box,
                       const std::vector<int>& shape, const Box& support,
                       BumpShape shape_kind, double param,
                       const std::string& label);

// One forward/inverse round trip with timings and worst-case errors.
struct RoundtripSettings {
  int n = 2;
  Box y_box;                 // sampling lattice for the input bump
  std::vector<int> shape;
  Box support;               // bump support, strictly inside y_box
  BumpShape bump_shape = BumpShape::SmoothCompact;
  double bump_param = 2.0;
  Box t_box;                 // spectral window for table and inverse
  std::vector<int> t_shape;  // table nodes per axis
  QuadratureRule t_rule;     // panels/degree of the inverse integral
  // y-points at which to reconstruct; if empty, every lattice node with
  // f >= interior_threshold * max f is used.
  std::vector<std::vector<double>> eval_points;
  double interior_threshold = 0.3;
  ContourSpec contour;       // GL(3) evaluations
  double accuracy = 1e-8;
  double tail_budget = 1e-4;
};

RoundtripSettings default_roundtrip_settings(int n);

// Fills table with forward(f, W, t) over its lattice.  For a lattice
// symmetric about t = 0, f^#(-t) = conj(f^#(t)) for real f halves the work;
// for a square GL(3) lattice the six Weyl images of t cut it further (about
// an order of magnitude together).
void fill_forward_table(SpectralTable& table, const GridFunction& f,
                        const WhittakerEvaluator& W);

struct TransformReport {
  int n = 2;
  // (t, f^#(t)) pairs on the table lattice and (y, reconstructed, reference)
  // triples at the evaluation points.
  std::vector<std::pair<std::vector<double>, cplx>> forward_values;
  std::vector<std::vector<double>> eval_points;
  std::vector<cplx> reconstructed;
  std::vector<double> reference;
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;   // relative to the reference value pointwise
  std::map<std::string, double> timings_seconds;
};

TransformReport run_roundtrip(const RoundtripSettings& s);

std::string transform_report_to_json(const TransformReport& r);

}  // namespace lwt
