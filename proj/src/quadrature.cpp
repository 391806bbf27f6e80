#include "lwt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace lwt {

namespace {
constexpr double pi = std::numbers::pi;
}

void QuadratureRule::validate() const {
  if (panels < 1) throw DomainError("QuadratureRule: panels >= 1 required");
  if (degree < 4 || degree > 64)
    throw DomainError("QuadratureRule: degree must lie in [4, 64]");
}

void ContourSpec::validate() const {
  if (real_parts.empty()) throw DomainError("ContourSpec: needs a real part");
  if (!(height > 0.0)) throw DomainError("ContourSpec: height must be positive");
  if (nodes_per_unit < 4) throw DomainError("ContourSpec: nodes_per_unit >= 4");
  if (height * nodes_per_unit < 64.0)
    throw DomainError("ContourSpec: height * nodes_per_unit must be >= 64");
}

double GridFunction::log_step(int axis) const {
  return (std::log(box[axis][1]) - std::log(box[axis][0])) / (shape[axis] - 1);
}

double GridFunction::node(int axis, int i) const {
  return std::exp(std::log(box[axis][0]) + i * log_step(axis));
}

std::vector<double> GridFunction::axis_nodes(int axis) const {
  std::vector<double> v(shape[axis]);
  for (int i = 0; i < shape[axis]; ++i) v[i] = node(axis, i);
  return v;
}

size_t GridFunction::index(const std::vector<int>& idx) const {
  size_t flat = 0;
  for (int a = 0; a < dim(); ++a) flat = flat * shape[a] + idx[a];
  return flat;
}

void GridFunction::validate() const {
  if (n < 2) throw DomainError("GridFunction: rank n >= 2 required");
  if (static_cast<int>(box.size()) != dim() ||
      static_cast<int>(shape.size()) != dim())
    throw DomainError("GridFunction: box/shape must have n-1 axes");
  size_t total = 1;
  for (int a = 0; a < dim(); ++a) {
    if (!(box[a][0] > 0.0 && box[a][0] < box[a][1]))
      throw DomainError("GridFunction: box bounds need 0 < lo < hi");
    if (shape[a] < 8) throw DomainError("GridFunction: >= 8 samples per axis");
    total *= static_cast<size_t>(shape[a]);
  }
  if (samples.size() != total)
    throw DomainError("GridFunction: sample count does not match shape");
}

GridFunction make_grid_function(
    int n, const Box& box, const std::vector<int>& shape,
    const std::function<double(const std::vector<double>&)>& f,
    const std::string& label) {
  GridFunction g;
  g.n = n;
  g.box = box;
  g.shape = shape;
  g.label = label;
  size_t total = 1;
  for (int c : shape) total *= static_cast<size_t>(c);
  g.samples.resize(total);
  g.validate();
  std::vector<int> idx(g.dim(), 0);
  std::vector<double> y(g.dim());
  for (size_t flat = 0; flat < total; ++flat) {
    for (int a = 0; a < g.dim(); ++a) y[a] = g.node(a, idx[a]);
    g.samples[flat] = f(y);
    for (int a = g.dim() - 1; a >= 0; --a) {
      if (++idx[a] < shape[a]) break;
      idx[a] = 0;
    }
  }
  return g;
}

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int degree) {
  if (degree < 1 || degree > 128) throw DomainError("gauss_legendre: bad degree");
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(degree);
  if (it != cache.end()) return it->second;

  std::vector<double> x(degree), w(degree);
  const int m = (degree + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(pi * (i + 0.75) / (degree + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < degree; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = degree * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[degree - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[degree - 1 - i] = w[i];
  }
  return cache.emplace(degree, std::make_pair(std::move(x), std::move(w))).first->second;
}

cplx integrate_box(const std::function<cplx(const std::vector<double>&)>& f,
                   const QuadratureRule& rule, const Box& box) {
  rule.validate();
  const int d = static_cast<int>(box.size());
  if (d < 1) throw DomainError("integrate_box: empty box");
  const auto& [gx, gw] = gauss_legendre(rule.degree);

  // per-axis nodes (y = e^u) and weights (du * jacobian e^u)
  std::vector<std::vector<double>> nodes(d), weights(d);
  for (int a = 0; a < d; ++a) {
    if (!(box[a][0] > 0.0 && box[a][0] < box[a][1]))
      throw DomainError("integrate_box: box bounds need 0 < lo < hi");
    double ulo = std::log(box[a][0]), uhi = std::log(box[a][1]);
    double pw = (uhi - ulo) / rule.panels;
    for (int p = 0; p < rule.panels; ++p) {
      double mid = ulo + (p + 0.5) * pw;
      for (int k = 0; k < rule.degree; ++k) {
        double u = mid + 0.5 * pw * gx[k];
        nodes[a].push_back(std::exp(u));
        weights[a].push_back(0.5 * pw * gw[k] * std::exp(u));
      }
    }
  }

  const size_t per_axis = nodes[0].size();
  size_t total = 1;
  for (int a = 0; a < d; ++a) total *= per_axis;
  std::vector<int> idx(d, 0);
  std::vector<double> y(d);
  cplx acc(0.0, 0.0);
  for (size_t flat = 0; flat < total; ++flat) {
    double wt = 1.0;
    for (int a = 0; a < d; ++a) {
      y[a] = nodes[a][idx[a]];
      wt *= weights[a][idx[a]];
    }
    acc += wt * f(y);
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < static_cast<int>(per_axis)) break;
      idx[a] = 0;
    }
  }
  return acc;
}

cplx integrate_box(const GridFunction& f,
                   const std::function<cplx(const std::vector<double>&)>& g) {
  f.validate();
  const int d = f.dim();
  std::vector<int> idx(d, 0);
  std::vector<double> y(d);
  cplx acc(0.0, 0.0);
  for (size_t flat = 0; flat < f.samples.size(); ++flat) {
    double wt = 1.0;
    for (int a = 0; a < d; ++a) {
      y[a] = f.node(a, idx[a]);
      double trap = (idx[a] == 0 || idx[a] == f.shape[a] - 1) ? 0.5 : 1.0;
      wt *= f.log_step(a) * trap * y[a];
    }
    if (f.samples[flat] != 0.0) acc += wt * f.samples[flat] * g(y);
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < f.shape[a]) break;
      idx[a] = 0;
    }
  }
  return acc;
}

cplx integrate_line(const std::function<cplx(cplx)>& g, const ContourSpec& spec,
                    int line, double tail_budget) {
  spec.validate();
  if (line < 0 || line >= static_cast<int>(spec.real_parts.size()))
    throw IndexError("integrate_line: no such line");
  const double c = spec.real_parts[line];
  const double h = 1.0 / spec.nodes_per_unit;
  const int half = static_cast<int>(std::ceil(spec.height * spec.nodes_per_unit));
  cplx acc(0.0, 0.0);
  double end_mag[2] = {0.0, 0.0};   // |g| at the two outermost nodes, top
  double end_mag_b[2] = {0.0, 0.0}; // and bottom
  for (int k = -half; k <= half; ++k) {
    double tau = k * h;
    cplx v = g(cplx(c, tau));
    double trap = (k == -half || k == half) ? 0.5 : 1.0;
    acc += trap * v;
    if (k == half) end_mag[1] = std::abs(v);
    if (k == half - 1) end_mag[0] = std::abs(v);
    if (k == -half) end_mag_b[1] = std::abs(v);
    if (k == -half + 1) end_mag_b[0] = std::abs(v);
  }
  // Tail estimate from the measured decay at each end: if |g| falls from m0 to
  // m1 over one step, extrapolate int_T^inf |g| ~ m1 / lambda.
  auto tail_of = [&](double m0, double m1) {
    if (m1 <= 0.0) return 0.0;
    if (m0 > m1) {
      double lambda = std::log(m0 / m1) / h;
      return m1 / lambda;
    }
    return m1 * spec.height;  // no decay detected: crude bound
  };
  double tail = (tail_of(end_mag[0], end_mag[1]) +
                 tail_of(end_mag_b[0], end_mag_b[1])) / (2.0 * pi);
  if (tail > tail_budget)
    throw ContourTruncationError(
        "integrate_line: estimated tail " + err_num(tail) +
        " exceeds budget " + err_num(tail_budget));
  return acc * (h / (2.0 * pi));
}

RefineResult refine_until(const std::function<cplx(int)>& eval_at_level,
                          double tol, int max_levels) {
  cplx prev = eval_at_level(0);
  for (int lvl = 1; lvl <= max_levels; ++lvl) {
    cplx cur = eval_at_level(lvl);
    double diff = std::abs(cur - prev);
    if (diff < tol) return {cur, diff, lvl};
    prev = cur;
  }
  throw BudgetExceeded("refine_until: no convergence within level budget");
}

AccelResult levin_sum(const std::vector<cplx>& terms) {
  const int m = static_cast<int>(terms.size());
  if (m < 3) throw DomainError("levin_sum: need at least 3 terms");
  std::vector<cplx> partial(m);
  cplx s(0.0, 0.0);
  for (int k = 0; k < m; ++k) {
    s += terms[k];
    partial[k] = s;
  }
  // Levin u-transform with remainder estimates w_k = (k+1) a_k, evaluated by
  // the explicit binomial formula at orders M and M-1 for an error estimate.
  auto transform = [&](int order) -> cplx {
    cplx num(0.0, 0.0), den(0.0, 0.0);
    double binom = 1.0;
    for (int j = 0; j <= order; ++j) {
      if (j > 0) binom *= static_cast<double>(order - j + 1) / j;
      double sign = (j % 2 == 0) ? 1.0 : -1.0;
      double scale = std::pow((j + 1.0) / (order + 1.0), order - 1);
      cplx w = (j + 1.0) * terms[j];
      if (std::abs(w) < 1e-300) w = cplx(1e-300, 0.0);
      cplx c = sign * binom * scale / w;
      num += c * partial[j];
      den += c;
    }
    return num / den;
  };
  cplx best = transform(m - 1);
  cplx prevv = transform(m - 2);
  double err = std::abs(best - prevv);
  // guard against degenerate cancellation in the transform
  if (!std::isfinite(best.real()) || !std::isfinite(best.imag()))
    return {partial.back(), std::abs(terms.back())};
  return {best, err};
}

AccelResult integrate_oscillatory_tail(const std::function<cplx(double)>& f,
                                       double start, double step,
                                       int npanels, int degree) {
  if (!(step > 0.0)) throw DomainError("integrate_oscillatory_tail: step > 0");
  const auto& [gx, gw] = gauss_legendre(degree);
  std::vector<cplx> terms(npanels);
  for (int p = 0; p < npanels; ++p) {
    double a = start + p * step;
    cplx acc(0.0, 0.0);
    for (int k = 0; k < degree; ++k)
      acc += 0.5 * step * gw[k] * f(a + 0.5 * step * (1.0 + gx[k]));
    terms[p] = acc;
  }
  return levin_sum(terms);
}

}  // namespace lwt
