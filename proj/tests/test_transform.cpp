#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "lwt/errors.hpp"
#include "lwt/specfun.hpp"
#include "lwt/spectral.hpp"
#include "lwt/transform.hpp"
#include "lwt/whittaker.hpp"

using lwt::cplx;

namespace {
constexpr double pi = 3.14159265358979323846;

lwt::GridFunction gauss_bump_gl2(double lo, double hi, int ny, double sigma) {
  return lwt::make_bump(2, {{lo, hi}}, {ny}, {{lo, hi}},
                        lwt::BumpShape::TruncatedGaussian, sigma, "bump");
}

lwt::WhittakerEvaluator gl2_evaluator() {
  return lwt::WhittakerEvaluator(lwt::make_spectral_point(2, {0.5}),
                                 lwt::WhittakerMethod::ClosedFormGL2);
}

lwt::WhittakerEvaluator gl3_evaluator(double accuracy) {
  return lwt::WhittakerEvaluator(lwt::make_spectral_point(3, {0.5, 0.5}),
                                 lwt::WhittakerMethod::MellinBarnesGL3,
                                 lwt::ContourSpec{}, accuracy);
}
}  // namespace

TEST_CASE("plancherel density closed forms, degeneracy, weyl invariance") {
  // GL(2): 1/|Gamma(i t)|^2 = t sinh(pi t) / pi
  for (double t : {0.3, 1.1, 2.7}) {
    double rho = lwt::plancherel_density(lwt::make_spectral_point(2, {t}));
    CHECK(rho == doctest::Approx(t * std::sinh(pi * t) / pi).epsilon(1e-12));
  }
  CHECK(lwt::plancherel_density(lwt::make_spectral_point(2, {0.0})) == 0.0);

  // GL(3): product over pairs of 1/|Gamma((alpha_k - alpha_l)/2)|^2
  auto p = lwt::make_spectral_point(3, {0.9, 0.4});
  double direct = 1.0;
  for (int k = 0; k < 3; ++k)
    for (int l = k + 1; l < 3; ++l)
      direct /= std::norm(lwt::gamma(0.5 * (p.alpha[k] - p.alpha[l])));
  CHECK(lwt::plancherel_density(p) == doctest::Approx(direct).epsilon(1e-10));

  // coinciding alpha entries kill the density exactly
  CHECK(lwt::plancherel_density(lwt::make_spectral_point(3, {0.0, 0.0})) == 0.0);
  CHECK(lwt::plancherel_density(lwt::make_spectral_point(3, {0.7, 0.0})) == 0.0);

  const double t1 = 0.8, t2 = -0.35;
  double base = lwt::plancherel_density(lwt::make_spectral_point(3, {t1, t2}));
  const double maps[6][2] = {{t1, t2},   {-t1, t1 + t2}, {t1 + t2, -t2},
                             {-t2, -t1}, {t2, -t1 - t2}, {-t1 - t2, t1}};
  for (const auto& w : maps) {
    double img =
        lwt::plancherel_density(lwt::make_spectral_point(3, {w[0], w[1]}));
    CHECK(img == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("c function inverts the density and flags poles") {
  auto p = lwt::make_spectral_point(2, {1.3});
  CHECK(std::norm(lwt::c_function(p)) * lwt::plancherel_density(p) ==
        doctest::Approx(1.0).epsilon(1e-12));
  auto q = lwt::make_spectral_point(3, {0.6, 1.1});
  CHECK(std::norm(lwt::c_function(q)) * lwt::plancherel_density(q) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(lwt::c_function(lwt::make_spectral_point(2, {0.0})),
                  lwt::DegenerateParameters);
  CHECK_THROWS_AS(lwt::c_function(lwt::make_spectral_point(3, {0.5, 0.0})),
                  lwt::DegenerateParameters);
}

TEST_CASE("gl2 forward transform basics") {
  const auto W = gl2_evaluator();
  auto f = gauss_bump_gl2(1.0 / 32, 1.0, 64, 0.176);

  cplx a = lwt::forward(f, W, {1.1});
  CHECK(std::abs(a) > 1e-6);  // the bump has mass at this frequency
  // linear in f
  lwt::GridFunction g = f;
  for (double& v : g.samples) v *= -2.5;
  cplx b = lwt::forward(g, W, {1.1});
  CHECK(std::abs(b + 2.5 * a) < 1e-14 * std::abs(a));
  // real and even in t: the closed-form GL(2) kernel is real and even
  CHECK(std::abs(a.imag()) < 1e-15 * std::abs(a));
  CHECK(std::abs(lwt::forward(f, W, {-1.1}) - a) < 1e-14 * std::abs(a));
  // doubling the lattice keeps the value (trapezoid fully converged)
  auto f2 = gauss_bump_gl2(1.0 / 32, 1.0, 128, 0.176);
  cplx a2 = lwt::forward(f2, W, {1.1});
  CHECK(std::abs(a2 - a) < 1e-6 * std::abs(a));
  // zero in, zero out
  for (double& v : g.samples) v = 0.0;
  CHECK(lwt::forward(g, W, {1.1}) == cplx(0.0));
}

TEST_CASE("gl3 forward weyl invariance and conjugation" *
          doctest::timeout(120)) {
  const auto W = gl3_evaluator(1e-8);
  const double lo = 1.0 / 8, hi = 1.0;
  auto f = lwt::make_bump(3, {{lo, hi}, {lo, hi}}, {12, 12},
                          {{lo, hi}, {lo, hi}},
                          lwt::BumpShape::TruncatedGaussian, 0.2, "b3");
  const double t1 = 0.9, t2 = 0.45;
  cplx base = lwt::forward(f, W, {t1, t2});
  CHECK(std::abs(base) > 1e-8);
  // W_t depends on alpha as a set, so every Weyl image of t gives the same
  // transform; negating t conjugates it (real input)
  cplx img = lwt::forward(f, W, {-t2, -t1});
  cplx neg = lwt::forward(f, W, {-t1, -t2});
  CHECK(std::abs(img - base) < 1e-12 * std::abs(base));
  CHECK(std::abs(neg - std::conj(base)) < 1e-12 * std::abs(base));
}

TEST_CASE("symmetric table fill matches direct evaluation" *
          doctest::timeout(240)) {
  // GL(2): mirrored half-line fill
  const auto W2 = gl2_evaluator();
  auto f = gauss_bump_gl2(1.0 / 32, 1.0, 48, 0.176);
  lwt::SpectralTable tab({{-3.0, 3.0}}, {13});
  lwt::fill_forward_table(tab, f, W2);
  for (size_t i = 0; i < tab.size(); ++i) {
    cplx direct = lwt::forward(f, W2, tab.node_coords(i));
    CHECK(std::abs(tab.at(i) - direct) < 1e-13 + 1e-12 * std::abs(direct));
  }

  // GL(3): orbit expansion against node-by-node evaluation
  const auto W3 = gl3_evaluator(1e-8);
  const double lo = 1.0 / 8, hi = 1.0;
  auto f3 = lwt::make_bump(3, {{lo, hi}, {lo, hi}}, {10, 10},
                           {{lo, hi}, {lo, hi}},
                           lwt::BumpShape::TruncatedGaussian, 0.2, "b3");
  lwt::SpectralTable tab3({{-1.2, 1.2}, {-1.2, 1.2}}, {5, 5});
  lwt::fill_forward_table(tab3, f3, W3);
  for (size_t i = 0; i < tab3.size(); ++i) {
    cplx direct = lwt::forward(f3, W3, tab3.node_coords(i));
    CHECK(std::abs(tab3.at(i) - direct) < 1e-12 + 1e-10 * std::abs(direct));
  }
}

TEST_CASE("spectral table cubic interpolation") {
  lwt::SpectralTable tab({{-5.0, 5.0}}, {41});
  auto F = [](const std::vector<double>& t) {
    return cplx(std::exp(-t[0] * t[0] / 8.0) * std::cos(t[0]),
                std::sin(0.4 * t[0]));
  };
  tab.fill(F);
  for (double t : {-4.87, -2.113, -0.41, 0.07, 1.93, 4.71})
    CHECK(std::abs(tab({t}) - F({t})) < 5e-4);
  // exact at nodes
  CHECK(std::abs(tab({tab.node(0, 7)}) - F({tab.node(0, 7)})) < 1e-15);
  CHECK_THROWS_AS(tab({5.2}), lwt::DomainError);

  lwt::SpectralTable tab2({{-2.0, 2.0}, {-2.0, 2.0}}, {21, 21});
  auto G = [](const std::vector<double>& t) {
    return cplx(std::cos(t[0] + 0.5 * t[1]), 0.1 * t[0] * t[1]);
  };
  tab2.fill(G);
  CHECK(std::abs(tab2({0.33, -1.21}) - G({0.33, -1.21})) < 5e-4);
  CHECK_THROWS_AS(tab2({0.0, 2.5}), lwt::DomainError);
}

TEST_CASE("inverse transform on trivial spectral data") {
  const auto W = gl2_evaluator();
  auto zero = [](const std::vector<double>&) { return cplx(0.0); };
  CHECK(std::abs(lwt::inverse(zero, W, {1.0}, {{-4.0, 4.0}}, {8, 6}, 1.0)) ==
        0.0);
  // without decay across the box the tail guard must refuse
  auto flat = [](const std::vector<double>&) { return cplx(1.0); };
  CHECK_THROWS_AS(lwt::inverse(flat, W, {1.0}, {{-4.0, 4.0}}, {8, 6}, 1e-9),
                  lwt::TailBudgetExceeded);
  CHECK_THROWS_AS(lwt::inverse(flat, W, {1.0}, {{-4.0, 4.0}}, {8, 6}, 0.0),
                  lwt::DomainError);
}

TEST_CASE("gl2 round trip reconstructs the bump" * doctest::timeout(120)) {
  lwt::RoundtripSettings s;
  s.n = 2;
  s.y_box = {{1.0 / 32, 1.0}};
  s.shape = {64};
  s.support = s.y_box;
  s.bump_shape = lwt::BumpShape::TruncatedGaussian;
  s.bump_param = 0.176;
  s.t_box = {{-12.0, 12.0}};
  s.t_shape = {241};
  s.t_rule = {30, 8};
  s.eval_points = {{0.176777}, {0.13}};
  s.tail_budget = 0.05;
  auto rep = lwt::run_roundtrip(s);
  CHECK(rep.max_rel_error < 3e-3);
  CHECK(rep.reconstructed.size() == 2);
  CHECK(rep.reference[0] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(rep.timings_seconds.at("total") > 0.0);
  CHECK(lwt::transform_report_to_json(rep).size() > 100);
}

TEST_CASE("lattice trapezoid inverse matches the gauss-legendre rule" *
          doctest::timeout(120)) {
  // certifies the trapezoid-over-the-table scheme used by the fused GL(3)
  // round trip, on the cheap GL(2) kernel at the production spacing 0.15
  const auto W = gl2_evaluator();
  auto f = gauss_bump_gl2(1.0 / 32, 1.0, 64, 0.176);
  const double T = 12.0;
  const int m = 161;
  lwt::SpectralTable tab({{-T, T}}, {m});
  lwt::fill_forward_table(tab, f, W);
  const double y = 0.2;
  cplx acc = 0.0;
  for (int i = 0; i < m; ++i) {
    const double t = tab.node(0, i);
    const double rho =
        lwt::plancherel_density(lwt::make_spectral_point(2, {t}));
    const double w = (i == 0 || i == m - 1) ? 0.5 : 1.0;
    acc += tab.at(i) * lwt::whittaker_gl2(-t, y) * rho * w;
  }
  const cplx trap = acc * tab.step(0) / (4.0 * pi);
  auto F = [&](const std::vector<double>& t) { return tab(t); };
  const cplx rule = lwt::inverse(F, W, {y}, {{-T, T}}, {30, 8}, 1.0);
  CHECK(std::abs(trap - rule) < 2e-4);
  // and both sit on the bump
  const double x = 2.0 * std::log(32.0 * y) / std::log(32.0) - 1.0;
  const double ref =
      lwt::bump_profile(lwt::BumpShape::TruncatedGaussian, 0.176, x);
  CHECK(std::abs(trap - ref) < 3e-3);
  CHECK(std::abs(rule - ref) < 3e-3);
}

TEST_CASE("gl3 fused round trip smoke" * doctest::timeout(240)) {
  // coarse, fast configuration: exercises the fused forward/inverse path and
  // its symmetry expansion; the small spectral window only supports a loose
  // reconstruction, so assert structure rather than accuracy
  lwt::RoundtripSettings s = lwt::default_roundtrip_settings(3);
  s.shape = {16, 16};
  s.accuracy = 1e-6;
  s.t_box = {{-4.0, 4.0}, {-4.0, 4.0}};
  s.t_shape = {27, 27};
  s.tail_budget = 1e9;
  const double h = std::log(32.0) / 15;
  auto node = [&](int k) { return std::exp(k * h) / 32.0; };
  s.eval_points = {{node(8), node(8)}};
  auto rep = lwt::run_roundtrip(s);
  REQUIRE(rep.reconstructed.size() == 1);
  // symmetry expansion leaves a real value
  CHECK(std::abs(rep.reconstructed[0].imag()) <
        1e-8 * std::abs(rep.reconstructed[0].real()) + 1e-12);
  CHECK(rep.reconstructed[0].real() > 0.05);
  CHECK(rep.reconstructed[0].real() < 1.5);
  CHECK(rep.forward_values.size() == 27 * 27);

  // a tiny budget trips the lattice tail guard at this window
  s.tail_budget = 1e-12;
  CHECK_THROWS_AS(lwt::run_roundtrip(s), lwt::TailBudgetExceeded);

  // evaluation points must be lattice nodes
  s.tail_budget = 1e9;
  s.eval_points = {{0.3, 0.3}};
  CHECK_THROWS_AS(lwt::run_roundtrip(s), lwt::DomainError);
}

TEST_CASE("parseval pairing between the y and t sides" *
          doctest::timeout(120)) {
  const auto W = gl2_evaluator();
  const lwt::Box box = {{1.0 / 32, 1.0}};
  auto f1 = lwt::make_bump(2, box, {64}, box,
                           lwt::BumpShape::TruncatedGaussian, 0.176, "f1");
  auto f2 = lwt::make_bump(2, box, {64}, {{1.0 / 24, 0.8}},
                           lwt::BumpShape::TruncatedGaussian, 0.2, "f2");
  const cplx yip = lwt::inner_product_y(f1, f2);
  REQUIRE(std::abs(yip) > 1e-4);

  const lwt::Box t_box = {{-16.0, 16.0}};
  lwt::SpectralTable tab1(t_box, {321}), tab2(t_box, {321});
  lwt::fill_forward_table(tab1, f1, W);
  lwt::fill_forward_table(tab2, f2, W);
  auto F1 = [&](const std::vector<double>& t) { return tab1(t); };
  auto F2 = [&](const std::vector<double>& t) { return tab2(t); };
  const cplx tip = lwt::inner_product_t(F1, F2, 2, t_box, {40, 10});
  CHECK(std::abs(tip - yip) / std::abs(yip) < 1e-3);

  // mismatched lattices are rejected
  auto f3 = gauss_bump_gl2(1.0 / 32, 1.0, 48, 0.176);
  CHECK_THROWS_AS(lwt::inner_product_y(f1, f3), lwt::DomainError);
}

TEST_CASE("bump construction and default settings") {
  auto f = gauss_bump_gl2(0.5, 2.0, 33, 0.25);
  CHECK(f.samples[16] == doctest::Approx(1.0).epsilon(1e-12));  // center node
  CHECK(f.samples[0] == 0.0);   // profile vanishes at the support edge
  CHECK(f.samples[32] == 0.0);
  CHECK(f.samples[1] > 0.0);
  CHECK(f.samples[1] == doctest::Approx(f.samples[31]).epsilon(1e-12));

  CHECK_THROWS_AS(lwt::default_roundtrip_settings(4), lwt::UnsupportedRank);
  auto s2 = lwt::default_roundtrip_settings(2);
  CHECK(s2.n == 2);
  CHECK(s2.t_box[0][1] == 6.0);
  auto s3 = lwt::default_roundtrip_settings(3);
  CHECK(s3.t_shape[0] == 189);
  REQUIRE(s3.eval_points.size() == 3);
  // the GL(3) evaluation points are exact y-lattice nodes, interior to the bump
  const double h = std::log(32.0) / 79;
  for (const auto& y : s3.eval_points)
    for (double v : y) {
      const double sidx = std::log(32.0 * v) / h;
      CHECK(std::abs(sidx - std::lround(sidx)) < 1e-9);
    }
}
