#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "lwt/errors.hpp"
#include "lwt/specfun.hpp"
#include "lwt/spectral.hpp"
#include "lwt/whittaker.hpp"

using lwt::cplx;

namespace {
constexpr double pi = 3.14159265358979323846;
}

TEST_CASE("i_nu power function") {
  auto p2 = lwt::make_spectral_point(2, {0.0});  // nu1 = 1/2
  CHECK(std::abs(lwt::i_nu(p2, {4.0}) - cplx(2.0, 0.0)) < 1e-14);
  CHECK(std::abs(lwt::i_nu(p2, {1.0}) - cplx(1.0, 0.0)) < 1e-14);

  auto p3 = lwt::make_spectral_point(3, {0.4, -0.9});
  CHECK(std::abs(lwt::i_nu(p3, {1.0, 1.0}) - cplx(1.0, 0.0)) < 1e-14);
  // b_matrix(3) = [[1,2],[2,1]]: i_nu = y1^{nu1+2nu2} y2^{2nu1+nu2}
  const double y1 = 1.7, y2 = 0.6;
  cplx e1 = p3.nu[0] + 2.0 * p3.nu[1];
  cplx e2 = 2.0 * p3.nu[0] + p3.nu[1];
  cplx expect = std::exp(e1 * std::log(y1) + e2 * std::log(y2));
  CHECK(std::abs(lwt::i_nu(p3, {y1, y2}) - expect) < 1e-14);

  CHECK_THROWS_AS(lwt::i_nu(p3, {1.0}), lwt::DomainError);
  CHECK_THROWS_AS(lwt::i_nu(p3, {1.0, -2.0}), lwt::DomainError);
}

TEST_CASE("whittaker_gl2 closed form") {
  // 2 sqrt(1) K_0(2 pi), reference from an independent Bessel implementation
  CHECK(lwt::whittaker_gl2(0.0, 1.0) ==
        doctest::Approx(0.001833168721808741).epsilon(1e-12));
  CHECK(lwt::whittaker_gl2(0.0, 2.0) ==
        doctest::Approx(3.454090745141518e-06).epsilon(1e-12));
  // even in the spectral parameter
  CHECK(lwt::whittaker_gl2(1.3, 0.8) == lwt::whittaker_gl2(-1.3, 0.8));
  // rapid decay: |W| < 3 sqrt(y) e^{-2 pi y} for large y
  for (double y : {2.0, 4.0, 8.0}) {
    CHECK(std::abs(lwt::whittaker_gl2(0.9, y)) <
          3.0 * std::sqrt(y) * std::exp(-2.0 * pi * y));
  }
  CHECK(std::abs(lwt::whittaker_gl2(0.9, 4.0)) * 10.0 <
        std::abs(lwt::whittaker_gl2(0.9, 2.0)));
  CHECK_THROWS_AS(lwt::whittaker_gl2(0.0, 0.0), lwt::DomainError);
  CHECK_THROWS_AS(lwt::whittaker_gl2(0.0, -1.0), lwt::DomainError);
}

TEST_CASE("gl2 jacquet oracle agrees with the closed form") {
  for (double t : {0.0, 1.5, 3.0}) {
    for (double y : {0.3, 1.0, 3.0}) {
      cplx o = lwt::jacquet_oracle(2, {t}, {y});
      double c = lwt::whittaker_gl2(t, y);
      CHECK(std::abs(o - cplx(c, 0.0)) / std::abs(c) < 1e-8);
    }
  }
  // Weyl symmetry of the oracle itself
  cplx plus = lwt::jacquet_oracle(2, {1.1}, {0.7});
  cplx minus = lwt::jacquet_oracle(2, {-1.1}, {0.7});
  CHECK(std::abs(plus - minus) / std::abs(plus) < 1e-8);

  CHECK_THROWS_AS(lwt::jacquet_oracle(4, {0, 0, 0}, {1, 1, 1}),
                  lwt::DomainError);
  CHECK_THROWS_AS(lwt::jacquet_oracle(2, {0.0}, {-1.0}), lwt::DomainError);
  CHECK_THROWS_AS(lwt::jacquet_oracle(2, {0.0, 1.0}, {1.0}), lwt::DomainError);
}

TEST_CASE("gl3 mellin-barnes pinned by the bessel-reduced jacquet integral") {
  // the overall constant 1/4 of the kernel: checked at a symmetric point,
  // an asymmetric point, and a generic spectral point
  struct Pt {
    double t1, t2, y1, y2, tol;
  };
  for (const Pt& p : {Pt{0.0, 0.0, 1.0, 1.0, 1e-9},
                      Pt{0.0, 0.0, 1.3, 0.6, 1e-9},
                      Pt{0.7, 0.3, 0.9, 1.4, 1e-12}}) {
    cplx o = lwt::detail::jacquet_oracle_gl3_bessel_reduced({p.t1, p.t2},
                                                            {p.y1, p.y2});
    cplx m = lwt::whittaker_gl3_complex(p.t1, p.t2, p.y1, p.y2);
    CHECK(std::abs(o - m) < p.tol);
  }
}

TEST_CASE("gl3 honest 3d jacquet oracle cross-check" * doctest::timeout(120)) {
  cplx o = lwt::jacquet_oracle(3, {0.0, 0.0}, {1.0, 1.0});
  cplx m = lwt::whittaker_gl3_complex(0.0, 0.0, 1.0, 1.0);
  CHECK(std::abs(o - m) < 1e-9);
  CHECK(std::abs(o.imag()) < 1e-12);
}

TEST_CASE("gl3 weyl invariance and conjugate duality") {
  const double t1 = 0.7, t2 = 0.3;
  cplx base = lwt::whittaker_gl3_complex(t1, t2, 1.1, 0.7);
  const double maps[6][2] = {{t1, t2},        {-t1, t1 + t2}, {t1 + t2, -t2},
                             {-t2, -t1},      {t2, -t1 - t2}, {-t1 - t2, t1}};
  for (const auto& m : maps) {
    cplx w = lwt::whittaker_gl3_complex(m[0], m[1], 1.1, 0.7);
    CHECK(std::abs(w - base) < 1e-14);
  }
  // conj(W_t(y1, y2)) = W_t(y2, y1); the swap (t1, t2) -> (t2, t1) negates
  // the alpha set and produces the same conjugate
  cplx a = lwt::whittaker_gl3_complex(t1, t2, 0.5, 1.9);
  cplx b = lwt::whittaker_gl3_complex(t1, t2, 1.9, 0.5);
  cplx c = lwt::whittaker_gl3_complex(t2, t1, 0.5, 1.9);
  CHECK(std::abs(std::conj(a) - b) < 1e-14);
  CHECK(std::abs(std::conj(a) - c) < 1e-14);
  // on the diagonal y1 = y2 the value is real
  cplx d = lwt::whittaker_gl3_complex(t1, t2, 1.2, 1.2);
  CHECK(std::abs(d.imag()) < 1e-12);
}

TEST_CASE("gl3 decay and grid path consistency") {
  // at a generic spectral point the y = 4 value sits below the evaluator's
  // cancellation floor, so the decadal comparison is done where the signal
  // dominates in both operands
  double w1 = lwt::whittaker_gl3(0.5, 0.2, 1.0, 1.0);
  double w2 = lwt::whittaker_gl3(0.5, 0.2, 2.0, 2.0);
  CHECK(std::abs(w2) * 10.0 < std::abs(w1));
  double v1 = lwt::whittaker_gl3(0.0, 0.0, 1.0, 1.0);
  double v2 = lwt::whittaker_gl3(0.0, 0.0, 2.0, 2.0);
  CHECK(std::abs(v2) * 10.0 < std::abs(v1));

  std::vector<double> ax1 = {0.6, 1.0, 1.7}, ax2 = {0.5, 1.3};
  auto grid = lwt::whittaker_gl3_grid(0.4, -0.9, ax1, ax2);
  REQUIRE(grid.size() == 6);
  for (std::size_t i = 0; i < ax1.size(); ++i)
    for (std::size_t j = 0; j < ax2.size(); ++j) {
      cplx direct = lwt::whittaker_gl3_complex(0.4, -0.9, ax1[i], ax2[j]);
      CHECK(std::abs(grid[i * ax2.size() + j] - direct) < 1e-13);
    }
}

TEST_CASE("gl3 contour truncation error") {
  lwt::ContourSpec tight;
  tight.height = 6.4;  // keeps height * nodes_per_unit at the floor
  CHECK_THROWS_AS(
      lwt::whittaker_gl3_complex(0.0, 0.0, 1.0, 1.0, tight, 1e-12),
      lwt::ContourTruncationError);
  CHECK_THROWS_AS(lwt::whittaker_gl3(0.0, 0.0, -1.0, 1.0), lwt::DomainError);
}

TEST_CASE("whittaker evaluator dispatch and validation") {
  auto p2 = lwt::make_spectral_point(2, {0.8});
  auto p3 = lwt::make_spectral_point(3, {0.4, -0.2});

  lwt::WhittakerEvaluator closed(p2, lwt::WhittakerMethod::ClosedFormGL2);
  CHECK(std::abs(closed({1.1}) - cplx(lwt::whittaker_gl2(0.8, 1.1), 0.0)) <
        1e-15);

  lwt::WhittakerEvaluator mb(p3, lwt::WhittakerMethod::MellinBarnesGL3);
  CHECK(std::abs(mb({0.9, 1.2}) -
                 lwt::whittaker_gl3_complex(0.4, -0.2, 0.9, 1.2)) < 1e-15);

  lwt::WhittakerEvaluator oracle(p2, lwt::WhittakerMethod::JacquetOracle);
  CHECK(std::abs(oracle({1.1}) - closed({1.1})) /
            std::abs(closed({1.1})) < 1e-8);

  CHECK_THROWS_AS(
      lwt::WhittakerEvaluator(p3, lwt::WhittakerMethod::ClosedFormGL2),
      lwt::DomainError);
  CHECK_THROWS_AS(
      lwt::WhittakerEvaluator(p2, lwt::WhittakerMethod::MellinBarnesGL3),
      lwt::DomainError);
  CHECK_THROWS_AS(
      lwt::WhittakerEvaluator(p2, lwt::WhittakerMethod::ClosedFormGL2,
                              lwt::ContourSpec{}, -1.0),
      lwt::DomainError);
  CHECK_THROWS_AS(closed({1.0, 2.0}), lwt::DomainError);
}
