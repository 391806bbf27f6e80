#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "lwt/spectral.hpp"

using lwt::cplx;

TEST_CASE("b_matrix small cases and symmetry") {
  auto b2 = lwt::b_matrix(2);
  REQUIRE(b2.size() == 1);
  CHECK(b2[0][0] == 1);
  auto b3 = lwt::b_matrix(3);
  CHECK(b3[0][0] == 1);
  CHECK(b3[0][1] == 2);
  CHECK(b3[1][0] == 2);
  CHECK(b3[1][1] == 1);
  for (int n = 2; n <= 10; ++n) {
    auto b = lwt::b_matrix(n);
    for (int i = 0; i < n - 1; ++i)
      for (int j = 0; j < n - 1; ++j) {
        CHECK(b[i][j] == b[j][i]);
        CHECK(b[i][j] == b[n - 2 - i][n - 2 - j]);
      }
  }
  CHECK_THROWS_AS(lwt::b_matrix(1), lwt::DomainError);
}

TEST_CASE("alpha_from_t closed forms") {
  auto a = lwt::alpha_from_t(3, {1.0, 2.0});
  REQUIRE(a.size() == 3);
  CHECK(std::abs(a[0] - cplx(0.0, 4.0)) < 1e-14);
  CHECK(std::abs(a[1] - cplx(0.0, 1.0)) < 1e-14);
  CHECK(std::abs(a[2] - cplx(0.0, -5.0)) < 1e-14);

  auto z = lwt::alpha_from_t(3, {0.0, 0.0});
  for (auto& v : z) CHECK(std::abs(v) == 0.0);

  auto a2 = lwt::alpha_from_t(2, {0.7});
  CHECK(std::abs(a2[0] - cplx(0.0, 0.7)) < 1e-15);
  CHECK(std::abs(a2[1] - cplx(0.0, -0.7)) < 1e-15);

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> t = {d(rng), d(rng)};
    auto al = lwt::alpha_from_t(3, t);
    cplx sum = al[0] + al[1] + al[2];
    CHECK(std::abs(sum) < 1e-13);
    for (auto& v : al) CHECK(v.real() == 0.0);
    // raw general recipe = exactly twice the calibrated values
    auto raw = lwt::alpha_from_t(3, t, true);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(raw[k] - 2.0 * al[k]) < 1e-13);
  }

  CHECK_THROWS_AS(lwt::alpha_from_t(4, {0.1, 0.2, 0.3}), lwt::UnsupportedRank);
  auto a4 = lwt::alpha_from_t(4, {0.1, 0.2, 0.3}, true);  // raw recipe allowed
  CHECK(a4.size() == 4);
  CHECK(std::abs(a4[0] + a4[1] + a4[2] + a4[3]) < 1e-13);
}

TEST_CASE("negating t lands in the Weyl orbit with negated alpha") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    std::vector<double> t = {d(rng), d(rng)};
    auto a = lwt::alpha_from_t(3, t);
    auto aneg = lwt::alpha_from_t(3, {-t[0], -t[1]});
    // {-alpha} should equal {alpha at -t} as a set
    auto orbit = lwt::weyl_orbit(aneg);
    bool found = false;
    for (auto& perm : orbit) {
      double dist = 0.0;
      for (int k = 0; k < 3; ++k) dist += std::abs(perm[k] + a[k]);
      if (dist < 1e-12) found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("v_jk values") {
  auto p2 = lwt::make_spectral_point(2, {0.3});
  CHECK(std::abs(lwt::v_jk(p2, 1, 1) - cplx(0.0, 0.3)) < 1e-15);

  auto p3 = lwt::make_spectral_point(3, {0.4, 0.9});
  CHECK(std::abs(lwt::v_jk(p3, 1, 1) - cplx(0.0, 1.5 * 0.9)) < 1e-14);
  CHECK(std::abs(lwt::v_jk(p3, 1, 2) - cplx(0.0, 1.5 * 0.4)) < 1e-14);
  CHECK(std::abs(lwt::v_jk(p3, 2, 2) - cplx(0.0, 1.5 * (0.4 + 0.9))) < 1e-14);
  for (int j = 1; j <= 2; ++j)
    for (int k = j; k <= 2; ++k) CHECK(lwt::v_jk(p3, j, k).real() == 0.0);

  // the multiset {1/2 + v_jk} equals {(1 + alpha_k - alpha_l)/2, k < l}
  std::vector<cplx> lhs, rhs;
  for (int j = 1; j <= 2; ++j)
    for (int k = j; k <= 2; ++k) lhs.push_back(0.5 + lwt::v_jk(p3, j, k));
  for (int k = 0; k < 3; ++k)
    for (int l = k + 1; l < 3; ++l) rhs.push_back((1.0 + p3.alpha[k] - p3.alpha[l]) / 2.0);
  for (auto& v : lhs) {
    bool found = false;
    for (auto& w : rhs)
      if (std::abs(v - w) < 1e-13) found = true;
    CHECK(found);
  }

  CHECK_THROWS_AS(lwt::v_jk(p3, 0, 1), lwt::IndexError);
  CHECK_THROWS_AS(lwt::v_jk(p3, 2, 1), lwt::IndexError);
  CHECK_THROWS_AS(lwt::v_jk(p3, 1, 3), lwt::IndexError);
}

TEST_CASE("weyl_orbit sizes and dedup") {
  auto o2 = lwt::weyl_orbit({cplx(0, 1), cplx(0, -1)});
  CHECK(o2.size() == 2);
  auto o3 = lwt::weyl_orbit({cplx(0, 1), cplx(0, 2), cplx(0, -3)});
  CHECK(o3.size() == 6);
  auto o3d = lwt::weyl_orbit({cplx(0, 1), cplx(0, 1), cplx(0, -2)});
  CHECK(o3d.size() == 3);
}

TEST_CASE("haar_weight") {
  CHECK(lwt::haar_weight(2, {1.0}) == 1.0);
  CHECK(lwt::haar_weight(3, {1.0, 1.0}) == 1.0);
  CHECK(std::abs(lwt::haar_weight(3, {2.0, 1.0}) - std::pow(2.0, -3)) < 1e-15);
  CHECK(std::abs(lwt::haar_weight(2, {4.0}) - std::pow(4.0, -2)) < 1e-15);
  CHECK_THROWS_AS(lwt::haar_weight(3, {1.0, -1.0}), lwt::DomainError);
  CHECK_THROWS_AS(lwt::haar_weight(3, {1.0}), lwt::DomainError);
}

TEST_CASE("spectral point JSON round trip recomputes derived data") {
  auto p = lwt::make_spectral_point(3, {0.25, -1.5});
  auto text = lwt::spectral_point_to_json(p);
  auto q = lwt::spectral_point_from_json(text);
  CHECK(q.n == 3);
  REQUIRE(q.t.size() == 2);
  CHECK(q.t[0] == p.t[0]);
  CHECK(q.t[1] == p.t[1]);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(q.alpha[k] - p.alpha[k]) < 1e-15);
  for (int j = 0; j < 2; ++j) {
    CHECK(q.nu[j].real() == 1.0 / 3.0);
    CHECK(q.nu[j].imag() == q.t[j]);
  }
  // alpha in the serialized text is never trusted: only n and t are read
  auto forged = std::string(R"({"n": 2, "t": [1.0], "alpha": [[9, 9], [9, 9]]})");
  auto r = lwt::spectral_point_from_json(forged);
  CHECK(std::abs(r.alpha[0] - cplx(0.0, 1.0)) < 1e-15);
}

TEST_CASE("degenerate alpha detection") {
  CHECK(lwt::degenerate_alpha(lwt::make_spectral_point(3, {0.0, 0.0})));
  CHECK(lwt::degenerate_alpha(lwt::make_spectral_point(3, {0.0, 1.0})));   // alpha1 = alpha2
  CHECK(lwt::degenerate_alpha(lwt::make_spectral_point(3, {1.0, -1.0})));  // alpha1 = alpha3
  CHECK(!lwt::degenerate_alpha(lwt::make_spectral_point(3, {1.0, 1.0})));
  CHECK(!lwt::degenerate_alpha(lwt::make_spectral_point(3, {0.4, 0.9})));
  CHECK(lwt::degenerate_alpha(lwt::make_spectral_point(2, {0.0})));
}
