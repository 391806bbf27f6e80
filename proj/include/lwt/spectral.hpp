#pragma once

#include <string>
#include <vector>

#include "lwt/specfun.hpp"

namespace lwt {

// Tempered spectral data for GL(n): parameters t in R^{n-1}, derived
// nu_j = 1/n + i t_j and purely imaginary alpha_1..alpha_n summing to zero.
struct SpectralPoint {
  int n = 2;
  std::vector<double> t;   // size n-1
  std::vector<cplx> nu;    // size n-1
  std::vector<cplx> alpha; // size n
};

// A second spectral point (mu_j = 1/n + i u_j with derived beta) has the same
// layout and rules.
using SecondSpectralPoint = SpectralPoint;

// b_{ij} = ij for i+j <= n and (n-i)(n-j) for i+j >= n, as an
// (n-1) x (n-1) integer matrix.
std::vector<std::vector<long long>> b_matrix(int n);

// alpha vector from t.  The calibrated map (normative for n = 2, 3) fixes the
// partial sums sum_{l<=n-k} alpha_l = i sum_l b_{k,l} t_l; its GL(3) values are
// (i(2 t1 + t2), i(-t1 + t2), -i(t1 + 2 t2)).  The raw general-n recipe
// (requested with uncalibrated = true) produces exactly twice these values and
// is exposed for comparison only.  Throws UnsupportedRank for n > 3 on the
// calibrated path.
std::vector<cplx> alpha_from_t(int n, const std::vector<double>& t,
                               bool uncalibrated = false);

SpectralPoint make_spectral_point(int n, const std::vector<double>& t,
                                  bool uncalibrated = false);

// v_{j,k} = sum_{i=0}^{j-1} (n nu_{n-k+i} - 1)/2 for 1 <= j <= k <= n-1.
// Purely imaginary in the tempered case.  Throws IndexError outside the range.
cplx v_jk(const SpectralPoint& p, int j, int k);

// All n! permutations of alpha, with exact duplicates removed (duplicates
// appear when entries coincide).  Order is deterministic.
std::vector<std::vector<cplx>> weyl_orbit(const std::vector<cplx>& alpha);

// Density of the Haar measure d*y = prod_k y_k^{-k(n-k)} dy_k / y_k relative
// to prod dy_k, i.e. prod_k y_k^{-k(n-k)-1}.  Throws DomainError for y_k <= 0.
double haar_weight(int n, const std::vector<double>& y);

// JSON round trip: {"n": int, "t": [reals]}.  Derived fields are always
// recomputed on load, never read from the input.
std::string spectral_point_to_json(const SpectralPoint& p);
SpectralPoint spectral_point_from_json(const std::string& text);

// True if some pair alpha_k, alpha_l coincides within 1e-12.
bool degenerate_alpha(const SpectralPoint& p);

}  // namespace lwt
