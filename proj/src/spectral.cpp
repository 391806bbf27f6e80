#include "lwt/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

namespace lwt {

std::vector<std::vector<long long>> b_matrix(int n) {
  if (n < 2) throw DomainError("b_matrix: requires n >= 2");
  std::vector<std::vector<long long>> b(n - 1, std::vector<long long>(n - 1));
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n - 1; ++j)
      b[i - 1][j - 1] = (i + j <= n) ? static_cast<long long>(i) * j
                                     : static_cast<long long>(n - i) * (n - j);
  return b;
}

std::vector<cplx> alpha_from_t(int n, const std::vector<double>& t,
                               bool uncalibrated) {
  if (n < 2) throw DomainError("alpha_from_t: requires n >= 2");
  if (!uncalibrated && n > 3)
    throw UnsupportedRank(
        "alpha_from_t: only n in {2, 3} is calibrated; pass uncalibrated=true "
        "for the raw general-n recipe");
  if (static_cast<int>(t.size()) != n - 1)
    throw DomainError("alpha_from_t: t must have n-1 entries");
  const double factor = uncalibrated ? 2.0 : 1.0;
  auto b = b_matrix(n);
  // partial sums S_m = alpha_1 + ... + alpha_m, with S_{n-k} pinned by row k
  std::vector<double> s(n, 0.0);  // s[m] = Im(S_m), s[0] = 0
  for (int k = 1; k <= n - 1; ++k) {
    double acc = 0.0;
    for (int l = 1; l <= n - 1; ++l) acc += static_cast<double>(b[k - 1][l - 1]) * t[l - 1];
    s[n - k] = factor * acc;
  }
  std::vector<cplx> alpha(n);
  for (int m = 1; m <= n - 1; ++m) alpha[m - 1] = cplx(0.0, s[m] - s[m - 1]);
  alpha[n - 1] = cplx(0.0, -s[n - 1]);
  return alpha;
}

SpectralPoint make_spectral_point(int n, const std::vector<double>& t,
                                  bool uncalibrated) {
  SpectralPoint p;
  p.n = n;
  p.t = t;
  p.alpha = alpha_from_t(n, t, uncalibrated);
  p.nu.resize(n - 1);
  for (int j = 0; j < n - 1; ++j) p.nu[j] = cplx(1.0 / n, t[j]);
  return p;
}

cplx v_jk(const SpectralPoint& p, int j, int k) {
  const int n = p.n;
  if (j < 1 || k < j || k > n - 1)
    throw IndexError("v_jk: requires 1 <= j <= k <= n-1");
  cplx acc(0.0, 0.0);
  for (int i = 0; i <= j - 1; ++i) {
    int l = n - k + i;  // index into nu, 1-based
    if (l < 1 || l > n - 1) throw IndexError("v_jk: nu index out of range");
    acc += (static_cast<double>(n) * p.nu[l - 1] - 1.0) / 2.0;
  }
  return acc;
}

std::vector<std::vector<cplx>> weyl_orbit(const std::vector<cplx>& alpha) {
  const int n = static_cast<int>(alpha.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::vector<cplx>> orbit;
  do {
    std::vector<cplx> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = alpha[idx[i]];
    if (std::find(orbit.begin(), orbit.end(), perm) == orbit.end())
      orbit.push_back(perm);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return orbit;
}

double haar_weight(int n, const std::vector<double>& y) {
  if (n < 2) throw DomainError("haar_weight: requires n >= 2");
  if (static_cast<int>(y.size()) != n - 1)
    throw DomainError("haar_weight: y must have n-1 entries");
  double w = 1.0;
  for (int k = 1; k <= n - 1; ++k) {
    if (!(y[k - 1] > 0.0)) throw DomainError("haar_weight: requires y_k > 0");
    w *= std::pow(y[k - 1], static_cast<double>(-k * (n - k) - 1));
  }
  return w;
}

std::string spectral_point_to_json(const SpectralPoint& p) {
  nlohmann::json j;
  j["n"] = p.n;
  j["t"] = p.t;
  return j.dump();
}

SpectralPoint spectral_point_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("n") || !j.contains("t"))
    throw DomainError("spectral_point_from_json: need fields n and t");
  int n = j["n"].get<int>();
  std::vector<double> t = j["t"].get<std::vector<double>>();
  return make_spectral_point(n, t);
}

bool degenerate_alpha(const SpectralPoint& p) {
  for (size_t a = 0; a < p.alpha.size(); ++a)
    for (size_t b = a + 1; b < p.alpha.size(); ++b)
      if (std::abs(p.alpha[a] - p.alpha[b]) < 1e-12) return true;
  return false;
}

}  // namespace lwt
