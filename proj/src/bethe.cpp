#include "kpz/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "kpz/errors.hpp"
#include "kpz/quadrature.hpp"

namespace kpz {

std::size_t VerticalContour::n_nodes() const { return 2 * static_cast<std::size_t>(std::ceil(phi_max / h)) + 1; }

std::vector<cplx> VerticalContour::nodes() const {
  const long K = static_cast<long>(std::ceil(phi_max / h));
  std::vector<cplx> z;
  z.reserve(2 * K + 1);
  for (long k = -K; k <= K; ++k) z.emplace_back(a, k * h);
  return z;
}

double VerticalContour::weight() const { return h / (2.0 * M_PI); }

VerticalContour VerticalContour::design(double a, double t, double spread, double pole_dist, double tol) {
  if (!(t > 0.0)) fail(ErrorClass::domain, "contour design needs t > 0");
  if (!(tol > 0.0 && tol < 1.0)) fail(ErrorClass::invalid_input, "tolerance must lie in (0,1)");
  VerticalContour c;
  c.a = a;
  const double L = std::log(1.0 / tol);
  c.phi_max = std::sqrt(2.0 * L / t) + std::abs(a);
  c.h = std::min(0.5, M_PI / (std::abs(spread) + 1.0));
  if (pole_dist > 0.0) c.h = std::min(c.h, 2.0 * M_PI * pole_dist / L);
  return c;
}

double bethe_pole_distance(double a, double tau) {
  // poles of S at z_alpha = tau z_beta, and of 1/z at 0
  double d = std::abs(a);
  if (tau != 1.0) d = std::min(d, std::abs(1.0 - tau) * std::abs(a));
  return d;
}

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)), inv_(img_.size(), -1) {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    if (img_[i] < 0 || img_[i] >= n || inv_[img_[i]] != -1) fail(ErrorClass::invalid_input, "not a permutation");
    inv_[img_[i]] = i;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (img_[i] > img_[j]) invs_.emplace_back(img_[i], img_[j]);
}

std::vector<Permutation> Permutation::all(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::vector<Permutation> out;
  do out.emplace_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

cplx scattering_S(cplx za, cplx zb, double tau) {
  if (tau == 1.0) return 1.0;  // removable: numerator and denominator agree up to sign
  cplx den = tau * zb - za;
  if (den == 0.0) fail(ErrorClass::pole, "scattering factor at a pole");
  return -(tau * za - zb) / den;
}

cplx amplitude_A(const Permutation& sigma, const std::vector<cplx>& z, double tau) {
  cplx A = 1.0;
  for (auto [al, be] : sigma.inversions()) A *= scattering_S(z[al], z[be], tau);
  return A;
}

namespace {

void check_common(const Config& y, double t) {
  y.require(Chamber::increasing, "bethe");
  if (!(t > 0.0)) fail(ErrorClass::domain, "t must be positive");
  if (y.size() < 1) fail(ErrorClass::invalid_input, "need at least one particle");
  if (static_cast<int>(y.size()) > kBetheMaxN) fail(ErrorClass::capacity, "Bethe quadrature is capped at N = 5");
}

void check_abscissa(double a, double tau) {
  if (tau < 1.0 && !(a > 0.0)) fail(ErrorClass::contour, "0 <= tau < 1 needs a > 0");
  if (tau > 1.0 && !(a < 0.0)) fail(ErrorClass::contour, "tau > 1 needs a < 0");
}

struct Tables {
  std::vector<cplx> z;
  std::vector<cplx> S;  // S[alpha_node * n + beta_node] = S(z_alpha, z_beta)
  std::size_t n;
  double w;
};

Tables make_tables(const VerticalContour& c, double tau, bool with_S) {
  Tables T;
  T.z = c.nodes();
  T.n = T.z.size();
  T.w = c.weight();
  if (with_S) {
    T.S.resize(T.n * T.n);
    for (std::size_t i = 0; i < T.n; ++i)
      for (std::size_t j = 0; j < T.n; ++j) T.S[i * T.n + j] = scattering_S(T.z[i], T.z[j], tau);
  }
  return T;
}

// Sum over node tuples for one permutation. Positions are assigned in order
// 0..N-1; position j carries variable sigma(j) with factor F[j][node].
// Inversion factors are applied as soon as both variables are fixed.
cplx tuple_sum(const Tables& T, const Permutation& sigma, const std::vector<std::vector<cplx>>& F) {
  const int N = sigma.size();
  // pair checks per position: variables (alpha, beta) of inversions that complete at j
  std::vector<std::vector<std::pair<int, int>>> at(N);
  for (auto [al, be] : sigma.inversions()) {
    int j = std::max(sigma.inverse(al), sigma.inverse(be));
    at[j].emplace_back(al, be);
  }
  std::vector<std::size_t> node(N);  // node of each variable
  std::function<cplx(int)> rec = [&](int j) -> cplx {
    const int var = sigma(j);
    cplx acc = 0.0;
    for (std::size_t k = 0; k < T.n; ++k) {
      cplx f = F[j][k];
      node[var] = k;
      for (auto [al, be] : at[j]) f *= T.S[node[al] * T.n + node[be]];
      acc += (j + 1 == N) ? f : f * rec(j + 1);
    }
    return acc;
  };
  return rec(0);
}

}  // namespace

QuadResult transition_density_Q(const Config& y, const Config& x, double t, const ModelParams& params,
                                 const VerticalContour& contour, double) {
  check_common(y, t);
  x.require(Chamber::increasing, "transition_density_Q");
  if (x.size() != y.size()) fail(ErrorClass::invalid_input, "x and y sizes differ");
  const double tau = params.tau;
  check_abscissa(contour.a, tau);
  const int N = static_cast<int>(y.size());
  Tables T = make_tables(contour, tau, true);
  cplx total = 0.0;
  std::vector<std::vector<cplx>> F(N, std::vector<cplx>(T.n));
  for (const auto& sigma : Permutation::all(N)) {
    for (int j = 0; j < N; ++j) {
      const int k = sigma(j);
      for (std::size_t m = 0; m < T.n; ++m) {
        cplx z = T.z[m];
        F[j][m] = T.w * std::exp(z * (x[j] - y[k]) + 0.5 * z * z * t);
      }
    }
    total += tuple_sum(T, sigma, F);
  }
  return {total.real(), std::abs(total.imag()), T.n};
}

QuadResult transition_density_Q(const Config& y, const Config& x, double t, const ModelParams& params) {
  double spread = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) spread = std::max(spread, std::abs(x[i] - y[j]));
  const double a = params.tau > 1.0 ? -1.0 : 1.0;
  auto c = VerticalContour::design(a, t, spread, bethe_pole_distance(a, params.tau));
  return transition_density_Q(y, x, t, params, c);
}

double gaussian_kernel(double u, double t) { return std::exp(-u * u / (2.0 * t)) / std::sqrt(2.0 * M_PI * t); }

double transition_permanent_tau1(const Config& y, const Config& x, double t) {
  check_common(y, t);
  if (x.size() != y.size()) fail(ErrorClass::invalid_input, "x and y sizes differ");
  const int N = static_cast<int>(y.size());
  double perm = 0.0;
  for (const auto& s : Permutation::all(N)) {
    double p = 1.0;
    for (int i = 0; i < N; ++i) p *= gaussian_kernel(x[i] - y[s(i)], t);
    perm += p;
  }
  return perm;
}

QuadResult contour_F(int m, double u, double t, const VerticalContour& c) {
  if (!(c.a > 0.0)) fail(ErrorClass::contour, "F_m needs a > 0");
  cplx acc = 0.0;
  for (cplx z : c.nodes()) acc += std::pow(z, m) * std::exp(z * u + 0.5 * z * z * t);
  acc *= c.weight();
  return {acc.real(), std::abs(acc.imag()), c.n_nodes()};
}

QuadResult transition_det_q1(const Config& y, const Config& x, double t, const VerticalContour& c) {
  check_common(y, t);
  if (x.size() != y.size()) fail(ErrorClass::invalid_input, "x and y sizes differ");
  const int N = static_cast<int>(y.size());
  std::vector<double> M(N * N);
  double resid = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      QuadResult f = contour_F(i - j, x[i] - y[j], t, c);
      M[i * N + j] = f.value;
      resid = std::max(resid, f.imag_residual);
    }
  // Leibniz expansion; N is at most 5.
  double det = 0.0;
  for (const auto& s : Permutation::all(N)) {
    double p = (s.inversions().size() % 2) ? -1.0 : 1.0;
    for (int i = 0; i < N; ++i) p *= M[i * N + s(i)];
    det += p;
  }
  if (resid > 1e-9) fail(ErrorClass::accuracy, "F_m quadrature left an imaginary residual");
  return {det, resid, c.n_nodes()};
}

QuadResult cdf_gN(double u, const Config& y, double t, const ModelParams& params, const VerticalContour& c,
                  double) {
  check_common(y, t);
  const double tau = params.tau;
  check_abscissa(c.a, tau);
  const int N = static_cast<int>(y.size());
  Tables T = make_tables(c, tau, false);
  std::vector<cplx> pair(N > 1 ? T.n * T.n : 0);
  for (std::size_t i = 0; i < pair.size() / std::max<std::size_t>(T.n, 1); ++i)
    for (std::size_t j = 0; j < T.n; ++j) {
      cplx zi = T.z[i], zj = T.z[j];
      pair[i * T.n + j] = (zj - zi) / (zj - tau * zi);  // i earlier, j later
    }
  std::vector<std::vector<cplx>> F(N, std::vector<cplx>(T.n));
  for (int j = 0; j < N; ++j)
    for (std::size_t m = 0; m < T.n; ++m) {
      cplx z = T.z[m];
      F[j][m] = T.w * std::exp(z * (u - y[j]) + 0.5 * z * z * t) / z;
    }
  std::vector<std::size_t> node(N);
  std::function<cplx(int)> rec = [&](int j) -> cplx {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < T.n; ++k) {
      cplx f = F[j][k];
      for (int i = 0; i < j; ++i) f *= pair[node[i] * T.n + k];
      node[j] = k;
      acc += (j + 1 == N) ? f : f * rec(j + 1);
    }
    return acc;
  };
  cplx v = rec(0);
  return {v.real(), std::abs(v.imag()), T.n};
}

QuadResult cdf_gN(double u, const Config& y, double t, const ModelParams& params) {
  double spread = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) spread = std::max(spread, std::abs(u - y[j]));
  const double a = params.tau > 1.0 ? -1.0 : 1.0;
  auto c = VerticalContour::design(a, t, spread, bethe_pole_distance(a, params.tau));
  return cdf_gN(u, y, t, params, c);
}

namespace {

// (e^{c hi} - e^{c lo}) / c
cplx exp_integral(cplx c, double lo, double hi) {
  if (std::abs(c) * (hi - lo) < 1e-8) return (hi - lo) * std::exp(c * lo);
  return (std::exp(c * hi) - std::exp(c * lo)) / c;
}

// Integral of Q over {x1 in [lo, hi], 0 <= x_{j+1} - x_j <= gmax[j]}. Each
// plane wave integrates in closed form in gap coordinates.
double box_integral(const Config& y, double t, const ModelParams& params, const VerticalContour& c, double lo,
                    double hi, const std::vector<double>& gmax) {
  const int N = static_cast<int>(y.size());
  const double tau = params.tau;
  Tables T = make_tables(c, tau, true);
  std::vector<cplx> coef(T.n * N);
  for (int k = 0; k < N; ++k)
    for (std::size_t m = 0; m < T.n; ++m) {
      cplx z = T.z[m];
      coef[k * T.n + m] = T.w * std::exp(-z * y[k] + 0.5 * z * z * t);
    }
  cplx total = 0.0;
  for (const auto& sigma : Permutation::all(N)) {
    // assign positions from the right so suffix sums of wave numbers are known
    std::vector<std::vector<std::pair<int, int>>> at(N);
    for (auto [al, be] : sigma.inversions()) {
      int j = std::min(sigma.inverse(al), sigma.inverse(be));
      at[j].emplace_back(al, be);
    }
    std::vector<std::size_t> node(N);
    std::function<cplx(int, cplx)> rec = [&](int j, cplx suffix) -> cplx {
      const int var = sigma(j);
      cplx acc = 0.0;
      for (std::size_t k = 0; k < T.n; ++k) {
        node[var] = k;
        cplx s = suffix + T.z[k];
        cplx f = coef[var * T.n + k];
        for (auto [al, be] : at[j]) f *= T.S[node[al] * T.n + node[be]];
        // position j > 0 contributes the gap x_j - x_{j-1}; position 0 is x_1 itself
        f *= (j == 0) ? exp_integral(s, lo, hi) : exp_integral(s, 0.0, gmax[j - 1]);
        acc += (j == 0) ? f : f * rec(j - 1, s);
      }
      return acc;
    };
    total += rec(N - 1, 0.0);
  }
  return total.real();
}

}  // namespace

double normalization_Q(const Config& y0, double t, const ModelParams& params, int) {
  check_common(y0, t);
  const int N = static_cast<int>(y0.size());
  // translation invariance: center the start at the origin
  double c0 = 0.0;
  for (double v : y0.positions()) c0 += v;
  c0 /= N;
  std::vector<double> yc;
  for (double v : y0.positions()) yc.push_back(v - c0);
  Config y = Config::increasing(yc);
  const double W = 8.0 * std::sqrt(t);
  std::vector<double> gmax;
  for (int j = 0; j + 1 < N; ++j) gmax.push_back(y[j + 1] - y[j] + 1.5 * W);
  const double a = 0.5;
  auto c = VerticalContour::design(a, t, W + (y[N - 1] - y[0]), bethe_pole_distance(a, params.tau), 1e-9);
  return box_integral(y, t, params, c, y[0] - W, y[0] + W, gmax);
}

MarginalCdfs marginal_cdfs_n2(const Config& y0, double t, const ModelParams& params, const std::vector<double>& u,
                              double tol) {
  check_common(y0, t);
  if (y0.size() != 2) fail(ErrorClass::invalid_input, "marginal_cdfs_n2 needs N = 2");
  const double c0 = 0.5 * (y0[0] + y0[1]);
  Config y = Config::increasing({y0[0] - c0, y0[1] - c0});
  const double W = 10.0 * std::sqrt(t);
  const double lo = y[0] - W;
  std::vector<double> gmax{y[1] - y[0] + 1.5 * W};
  const double a = 0.5;
  MarginalCdfs out;
  out.u = u;
  for (double uu : u) {
    double us = uu - c0;
    double spread = std::max(std::abs(us - lo), gmax[0]) + 2.0;
    auto c = VerticalContour::design(a, t, spread, bethe_pole_distance(a, params.tau), tol);
    out.first.push_back(us <= lo ? 0.0 : box_integral(y, t, params, c, lo, us, gmax));
    auto c2 = VerticalContour::design(1.0, t, std::abs(us) + 2.0, bethe_pole_distance(1.0, params.tau), tol);
    out.second.push_back(cdf_gN(us, y, t, params, c2).value);
  }
  return out;
}

}  // namespace kpz
