#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kpz/duality.hpp"
#include "kpz/errors.hpp"
#include "kpz/fredholm.hpp"
#include "kpz/quadrature.hpp"

using namespace kpz;

TEST_CASE("Nystrom on a rank-one kernel") {
  // K(x,y) = e^{-x-y} on [0,inf): det(1 + K) = 1 + 1/2
  Domain d = [](int level) {
    Nodes n;
    int m = 20 << level;
    const Rule& r = gauss_legendre(m);
    for (int i = 0; i < m; ++i) {
      double xi = r.x[i];
      n.z.push_back(2.0 * (1 + xi) / (1 - xi));
      n.w.push_back(r.w[i] * 4.0 / ((1 - xi) * (1 - xi)));
    }
    return n;
  };
  auto k = pointwise_kernel("rank1", "", [](cplx x, cplx y) { return std::exp(-x - y); });
  auto r = fredholm_det(k, d);
  CHECK(std::abs(r.value - 1.5) < 1e-10);
}

TEST_CASE("Tracy-Widom GUE values and refinement") {
  CHECK(tw_gue_cdf(-2.0) == doctest::Approx(0.413224142505).epsilon(1e-9));
  CHECK(tw_gue_cdf(0.0) == doctest::Approx(0.969372828355).epsilon(1e-9));
  auto a = tw_gue_det(-1.0, 40), b = tw_gue_det(-1.0, 80);
  CHECK(std::abs(a.value - b.value) < 1e-8);
  auto mo = cdf_moments(tw_gue_cdf);
  CHECK(mo.mean == doctest::Approx(-1.77).epsilon(0.02 / 1.77));
  CHECK(mo.variance == doctest::Approx(0.8132).epsilon(1e-3));
}

TEST_CASE("GOE determinant as defined") {
  auto mo = cdf_moments(tw_goe_cdf);
  // det(1 - Ai(u+u')) on [s, inf) is F_1(2s)
  CHECK(mo.mean == doctest::Approx(-1.2065 / 2).epsilon(1e-3));
  CHECK(mo.variance == doctest::Approx(1.6078 / 4).epsilon(1e-3));
}

TEST_CASE("f product equals the g ratio") {
  const double tau = 0.5, u = 1.0, t = 0.7, gamma = 1.0 / 3.0;
  cplx z(-0.2, 0.8);
  cplx prod = 1.0, v = z;
  for (int k = 0; k < 3; ++k) {
    prod *= kernel_f(v, u, t, tau);
    v *= tau;
  }
  cplx ratio = g_function(z, u, t, tau, gamma) / g_function(v, u, t, tau, gamma);
  CHECK(std::abs(prod - ratio) < 1e-12 * std::abs(prod));
}

TEST_CASE("denominator bound on C_0") {
  const double tau = 0.5, delta = 0.3;
  ContourC0 c{delta, 8.0, 0.3, 10};
  auto n = c.nodes(0);
  double worst = 1e300;
  for (int k = 1; k <= 6; ++k)
    for (auto& w1 : n.z)
      for (auto& w2 : n.z) worst = std::min(worst, std::abs(std::pow(tau, k) * w1 - w2));
  CHECK(worst >= (1 - tau) * delta - 1e-14);
}

TEST_CASE("small zeta expansion matches the moments") {
  // E e_tau(zeta tau^N) = sum_k zeta^k E tau^{kN} / (tau; tau)_k
  DetSpec s;
  s.params = ModelParams::from_tau(0.5);
  s.u = 1.0;
  s.t = 3.0;
  s.fred.tol = 1e-12;
  const double tau = 0.5, z = 0.01;
  CHECK(std::abs(det_K(0.0, s).value - 1.0) < 1e-14);
  double dp = det_K(z, s).value.real() - 1.0, dm = det_K(-z, s).value.real() - 1.0;
  double c1 = (dp - dm) / (2 * z), c2 = (dp + dm) / (2 * z * z);
  double m1 = moment_tau_n(1.0, 3.0, 1, s.params), m2 = moment_tau_n(1.0, 3.0, 2, s.params);
  CHECK(c1 == doctest::Approx(m1 / (1 - tau)).epsilon(1e-3));
  CHECK(c2 == doctest::Approx(m2 / ((1 - tau) * (1 - tau * tau))).epsilon(1e-3));
}

TEST_CASE("K and K_zeta agree") {
  DetSpec s;
  s.params = ModelParams::from_tau(0.5);
  s.u = 1.0;
  s.fred.tol = 1e-7;
  DetSpec sk = s;
  sk.t = 1.0 / s.params.gamma;
  auto a = det_K(-0.1, sk);
  auto b = det_K_zeta(-0.1, s);
  CHECK(std::abs(a.value - b.value) < 1e-6);
  CHECK(std::abs(a.value.imag()) < 1e-8);
}

TEST_CASE("Gaussian decay of K_zeta") {
  auto f = kzeta_decay_fit(1.0, 1.0, ModelParams::from_tau(0.5), -0.1, 0.3, 0.0);
  CHECK(f.c1 >= 0.125);
}

TEST_CASE("K_r at a = 2 is F_GUE, and tends to 1") {
  for (double r : {-1.0, 0.0}) CHECK(std::abs(det_Kr(2.0, r).value - tw_gue_cdf(r)) < 1e-4);
  double v = det_Kr(1.0, 6.0).value.real();
  CHECK(v >= 0.999);
  CHECK(v <= 1.001);
}

TEST_CASE("e_tau of a count") {
  CHECK(std::abs(e_tau_of_count(0.0, 3, 0.5) - 1.0) < 1e-15);
  CHECK(e_tau_of_count(-0.1, 0, 0.5) == doctest::Approx(e_tau(-0.1, 0.5).real()));
}
