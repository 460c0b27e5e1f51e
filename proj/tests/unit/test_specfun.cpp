#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/special_functions/airy.hpp>

#include "kpz/errors.hpp"
#include "kpz/quadrature.hpp"
#include "kpz/specfun.hpp"

using namespace kpz;

TEST_CASE("q-Pochhammer basics") {
  CHECK(std::abs(q_pochhammer_inf(0.0, 0.3) - 1.0) == 0.0);
  CHECK(std::abs(q_pochhammer_inf(1.0, 0.3)) == 0.0);
  CHECK_THROWS_AS(q_pochhammer_inf(0.5, 1.2), Error);
}

TEST_CASE("q-Pochhammer (0.5;0.5) by log-sum oracle") {
  double logsum = 0.0;
  for (int k = 200; k >= 0; --k) logsum += std::log1p(-0.5 * std::pow(0.5, k));
  CHECK(std::abs(q_pochhammer_inf(0.5, 0.5).real() - std::exp(logsum)) < 1e-14);
}

TEST_CASE("q-Pochhammer functional equation") {
  std::mt19937_64 g(7);
  std::uniform_real_distribution<double> U(-2, 2), T(0.05, 0.95);
  for (int i = 0; i < 50; ++i) {
    cplx a(U(g), U(g));
    double tau = T(g);
    cplx lhs = q_pochhammer_inf(a, tau);
    cplx rhs = (1.0 - a) * q_pochhammer_inf(a * tau, tau);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("e_tau") {
  CHECK(std::abs(e_tau(0.0, 0.5) - 1.0) < 1e-15);
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> U(-0.9, 0.9);
  for (int i = 0; i < 20; ++i) {
    cplx z(U(g), U(g));
    CHECK(std::abs(e_tau(z, 0.4) * q_pochhammer_inf(z, 0.4) - 1.0) < 1e-13);
  }
  CHECK(std::abs(e_tau(0.3, 1e-3).real() * (1.0 - 0.3) - 1.0) < 1e-2);
  CHECK_THROWS_AS(e_tau(1.0, 0.5), Error);
  CHECK_THROWS_AS(e_tau(4.0, 0.5), Error);
}

TEST_CASE("gamma_product") {
  CHECK(std::abs(gamma_product(0.5) + M_PI) < 1e-14);
  cplx s(0.5, 1.0);
  cplx direct = gamma_complex(-s) * gamma_complex(1.0 + s);
  CHECK(std::abs(gamma_product(s) - direct) < 1e-10 * std::abs(direct));
  double r = std::abs(gamma_product(cplx(0.3, 6.0))) / std::abs(gamma_product(cplx(0.3, 5.0)));
  CHECK(std::abs(r / std::exp(-M_PI) - 1.0) < 0.01);
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> U(-3, 3);
  for (int i = 0; i < 20; ++i) {
    cplx z(U(g), U(g));
    CHECK(std::abs(gamma_product(std::conj(z)) - std::conj(gamma_product(z))) < 1e-12 * std::abs(gamma_product(z)));
  }
  CHECK_THROWS_AS(gamma_product(2.0), Error);
}

TEST_CASE("complex Gamma reflection and factorials") {
  CHECK(std::abs(gamma_complex(5.0) - 24.0) < 1e-11);
  cplx z(0.3, 0.7);
  cplx refl = gamma_complex(z) * gamma_complex(1.0 - z);
  CHECK(std::abs(refl - M_PI / std::sin(M_PI * z)) < 1e-12);
}

TEST_CASE("Airy closed form at 0") {
  double ai0 = std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0);
  CHECK(std::abs(airy_ai(0.0) - ai0) < 1e-15);
}

TEST_CASE("Airy against Boost on [-10, 10]") {
  double worst = 0.0, worstp = 0.0;
  for (double x = -10.0; x <= 10.0; x += 0.01) {
    AiryValue v = airy(x);
    worst = std::max(worst, std::abs(v.ai - boost::math::airy_ai(x)));
    worstp = std::max(worstp, std::abs(v.aip - boost::math::airy_ai_prime(x)));
  }
  CHECK(worst < 1e-12);
  CHECK(worstp < 1e-11);
}

TEST_CASE("Airy ODE by finite differences") {
  for (double x : {-2.0, 0.0, 2.0}) {
    double h = 1e-3;
    double d2 = (airy_ai(x + h) - 2 * airy_ai(x) + airy_ai(x - h)) / (h * h);
    CHECK(std::abs(d2 - x * airy_ai(x)) < 1e-6);
  }
}

TEST_CASE("Airy(1) against the real integral representation") {
  // Ai(x) = (1/pi) int_0^inf cos(s^3/3 + x s) ds, regularized on a rotated ray.
  // Oracle: Ai(x) = Re (1/pi) int_0^inf exp(i(t^3/3 + x t)) dt with t = r e^{i pi/6}.
  const cplx I(0, 1);
  cplx e = std::exp(I * (M_PI / 6.0));
  std::vector<double> br;
  for (int k = 0; k <= 60; ++k) br.push_back(k * 0.15);
  Rule r = composite_gl(br, 30);
  cplx acc = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    cplx t = r.x[k] * e;
    acc += std::exp(I * (t * t * t / 3.0 + 1.0 * t)) * e * r.w[k];
  }
  CHECK(std::abs(acc.real() / M_PI - airy_ai(1.0)) < 1e-12);
}

TEST_CASE("Airy sign changes on the negative axis match an ODE integration") {
  // Oracle: RK4 on y'' = x y from the closed-form values at 0, stepping left.
  double y = std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0);
  double yp = -std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0);
  const double h = -1e-4;
  double x = 0.0;
  int ode_changes = 0, changes = 0;
  double prev_ode = 0.0, prev = airy_ai(-1.0);
  while (x > -10.0) {
    auto f = [](double xx, double a, double b) { return std::pair<double, double>{b, xx * a}; };
    auto [k1a, k1b] = f(x, y, yp);
    auto [k2a, k2b] = f(x + h / 2, y + h / 2 * k1a, yp + h / 2 * k1b);
    auto [k3a, k3b] = f(x + h / 2, y + h / 2 * k2a, yp + h / 2 * k2b);
    auto [k4a, k4b] = f(x + h, y + h * k3a, yp + h * k3b);
    y += h / 6 * (k1a + 2 * k2a + 2 * k3a + k4a);
    yp += h / 6 * (k1b + 2 * k2b + 2 * k3b + k4b);
    x += h;
    if (x <= -1.0) {
      if (prev_ode != 0.0 && (y > 0) != (prev_ode > 0)) ++ode_changes;
      prev_ode = y;
    }
  }
  for (double xx = -1.001; xx >= -10.0; xx -= 0.001) {
    double v = airy_ai(xx);
    if ((v > 0) != (prev > 0)) ++changes;
    prev = v;
  }
  CHECK(ode_changes == 6);
  CHECK(changes == ode_changes);
  for (double xx = 1.0; xx < 10.0; xx += 0.1) CHECK(airy_ai(xx + 0.1) < airy_ai(xx));
}
