#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kpz/duality.hpp"
#include "kpz/errors.hpp"

using namespace kpz;

TEST_CASE("nested contours") {
  const double tau = 0.5;
  for (int n = 1; n <= 4; ++n) {
    auto c = NestedContours::equal_gap(n, tau);
    c.validate(tau);
    CHECK(c.clearance(tau) > 0.0);
    NestedContours::geometric(n, tau).validate(tau);
  }
  NestedContours bad{{-0.1, -0.3}};
  CHECK_THROWS_AS(bad.validate(tau), Error);
}

TEST_CASE("t -> 0 reproduces f_n_initial in every sector, n = 2") {
  auto m = ModelParams::from_tau(0.5);
  for (auto x : {std::vector<double>{-0.3, -0.8}, {0.6, -0.4}, {0.9, 0.3}}) {
    auto X = Config::decreasing(x);
    double v = f_n_contour(X, 1e-6, m).value;
    double ref = f_n_initial(X, m);
    CHECK(std::abs(v - ref) <= 1e-6 * ref);
  }
}

TEST_CASE("abscissa invariance") {
  auto m = ModelParams::from_tau(0.5);
  auto X = Config::decreasing({0.7, -0.2});
  double a = f_n_contour(X, 1.0, m, NestedContours::equal_gap(2, 0.5)).value;
  double b = f_n_contour(X, 1.0, m, NestedContours::geometric(2, 0.5)).value;
  CHECK(std::abs(a - b) <= 1e-8 * std::abs(a));
}

TEST_CASE("boundary condition at x1 = x2") {
  auto m = ModelParams::from_tau(0.5);
  const double tau = 0.5, h = 1e-3, c = 0.4, t = 0.5;
  auto F = [&](double x1, double x2) {
    ContourOptions o;
    o.shape = ContourOptions::Shape::vertical;
    return f_n_contour(Config::decreasing({x1, x2}), t, m, NestedContours::equal_gap(2, tau), o).value;
  };
  // one-sided second-order stencils that stay inside x1 >= x2
  double f0 = F(c, c);
  double d1 = (-3 * f0 + 4 * F(c + h, c) - F(c + 2 * h, c)) / (2 * h);
  double d2 = (3 * f0 - 4 * F(c, c - h) + F(c, c - 2 * h)) / (2 * h);
  CHECK(std::abs(d2 - tau * d1) <= 1e-4 * std::abs(d1));
}

TEST_CASE("moments") {
  auto m = ModelParams::from_tau(0.5);
  CHECK(moment_tau_n(1.0, 1.0, 0, m) == 1.0);
  double m1 = moment_tau_n(1.0, 1.0, 1, m), m2 = moment_tau_n(1.0, 1.0, 2, m);
  CHECK(m1 > m2);
  CHECK(m2 > m1 * m1 - 1e-12);  // Jensen for tau^N
  CHECK_THROWS_AS(f_n_contour(Config::decreasing({0.5, 0.4, 0.3, 0.2, 0.1}), 1.0, m), Error);
}

TEST_CASE("n = 1 against both Monte Carlo estimators") {
  auto m = ModelParams::from_tau(0.5);
  auto X = Config::decreasing({1.0});
  SimSpec s;
  s.dt = 5e-3;
  s.n_paths = 20000;
  s.seed = 31;
  s.scheme = Scheme::oblique_bridge;
  auto mc = mc_generating_moment(X, 0.5, m, default_poisson_L(X, 0.5), s);
  double v = f_n_contour(X, 0.5, m).value;
  CHECK(std::abs(mc.e1.mean - mc.e2.mean) <= 3 * mc.combined_stderr);
  CHECK(std::abs(v - mc.e1.mean) <= 3 * mc.e1.stderr_);
  CHECK(std::abs(v - mc.e2.mean) <= 3 * mc.e2.stderr_);
}

TEST_CASE("poisson configuration is sorted and inside the window") {
  Stream s = seed_stream(2, 0);
  auto c = poisson_configuration(10.0, s);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(c[i] >= 0.0);
    CHECK(c[i] <= 10.0);
    if (i) CHECK(c[i - 1] <= c[i]);
  }
}
