#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kpz/bethe.hpp"
#include "kpz/errors.hpp"

using namespace kpz;

TEST_CASE("scattering factor") {
  cplx za(1, 1), zb(2, 0);
  double tau = 0.5;
  // -(0.5(1+i) - 2) / (0.5*2 - (1+i)) = -(-1.5 + 0.5i)/(-i) = 0.5 + 1.5i
  cplx s = scattering_S(za, zb, tau);
  CHECK(std::abs(s - cplx(0.5, 1.5)) < 1e-14);
  CHECK(std::abs(scattering_S(cplx(0.3, 2), cplx(-1, 0.5), 1.0) - 1.0) < 1e-14);
}

TEST_CASE("amplitude of the swap") {
  std::vector<cplx> z = {cplx(0.4, 1.0), cplx(0.7, -0.3)};
  double tau = 0.5;
  Permutation id({0, 1}), sw({1, 0});
  CHECK(std::abs(amplitude_A(id, z, tau) - 1.0) < 1e-14);
  cplx expect = -(tau * z[1] - z[0]) / (tau * z[0] - z[1]);
  CHECK(std::abs(amplitude_A(sw, z, tau) - expect) < 1e-14);
  CHECK(Permutation::all(3).size() == 6);
}

TEST_CASE("tau = 1: Q equals the permanent") {
  auto m = ModelParams::from_p(0.5);
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int n : {2, 3}) {
    for (int rep = 0; rep < 2; ++rep) {
      std::vector<double> y(n), x(n);
      for (auto& v : y) v = U(g);
      for (auto& v : x) v = U(g);
      auto Y = Config::increasing(y), X = Config::increasing(x);
      double q = transition_density_Q(Y, X, 0.5, m).value;
      double ref = transition_permanent_tau1(Y, X, 0.5);
      CHECK(std::abs(q - ref) <= 1e-8 * std::abs(ref));
    }
  }
}

TEST_CASE("permanent against a brute-force sum, N = 3") {
  auto Y = Config::increasing({-0.3, 0.1, 0.8}), X = Config::increasing({-0.5, 0.4, 0.6});
  std::vector<int> s = {0, 1, 2};
  double sum = 0.0;
  do {
    double prod = 1.0;
    for (int i = 0; i < 3; ++i) prod *= gaussian_kernel(X[i] - Y[s[i]], 0.7);
    sum += prod;
  } while (std::next_permutation(s.begin(), s.end()));
  CHECK(transition_permanent_tau1(Y, X, 0.7) == doctest::Approx(sum).epsilon(1e-14));
}

TEST_CASE("q = 1: Q equals the determinant formula") {
  auto m = ModelParams::from_p(0.0);
  auto Y = Config::increasing({0.0, 1.0}), X = Config::increasing({0.2, 1.3});
  double q = transition_density_Q(Y, X, 0.5, m).value;
  auto c = VerticalContour::design(1.0, 0.5, 1.3, 1.0);
  double d = transition_det_q1(Y, X, 0.5, c).value;
  CHECK(std::abs(q - d) <= 1e-8 * std::abs(d));
}

TEST_CASE("contour abscissa independence") {
  auto m = ModelParams::from_tau(0.5);
  auto Y = Config::increasing({0.0, 0.5}), X = Config::increasing({0.1, 0.9});
  double a1 = transition_density_Q(Y, X, 0.5, m, VerticalContour::design(0.3, 0.5, 0.9, bethe_pole_distance(0.3, 0.5)))
                  .value;
  double a2 = transition_density_Q(Y, X, 0.5, m, VerticalContour::design(1.0, 0.5, 0.9, bethe_pole_distance(1.0, 0.5)))
                  .value;
  CHECK(std::abs(a1 - a2) <= 1e-8 * std::abs(a1));
}

TEST_CASE("positivity and normalization, N = 2") {
  auto m = ModelParams::from_tau(0.5);
  auto Y = Config::increasing({0.0, 0.4});
  for (double x1 = -1.5; x1 <= 1.5; x1 += 0.5)
    for (double x2 = x1; x2 <= 2.0; x2 += 0.5) CHECK(transition_density_Q(Y, Config::increasing({x1, x2}), 0.5, m).value > -1e-10);
  CHECK(std::abs(normalization_Q(Y, 0.5, m) - 1.0) <= 1e-3);
}

TEST_CASE("g_N tends to 1 and is monotone") {
  auto m = ModelParams::from_tau(0.5);
  auto Y = Config::increasing({0.0, 0.5});
  double t = 0.5;
  double g = cdf_gN(0.5 + 8 * std::sqrt(t), Y, t, m).value;
  CHECK(g >= 1 - 1e-3);
  CHECK(g <= 1 + 1e-9);
  double prev = -1.0;
  for (double u = -1.0; u <= 3.0; u += 0.25) {
    double v = cdf_gN(u, Y, t, m).value;
    CHECK(v >= prev - 1e-10);
    prev = v;
  }
}
