#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kpz/errors.hpp"
#include "kpz/sde.hpp"
#include "kpz/stats.hpp"

using namespace kpz;

namespace {
double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
}

TEST_CASE("scheme names") {
  CHECK(scheme_from_name("projection") == Scheme::oblique_projection);
  CHECK(scheme_from_name("oblique-bridge") == Scheme::oblique_bridge);
  CHECK(std::string(scheme_name(Scheme::potential)) == "potential");
  CHECK_THROWS_AS(scheme_from_name("euler"), Error);
}

TEST_CASE("reference potential") {
  CHECK(potential_V(0.5) == doctest::Approx(0.25));
  CHECK(potential_V(1.5) == 0.0);
  CHECK(potential_V(-0.5) == potential_V(0.5));
  const double h = 1e-6;
  for (double u : {0.2, 0.5, -0.7})
    CHECK(potential_dV(u) == doctest::Approx((potential_V(u + h) - potential_V(u - h)) / (2 * h)).epsilon(1e-6));
  CHECK_THROWS_AS(potential_V(0.0), Error);
}

TEST_CASE("q = 1: the first particle is a free Brownian motion") {
  SimSpec s;
  s.params = ModelParams::from_p(0.0);
  s.dt = 1e-3;
  s.t_end = 0.5;
  s.n_paths = 20000;
  s.seed = 3;
  auto out = simulate_oblique(s, Config::increasing({0.0, 0.3}));
  std::vector<double> y1;
  for (auto& c : out) y1.push_back(c[0]);
  double m = 0, v = 0;
  for (double x : y1) m += x;
  m /= y1.size();
  for (double x : y1) v += (x - m) * (x - m);
  v /= y1.size() - 1;
  CHECK(std::abs(m) < 4 * std::sqrt(0.5 / y1.size()));
  CHECK(std::abs(v - 0.5) < 4 * 0.5 * std::sqrt(2.0 / y1.size()));
}

TEST_CASE("q = 1/2: sorted independent Brownian motions") {
  for (Scheme sc : {Scheme::oblique_projection, Scheme::oblique_bridge}) {
    SimSpec s;
    s.params = ModelParams::from_p(0.5);
    s.dt = 1e-3;
    s.t_end = 0.5;
    s.n_paths = 20000;
    s.seed = 5;
    s.scheme = sc;
    const double a = 0.0, b = 0.2, sd = std::sqrt(0.5);
    auto out = simulate_oblique(s, Config::increasing({a, b}));
    std::vector<double> mn, mx;
    for (auto& c : out) {
      mn.push_back(c[0]);
      mx.push_back(c[1]);
    }
    auto Fa = [&](double x) { return norm_cdf((x - a) / sd); };
    auto Fb = [&](double x) { return norm_cdf((x - b) / sd); };
    double dmax = ks_distance(mx, [&](double x) { return Fa(x) * Fb(x); });
    double dmin = ks_distance(mn, [&](double x) { return 1 - (1 - Fa(x)) * (1 - Fb(x)); });
    CHECK(dmax < 0.015);
    CHECK(dmin < 0.015);
  }
}

TEST_CASE("dual mirrors the primal") {
  SimSpec s;
  s.params = ModelParams::from_tau(0.5);
  s.dt = 1e-3;
  s.t_end = 0.3;
  s.n_paths = 50;
  s.seed = 9;
  auto d = simulate_dual(s, Config::decreasing({0.4, -0.1}));
  for (auto& c : d) {
    CHECK(c.chamber() == Chamber::decreasing);
    CHECK(c[0] >= c[1]);
  }
  CHECK_THROWS_AS(simulate_dual(s, Config::increasing({0.0, 1.0})), Error);
}

TEST_CASE("batches are reproducible") {
  SimSpec s;
  s.params = ModelParams::from_tau(0.5);
  s.dt = 1e-3;
  s.t_end = 0.2;
  s.n_paths = 64;
  s.seed = 11;
  auto a = simulate_oblique(s, Config::increasing({0.0, 0.1, 0.2}));
  auto b = simulate_oblique(s, Config::increasing({0.0, 0.1, 0.2}));
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].positions() == b[i].positions());
}

TEST_CASE("potential scheme guards and refinement") {
  SimSpec s;
  s.params = ModelParams::from_tau(0.5);
  s.scheme = Scheme::potential;
  s.potential.epsilon = 0.05;
  s.dt = 1e-3;
  CHECK_THROWS_AS(s.validate(), Error);
  s.dt = 2.5e-4;
  s.t_end = 0.25;
  s.n_paths = 500;
  auto out = simulate_potential(s, Config::increasing({-0.3, 0.0, 0.3}));
  for (auto& c : out) {
    CHECK(c[1] > c[0]);
    CHECK(c[2] > c[1]);
  }
}

TEST_CASE("q = 1, m = 2: potential gap law close to the oblique one") {
  SimSpec ref;
  ref.params = ModelParams::from_p(0.0);
  ref.dt = 2.5e-4;
  ref.t_end = 1.0;
  ref.n_paths = 20000;
  ref.seed = 21;
  ref.scheme = Scheme::oblique_bridge;
  SimSpec pot = ref;
  pot.scheme = Scheme::potential;
  pot.potential.epsilon = 0.05;
  auto y0 = Config::increasing({0.0, 0.2});
  auto a = simulate_oblique(ref, y0);
  auto b = simulate_potential(pot, y0);
  std::vector<double> ga, gb;
  for (auto& c : a) ga.push_back(c[1] - c[0]);
  for (auto& c : b) gb.push_back(c[1] - c[0]);
  // same seed and grid: both runs see the same increments
  CHECK(ks_two_sample(ga, gb) < 0.02);
}

TEST_CASE("potential coupling shrinks with epsilon") {
  SimSpec s;
  s.params = ModelParams::from_tau(0.5);
  s.dt = 2.5e-4;
  s.t_end = 0.25;
  s.n_paths = 1000;
  s.seed = 1;
  s.scheme = Scheme::oblique_bridge;
  auto r = potential_coupling(s, Config::increasing({-0.3, 0.0, 0.3}), {0.2, 0.1, 0.05});
  CHECK(r.msd[0].mean > r.msd[1].mean);
  CHECK(r.msd[1].mean > r.msd[2].mean);
}
