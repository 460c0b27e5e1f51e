#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kpz/core.hpp"
#include "kpz/errors.hpp"
#include "kpz/rng.hpp"
#include "kpz/stats.hpp"

using namespace kpz;

TEST_CASE("ModelParams") {
  auto m = ModelParams::from_tau(0.5);
  CHECK(m.p == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(m.q == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(m.gamma == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(m.swapped().p == doctest::Approx(m.q));
  CHECK_THROWS_AS(ModelParams::from_p(1.5), Error);
  CHECK_THROWS_AS(ModelParams::from_p(0.5).require_analytic(), Error);
}

TEST_CASE("Config sorts and tags") {
  Config a({3.0, -1.0, 2.0}, Chamber::increasing);
  CHECK(a[0] == -1.0);
  CHECK(a[2] == 3.0);
  Config b({3.0, -1.0, 2.0}, Chamber::decreasing);
  CHECK(b[0] == 3.0);
  CHECK_THROWS_AS(b.require(Chamber::increasing, "test"), Error);
}

TEST_CASE("f_n_initial closed forms") {
  auto m = ModelParams::from_tau(0.5);
  CHECK(f_n_initial(Config::decreasing({2.0}), m) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(f_n_initial(Config::decreasing({2.0, 1.0}), m) == doctest::Approx(std::exp(-1.25)).epsilon(1e-14));
  // negative coordinates contribute nothing: sector l = 0
  CHECK(f_n_initial(Config::decreasing({-0.5, -2.0}), m) == doctest::Approx(1.0));
}

TEST_CASE("f_n_initial continuous across sector boundaries") {
  auto m = ModelParams::from_tau(0.3);
  for (double h : {1e-13, 1e-14}) {
    double lo = f_n_initial(Config::decreasing({1.2, -h, -0.7}), m);
    double hi = f_n_initial(Config::decreasing({1.2, h, -0.7}), m);
    CHECK(std::abs(lo - hi) <= 1e-12);
  }
}

TEST_CASE("duality H and counting") {
  auto m = ModelParams::from_tau(0.5);
  Config x = Config::decreasing({1.0, 0.0});
  Config y = Config::increasing({-0.5, 0.5, 2.0});
  // pairs with x_j > y_i: (1,-0.5) (1,0.5) (0,-0.5)
  CHECK(duality_H(x, y, m) == doctest::Approx(0.125));
  CHECK(count_left(0.5, y) == 2);
  CHECK(count_left(-1.0, y) == 0);
}

TEST_CASE("streams are reproducible and serializable") {
  Stream a = seed_stream(42, 7), b = seed_stream(42, 7);
  for (int i = 0; i < 1000; ++i) CHECK(a.normal() == b.normal());
  std::string st = a.serialize();
  Stream c = Stream::deserialize(st);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == c.uniform());
}

TEST_CASE("streams for different indices look independent") {
  Stream a = seed_stream(1, 0), b = seed_stream(1, 1);
  std::vector<double> xa(10000), xb(10000);
  for (auto& v : xa) v = a.uniform();
  for (auto& v : xb) v = b.uniform();
  double d = ks_two_sample(xa, xb);
  CHECK(ks_pvalue(d, xa.size(), xb.size()) > 1e-3);
  double corr = 0.0;
  for (std::size_t i = 0; i < xa.size(); ++i) corr += (xa[i] - 0.5) * (xb[i] - 0.5);
  CHECK(std::abs(corr / xa.size() * 12.0) < 0.05);
}

TEST_CASE("ks_distance against uniform") {
  std::vector<double> s = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  double d = ks_distance(s, [](double x) { return std::clamp(x, 0.0, 1.0); });
  CHECK(d == doctest::Approx(0.1));
}

TEST_CASE("Tabulated spline reproduces a smooth function") {
  Tabulated f([](double x) { return std::sin(x); }, 0.0, 3.0, 301);
  for (double x = 0.05; x < 3.0; x += 0.137) CHECK(std::abs(f(x) - std::sin(x)) < 1e-8);
}
