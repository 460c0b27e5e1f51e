#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kpz/asep.hpp"
#include "kpz/errors.hpp"

using namespace kpz;

TEST_CASE("single primal particle: mean drift p - q") {
  AsepState s;
  s.params = ModelParams::from_tau(0.5);
  s.sites = {0};
  const int n = 20000;
  const double t = 2.0;
  Stream st = seed_stream(4, 0);
  double m = 0, v = 0;
  for (int i = 0; i < n; ++i) {
    double x = static_cast<double>(simulate_asep(s, t, st).sites[0]);
    m += x;
    v += x * x;
  }
  m /= n;
  v = v / n - m * m;
  // jumps right at rate p, left at rate q: mean (p-q)t, variance t
  CHECK(std::abs(m - (s.params.p - s.params.q) * t) < 4 * std::sqrt(t / n));
  CHECK(std::abs(v - t) < 0.1);
}

TEST_CASE("exclusion keeps sites strictly increasing") {
  AsepState s;
  s.params = ModelParams::from_tau(0.5);
  s.sites = {0, 1, 2, 3};
  auto out = simulate_asep(s, 5.0, 8);
  for (std::size_t i = 0; i + 1 < out.sites.size(); ++i) CHECK(out.sites[i] < out.sites[i + 1]);
  CHECK(out.time == 5.0);
}

TEST_CASE("invalid states") {
  AsepState s;
  s.params = ModelParams::from_tau(0.5);
  s.sites = {1, 1};
  CHECK_THROWS_AS(s.validate(), Error);
  CHECK_THROWS_AS(lattice_sites(Config::increasing({0.0, 0.15}), 0.1), Error);
  auto l = lattice_sites(Config::increasing({-0.2, 0.3}), 0.1);
  CHECK(l == std::vector<long long>{-2, 3});
}

TEST_CASE("lattice duality, n = m = 1") {
  auto p = ModelParams::from_tau(0.5);
  auto r = asep_duality_check(Config::decreasing({1.0}), Config::increasing({0.0}), 1.0, 1.0, p, 40000, 17);
  CHECK(std::abs(r.lhs.mean - r.rhs.mean) <= 3 * r.combined_stderr);
}

TEST_CASE("lattice duality, n = m = 2") {
  auto p = ModelParams::from_tau(0.5);
  auto r = asep_duality_check(Config::decreasing({2.0, 0.0}), Config::increasing({-1.0, 1.0}), 2.0, 1.0, p, 40000,
                              23);
  CHECK(std::abs(r.lhs.mean - r.rhs.mean) <= 3 * r.combined_stderr);
}
