#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kpz/asymptotics.hpp"
#include "kpz/errors.hpp"

using namespace kpz;

TEST_CASE("LLN profile and counts") {
  const double t = 3.0;
  CHECK(lln_profile(t / 4, t) == doctest::Approx(t));
  CHECK(lln_profile(2 * t, t) == doctest::Approx(3 * t));
  CHECK(lln_counts(1.0, 100.0) == doctest::Approx(25.0));
  // continuous at the branch point a = 2
  CHECK(lln_counts(2.0 - 1e-9, 10.0) == doctest::Approx(lln_counts(2.0 + 1e-9, 10.0)));
}

TEST_CASE("saddle point") {
  auto s = saddle_data(1.0);
  CHECK(s.z_c == doctest::Approx(-0.5));
  CHECK(s.G1_at_zc == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(s.G2_at_zc == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(s.G3_at_zc == doctest::Approx(4.0));
  cplx z(s.z_c, 0.0);
  auto d3 = [&](double h) {
    return (saddle_G(z + 2 * h, 1.0) - 2.0 * saddle_G(z + h, 1.0) + 2.0 * saddle_G(z - h, 1.0) -
            saddle_G(z - 2 * h, 1.0)) /
           (2 * h * h * h);
  };
  cplx fd = (4.0 * d3(1e-2) - d3(2e-2)) / 3.0;
  CHECK(std::abs(fd.real() - 4.0) / 4.0 < 1e-5);
  cplx fd2 = (saddle_d2G(z + 1e-5, 1.0) - saddle_d2G(z - 1e-5, 1.0)) / 2e-5;
  CHECK(std::abs(fd2 - saddle_d3G(z, 1.0)) / 4.0 < 1e-5);
}

TEST_CASE("rescaling") {
  auto r = rescale_fluctuations({25.0, 25.0 + std::cbrt(100.0)}, 1.0, 100.0);
  CHECK(r[0] == doctest::Approx(0.0));
  CHECK(r[1] == doctest::Approx(-std::pow(0.5, -2.0 / 3.0)));
}

TEST_CASE("KPZ constants") {
  auto c = kpz_constants_wedge(1.0, 1.0, MacroProfile::point_interaction(), 1.0);
  CHECK(c.A == doctest::Approx(1.0));
  CHECK(c.lambda == doctest::Approx(2.0));
  CHECK(c.scale(27.0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(kpz_constants_wedge(1.0, 1.0, MacroProfile::gaussian_chain(), 1.0), Error);
  auto tab = MacroProfile::from_function("tab", [](double l) { return 1.0 / l; });
  for (double l : {0.7, 1.0, 1.6}) {
    auto a = kpz_constants_flat(l, 0.3, 1.0, MacroProfile::point_interaction());
    auto b = kpz_constants_flat(l, 0.3, 1.0, tab);
    CHECK(b.A == doctest::Approx(a.A).epsilon(1e-6));
    CHECK(b.lambda == doctest::Approx(a.lambda).epsilon(1e-6));
  }
}

TEST_CASE("wedge profile: optimizer against a dense grid") {
  auto P = MacroProfile::point_interaction();
  for (double y : {-1.0, 1.0}) {
    double hi = -1e300, lo = 1e300;
    for (int k = 0; k <= 1500000; ++k) {
      double l = 0.5 + 1.5 * k / 1500000.0;
      hi = std::max(hi, l * y + 1.0 / l);
      lo = std::min(lo, l * y + 1.0 / l);
    }
    CHECK(std::abs(kpz_profile_wedge(y, 0.5, 2.0, 1.0, P, true) - hi) < 1e-8);
    CHECK(std::abs(kpz_profile_wedge(y, 0.5, 2.0, 1.0, P, false) - lo) < 1e-8);
  }
  // y = 1: interior minimum at l = 1
  CHECK(kpz_profile_wedge(1.0, 0.5, 2.0, 1.0, P, false) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("small scaling run") {
  SimSpec s;
  s.params = ModelParams::from_tau(0.5);
  s.dt = 0.05;
  s.n_paths = 20;
  s.seed = 2;
  s.scheme = Scheme::oblique_bridge;
  auto r = scaling_experiment(1.0, 10.0, 60, s);
  CHECK(r.counts.size() == 20);
  CHECK(r.sde_time == doctest::Approx(30.0));
  CHECK(r.lln == doctest::Approx(2.5));
  for (double c : r.counts) CHECK(std::abs(c - r.lln) <= 5 * std::cbrt(10.0));
}
