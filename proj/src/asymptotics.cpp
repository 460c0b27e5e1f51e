#include "kpz/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "kpz/errors.hpp"
#include "kpz/fredholm.hpp"
#include "kpz/parallel.hpp"
#include "kpz/rng.hpp"
#include "kpz/stats.hpp"

namespace kpz {

MacroProfile MacroProfile::point_interaction() {
  return {"1/l", [](double l) { return 1.0 / l; }, [](double l) { return -1.0 / (l * l); },
          [](double l) { return 2.0 / (l * l * l); }};
}

MacroProfile MacroProfile::gaussian_chain() {
  return {"l", [](double l) { return l; }, [](double) { return 1.0; }, [](double) { return 0.0; }};
}

MacroProfile MacroProfile::from_function(std::string name, std::function<double(double)> P, double h) {
  if (!(h > 0.0)) fail(ErrorClass::invalid_input, "difference step must be positive");
  MacroProfile m;
  m.name = std::move(name);
  m.P = P;
  // fourth-order central differences
  m.dP = [P, h](double l) { return (P(l - 2 * h) - 8 * P(l - h) + 8 * P(l + h) - P(l + 2 * h)) / (12 * h); };
  m.d2P = [P, h](double l) {
    return (-P(l - 2 * h) + 16 * P(l - h) - 30 * P(l) + 16 * P(l + h) - P(l + 2 * h)) / (12 * h * h);
  };
  return m;
}

double lln_profile(double u, double t) {
  if (!(u >= 0.0) || !(t > 0.0)) fail(ErrorClass::invalid_input, "lln_profile needs u >= 0, t > 0");
  return u <= t ? 2.0 * std::sqrt(u * t) : u + t;
}

double lln_counts(double a, double t) {
  if (!(a > 0.0) || !(t > 0.0)) fail(ErrorClass::invalid_input, "lln_counts needs a > 0, t > 0");
  return a <= 2.0 ? 0.25 * a * a * t : (a - 1.0) * t;
}

cplx saddle_G(cplx z, double a) { return -0.5 * z * z - a * z - 0.25 * a * a * std::log(z); }
cplx saddle_dG(cplx z, double a) { return -(z + 0.5 * a) * (z + 0.5 * a) / z; }
cplx saddle_d2G(cplx z, double a) { return -1.0 + 0.25 * a * a / (z * z); }
cplx saddle_d3G(cplx z, double a) { return -0.5 * a * a / (z * z * z); }

SaddleData saddle_data(double a) {
  if (!(a > 0.0)) fail(ErrorClass::invalid_input, "saddle_data needs a > 0");
  SaddleData s;
  s.a = a;
  s.z_c = -0.5 * a;
  cplx z(s.z_c, 0.0);
  s.G_at_zc = saddle_G(z, a);
  s.G1_at_zc = saddle_dG(z, a).real();
  s.G2_at_zc = saddle_d2G(z, a).real();
  s.G3_at_zc = saddle_d3G(z, a).real();
  return s;
}

std::vector<double> rescale_fluctuations(const std::vector<double>& counts, double a, double t) {
  if (!(a > 0.0) || !(t > 0.0)) fail(ErrorClass::invalid_input, "rescale needs a > 0, t > 0");
  const double f = std::pow(0.5 * a, -2.0 / 3.0) * std::cbrt(1.0 / t);
  const double mean = 0.25 * a * a * t;
  std::vector<double> r(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) r[i] = -f * (counts[i] - mean);
  return r;
}

double KpzConstants::scale(double t) const { return std::cbrt(scale_coeff * t); }

namespace {

void require_curved(double lambda) {
  if (lambda == 0.0 || !std::isfinite(lambda))
    fail(ErrorClass::domain, "degenerate scale: lambda = gamma P''(l) vanishes");
}

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

KpzConstants kpz_constants_wedge(double ell0, double gamma, const MacroProfile& profile, double phi_second_sign) {
  KpzConstants k;
  k.A = -profile.dP(ell0);
  k.lambda = gamma * profile.d2P(ell0);
  require_curved(k.lambda);
  if (!(k.A > 0.0)) fail(ErrorClass::domain, "A = -P'(l0) must be positive");
  k.sign = -sgn(phi_second_sign);
  k.scale_coeff = 0.5 * std::abs(k.lambda) * k.A * k.A;
  return k;
}

KpzConstants kpz_constants_flat(double ell, double u, double gamma, const MacroProfile& profile) {
  KpzConstants k;
  k.A = -profile.dP(ell);
  k.lambda = gamma * profile.d2P(ell);
  require_curved(k.lambda);
  k.sign = -sgn(k.lambda);
  k.scale_coeff = std::abs(k.lambda) * k.A * k.A;
  k.linear = u * ell + gamma * profile.P(ell);
  return k;
}

KpzConstants kpz_constants_stationary(double ell, double gamma, const MacroProfile& profile) {
  KpzConstants k;
  k.A = -profile.dP(ell);
  k.lambda = gamma * profile.d2P(ell);
  require_curved(k.lambda);
  k.sign = -sgn(k.lambda);
  k.scale_coeff = 0.5 * std::abs(k.lambda) * k.A * k.A;
  k.linear = (-ell * profile.dP(ell) + profile.P(ell)) * gamma;
  k.index_rate = -gamma * profile.dP(ell);
  return k;
}

double kpz_profile_wedge(double y, double ell_minus, double ell_plus, double gamma, const MacroProfile& profile,
                         bool sup) {
  if (!(ell_minus < ell_plus)) fail(ErrorClass::invalid_input, "need l_minus < l_plus");
  const double s = sup ? 1.0 : -1.0;
  auto obj = [&](double l) { return s * (l * y + gamma * profile.P(l)); };
  // coarse scan, then golden section around the best grid point
  const int n = 400;
  int best = 0;
  double fbest = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    double f = obj(ell_minus + (ell_plus - ell_minus) * i / n);
    if (f > fbest) fbest = f, best = i;
  }
  double lo = ell_minus + (ell_plus - ell_minus) * std::max(best - 1, 0) / n;
  double hi = ell_minus + (ell_plus - ell_minus) * std::min(best + 1, n) / n;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
  double fc = obj(c), fd = obj(d);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::abs(hi)); ++it) {
    if (fc > fd) {
      hi = d, d = c, fd = fc;
      c = hi - g * (hi - lo), fc = obj(c);
    } else {
      lo = c, c = d, fc = fd;
      d = lo + g * (hi - lo), fd = obj(d);
    }
  }
  double v = std::max({fbest, fc, fd, obj(ell_minus), obj(ell_plus)});
  return s * v;
}

ScalingRun scaling_experiment(double a, double t, std::size_t n_particles, const SimSpec& sim, bool compare_gue) {
  if (!(a > 0.0) || !(t > 0.0)) fail(ErrorClass::invalid_input, "scaling needs a > 0, t > 0");
  if (n_particles == 0) fail(ErrorClass::invalid_input, "need at least one particle");
  sim.params.require_analytic();
  ScalingRun run;
  run.a = a;
  run.t = t;
  run.sde_time = t / sim.params.gamma;
  SimSpec spec = sim;
  spec.t_end = run.sde_time;
  spec.validate();
  run.echo = spec.echo() + " a=" + std::to_string(a) + " t=" + std::to_string(t) +
             " particles=" + std::to_string(n_particles);
  const double u = a * t;
  const std::uint64_t ini = spec.seed ^ 0x3c6ef372fe94f82bULL;
  run.counts.assign(spec.n_paths, 0.0);
  parallel_for(spec.n_paths, [&](std::size_t i) {
    Stream init = seed_stream(ini, i);
    std::vector<double> y(n_particles);
    double x = 0.0;
    for (auto& v : y) v = (x += init.exponential(1.0));
    Stream noise = path_noise_stream(spec.seed, i), aux = path_aux_stream(spec.seed, i);
    evolve_path(spec, y, noise, aux);
    run.counts[i] = static_cast<double>(count_left(u, y.data(), y.size()));
  });
  double m = 0.0;
  for (double c : run.counts) m += c;
  run.mean_count = m / static_cast<double>(run.counts.size());
  run.lln = lln_counts(a, t);
  run.r = rescale_fluctuations(run.counts, a, t);
  if (compare_gue) {
    run.ks = ks_distance(run.r, tw_gue_cdf);
    // the empirical CDF of r only jumps on the lattice r(N); compare there
    std::map<double, std::size_t> freq;
    for (double v : run.r) ++freq[v];
    double acc = 0.0, worst = 0.0;
    const double n = static_cast<double>(run.r.size());
    for (const auto& [v, c] : freq) {
      acc += static_cast<double>(c);
      worst = std::max(worst, std::abs(acc / n - tw_gue_cdf(v)));
    }
    run.ks_lattice = worst;
  }
  return run;
}

}  // namespace kpz
