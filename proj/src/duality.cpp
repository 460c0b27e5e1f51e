#include "kpz/duality.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>

#include "kpz/errors.hpp"
#include "kpz/parallel.hpp"
#include "kpz/quadrature.hpp"
#include "kpz/rng.hpp"
#include "kpz/specfun.hpp"

namespace kpz {

NestedContours NestedContours::equal_gap(int n, double tau) {
  if (n < 1) fail(ErrorClass::invalid_input, "contour count must be positive");
  if (!(tau > 0.0 && tau < 1.0)) fail(ErrorClass::domain, "nested contours need 0 < tau < 1");
  // c_n = 1, c_j = (c_{j+1} + 1) / tau, a_j = -d c_j
  std::vector<double> c(n);
  c[n - 1] = 1.0;
  for (int j = n - 2; j >= 0; --j) c[j] = (c[j + 1] + 1.0) / tau;
  double d = (1.0 - tau) / (1.0 + c[0]);
  NestedContours nc;
  for (int j = 0; j < n; ++j) nc.a.push_back(-d * c[j]);
  return nc;
}

NestedContours NestedContours::geometric(int n, double tau) {
  if (n < 1) fail(ErrorClass::invalid_input, "contour count must be positive");
  if (!(tau > 0.0 && tau < 1.0)) fail(ErrorClass::domain, "nested contours need 0 < tau < 1");
  NestedContours nc;
  for (int j = 1; j <= n; ++j) nc.a.push_back(-(1.0 - tau) * std::pow(tau / 2.0, j));
  return nc;
}

double NestedContours::clearance(double tau) const {
  if (a.empty()) return 0.0;
  double d = std::min(a.front() + (1.0 - tau), -a.back());
  for (std::size_t j = 0; j + 1 < a.size(); ++j) d = std::min(d, a[j + 1] - a[j]);
  for (std::size_t A = 0; A < a.size(); ++A)
    for (std::size_t B = A + 1; B < a.size(); ++B) d = std::min(d, a[B] - tau * a[A]);
  return d;
}

void NestedContours::validate(double tau) const {
  if (a.empty()) fail(ErrorClass::contour, "no contours");
  double d = clearance(tau);
  if (!(d > 0.0))
    fail(ErrorClass::contour, "contours violate -(1-tau) < a_1 < ... < a_n < 0, tau a_j < a_{j+1}");
}

namespace {

struct Line {
  double a;
  double kappa;  // 0 for vertical; negative bends left
  double beta;
  double xj;
  double phi_max;
  double hmax;
  cplx z(double phi) const {
    return {a + kappa * (std::sqrt(phi * phi + beta * beta) - beta), phi};
  }
  cplx dz(double phi) const {
    double r = std::sqrt(phi * phi + beta * beta);
    return {kappa == 0.0 ? 0.0 : kappa * phi / r, 1.0};
  }
};

struct Integrator {
  std::vector<Line> lines;
  double tau, t, cross_gap, ratio;
  int m;
  std::size_t max_nodes = 0;
  std::vector<cplx> zs;
  std::vector<double> phis;

  cplx single(std::size_t j, cplx z) const {
    return (tau - 1.0) / (z * (z + 1.0 - tau)) * std::exp(lines[j].xj * z + 0.5 * t * z * z);
  }

  double zero_gap(std::size_t j) const {
    const Line& L = lines[j];
    double d = std::min(-L.a, L.a + 1.0 - tau);
    if (L.kappa != 0.0) d = std::min(d, L.beta);
    return d;
  }

  Rule rule_for(std::size_t j) const {
    const Line& L = lines[j];
    std::vector<NearSingularity> sing{{0.0, zero_gap(j)}};
    for (std::size_t A = 0; A < j; ++A) {
      sing.push_back({tau * phis[A], cross_gap});
      // inner integrals feel z_A through their own cross poles
      if (j + 1 < lines.size()) sing.push_back({phis[A], cross_gap});
    }
    // variable 1 only over phi >= 0; the rest of the integral is the conjugate
    double lo = (j == 0) ? 0.0 : -L.phi_max;
    return graded_rule(lo, L.phi_max, sing, L.hmax, m, ratio);
  }

  cplx term(std::size_t j, double phi, double w) {
    const Line& L = lines[j];
    const cplx inv2pii = 1.0 / cplx(0.0, 2.0 * M_PI);
    cplx z = L.z(phi);
    cplx f = single(j, z) * L.dz(phi) * (w * inv2pii);
    for (std::size_t A = 0; A < j; ++A) f *= (z - zs[A]) / (z - tau * zs[A]);
    if (j + 1 < lines.size()) {
      zs[j] = z;
      phis[j] = phi;
      f *= level(j + 1);
    }
    return f;
  }

  cplx level(std::size_t j) {
    Rule r = rule_for(j);
    max_nodes = std::max(max_nodes, r.size());
    cplx acc = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) acc += term(j, r.x[k], r.w[k]);
    return acc;
  }

  // Outer variable spread over workers; summed in node order.
  cplx run() {
    Rule r = rule_for(0);
    std::vector<cplx> parts(r.size());
    std::vector<std::size_t> widest(r.size());
    parallel_for(r.size(), [&](std::size_t k) {
      Integrator local = *this;
      parts[k] = local.term(0, r.x[k], r.w[k]);
      widest[k] = local.max_nodes;
    });
    max_nodes = r.size();
    cplx acc = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) {
      acc += parts[k];
      max_nodes = std::max(max_nodes, widest[k]);
    }
    return acc;
  }
};

// Half-width where the integrand magnitude has decayed by e^{-L}.
double vertical_range(double t, double L) { return std::sqrt(2.0 * L / t) + 1.0; }

double bent_range(double t, double x, double c, double beta, double L) {
  double b = c * std::abs(x), qa = 0.5 * t * (1.0 - c * c);
  double phi = (qa > 1e-300) ? (-b + std::sqrt(b * b + 4.0 * qa * L)) / (2.0 * qa) : L / b;
  return phi + beta + 2.0;
}

}  // namespace

QuadResult f_n_contour(const Config& x, double t, const ModelParams& params, const NestedContours& contours,
                       const ContourOptions& opt) {
  x.require(Chamber::decreasing, "f_n_contour");
  params.require_analytic();
  const std::size_t n = x.size();
  if (n == 0) return {1.0, 0.0, 0};
  if (n > 4) fail(ErrorClass::capacity, "f_n_contour supports n <= 4");
  if (contours.a.size() != n) fail(ErrorClass::contour, "need one abscissa per particle");
  if (!(t >= 0.0) || !std::isfinite(t)) fail(ErrorClass::invalid_input, "t must be finite and >= 0");
  if (!(opt.tol > 0.0) || opt.gl_order < 2) fail(ErrorClass::invalid_input, "bad quadrature options");
  const double tau = params.tau;
  contours.validate(tau);
  const double d = contours.clearance(tau);
  const double L = std::log(1.0 / opt.tol) + 3.0;

  bool bent;
  switch (opt.shape) {
    case ContourOptions::Shape::vertical: bent = false; break;
    case ContourOptions::Shape::bent: bent = true; break;
    default: bent = (t <= 0.0) || vertical_range(t, L) > 40.0;
  }
  if (!bent && t <= 0.0) fail(ErrorClass::contour, "vertical contours need t > 0");

  Integrator in;
  in.tau = tau;
  in.t = t;
  in.m = opt.gl_order;
  in.ratio = opt.grading;
  in.cross_gap = bent ? 0.7 * d : d;
  double beta = d;
  for (std::size_t j = 0; j < n; ++j) {
    Line ln{contours.a[j], 0.0, beta, x[j], 0.0, 0.0};
    if (bent) {
      if (x[j] == 0.0)
        fail(ErrorClass::contour, "bent contours need nonzero x_j; use t large enough for vertical lines");
      if (!(opt.bend > 0.0 && opt.bend < 1.0)) fail(ErrorClass::invalid_input, "bend must lie in (0,1)");
      // positive x_j: e^{x z} decays to the left
      ln.kappa = x[j] > 0.0 ? -opt.bend : opt.bend;
      ln.phi_max = bent_range(t, x[j], opt.bend, beta, L);
    } else {
      ln.phi_max = vertical_range(t, L);
    }
    // about half an oscillation of e^{x_j z + t z^2 / 2} per base panel
    double freq = std::abs(x[j]) + 0.5 + (bent ? 2.0 * t * opt.bend * ln.phi_max : t);
    ln.hmax = opt.panel_scale / freq;
    if (t > 0.0) ln.hmax = std::min(ln.hmax, 1.5 / std::sqrt(t));
    in.lines.push_back(ln);
    beta *= tau;
  }
  in.zs.assign(n, 0.0);
  in.phis.assign(n, 0.0);
  cplx half = in.run();
  double pref = std::pow(tau, 0.5 * n * (n - 1.0));
  // integral over phi_1 < 0 is the conjugate of the phi_1 > 0 half
  QuadResult r;
  r.value = 2.0 * pref * half.real();
  r.imag_residual = 0.0;
  r.nodes_per_dim = in.max_nodes;
  if (!std::isfinite(r.value)) fail(ErrorClass::accuracy, "contour quadrature produced a non-finite value");
  return r;
}

QuadResult f_n_contour(const Config& x, double t, const ModelParams& params) {
  return f_n_contour(x, t, params, NestedContours::equal_gap(static_cast<int>(x.size()), params.tau));
}

double moment_tau_n(double u, double t, int n, const ModelParams& params, const NestedContours& contours,
                    const ContourOptions& opt) {
  if (n < 0) fail(ErrorClass::invalid_input, "moment order must be >= 0");
  if (n == 0) return 1.0;
  return f_n_contour(Config::decreasing(std::vector<double>(n, u)), t, params, contours, opt).value;
}

double moment_tau_n(double u, double t, int n, const ModelParams& params) {
  if (n == 0) return 1.0;
  return moment_tau_n(u, t, n, params, NestedContours::equal_gap(n, params.tau));
}

double default_poisson_L(const Config& x, double t) {
  double xm = 0.0;
  for (double v : x.positions()) xm = std::max(xm, v);
  return xm + 6.0 * std::sqrt(std::max(t, 0.0)) + 4.0;
}

std::vector<double> poisson_configuration(double L, Stream& s) {
  if (!(L > 0.0) || !std::isfinite(L)) fail(ErrorClass::invalid_input, "Poisson window must be positive");
  long k = s.poisson(L);
  std::vector<double> y(static_cast<std::size_t>(k));
  for (auto& v : y) v = L * s.uniform();
  std::sort(y.begin(), y.end());
  return y;
}

namespace {
// separate master seeds for the Poisson data and its dynamics
std::uint64_t dynamics_seed(std::uint64_t seed) { return seed ^ 0x6a09e667f3bcc909ULL; }
std::uint64_t initial_seed(std::uint64_t seed) { return seed ^ 0xbb67ae8584caa73bULL; }
}  // namespace

std::vector<std::vector<long>> poisson_counts(const std::vector<double>& u, double t, double poisson_L,
                                              const SimSpec& sim) {
  for (double v : u)
    if (v >= poisson_L) fail(ErrorClass::invalid_input, "Poisson window must exceed every query point");
  SimSpec spec = sim;
  spec.t_end = t;
  if (t > 0.0) spec.validate();
  const std::uint64_t dyn = dynamics_seed(spec.seed), ini = initial_seed(spec.seed);
  std::vector<std::vector<long>> out(spec.n_paths);
  parallel_for(spec.n_paths, [&](std::size_t i) {
    Stream init = seed_stream(ini, i);
    std::vector<double> y = poisson_configuration(poisson_L, init);
    if (!y.empty() && t > 0.0) {
      Stream noise = path_noise_stream(dyn, i), aux = path_aux_stream(dyn, i);
      evolve_path(spec, y, noise, aux);
    }
    out[i].resize(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) out[i][k] = static_cast<long>(count_left(u[k], y.data(), y.size()));
  });
  return out;
}

std::vector<McRun> mc_e_tau(const std::vector<double>& zetas, double u, double t, const ModelParams& params,
                            double poisson_L, const SimSpec& sim) {
  params.require_analytic();
  for (double z : zetas)
    if (z >= 1.0) fail(ErrorClass::domain, "e_tau(zeta tau^N) needs zeta < 1");
  SimSpec spec = sim;
  spec.params = params;
  spec.t_end = t;
  auto counts = poisson_counts({u}, t, poisson_L, spec);
  std::vector<McRun> out;
  for (double z : zetas) {
    std::vector<double> s(counts.size());
    for (std::size_t i = 0; i < s.size(); ++i)
      s[i] = e_tau(cplx(z * std::pow(params.tau, static_cast<double>(counts[i][0])), 0.0), params.tau).real();
    out.push_back(summarize("e_tau(zeta tau^N(u,t)) zeta=" + std::to_string(z), s, spec.seed, spec.echo()));
  }
  return out;
}

MomentMc mc_generating_moment(const Config& x, double t, const ModelParams& params, double poisson_L,
                              const SimSpec& sim) {
  x.require(Chamber::decreasing, "mc_generating_moment");
  params.require_analytic();
  if (!(poisson_L > 0.0)) fail(ErrorClass::invalid_input, "Poisson window must be positive");
  if (x.size() > 0 && x[0] >= poisson_L) fail(ErrorClass::invalid_input, "Poisson window must exceed max x_j");
  SimSpec spec = sim;
  spec.params = params;
  spec.t_end = t;
  spec.validate();

  MomentMc out;
  std::vector<double> s1(spec.n_paths), s2(spec.n_paths);
  if (t > 0.0) {
    auto fin = simulate_dual(spec, x);
    for (std::size_t i = 0; i < fin.size(); ++i) s1[i] = f_n_initial(fin[i], params);
  } else {
    std::fill(s1.begin(), s1.end(), f_n_initial(x, params));
  }

  std::vector<double> us(x.positions().begin(), x.positions().end());
  auto counts = poisson_counts(us, t, poisson_L, spec);
  for (std::size_t i = 0; i < spec.n_paths; ++i) {
    long k = 0;
    for (long c : counts[i]) k += c;
    s2[i] = std::pow(params.tau, static_cast<double>(k));
  }
  out.e1 = summarize("dual F_n(x(t))", s1, spec.seed, spec.echo());
  out.e2 = summarize("prod tau^N(x_j) from Poisson(1) on [0," + std::to_string(poisson_L) + "]", s2, spec.seed,
                     spec.echo());
  out.combined_stderr = std::hypot(out.e1.stderr_, out.e2.stderr_);
  return out;
}

}  // namespace kpz
