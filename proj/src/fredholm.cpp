#include "kpz/fredholm.hpp"

#include <algorithm>
#include <cmath>

#include "kpz/errors.hpp"
#include "kpz/parallel.hpp"
#include "kpz/quadrature.hpp"

namespace kpz {

namespace {

const cplx kI(0.0, 1.0);
const cplx kInv2PiI = 1.0 / cplx(0.0, 2.0 * M_PI);

cplx nystrom_det(const Eigen::MatrixXcd& k, const Nodes& nodes, double sign) {
  const Eigen::Index n = static_cast<Eigen::Index>(nodes.size());
  if (n == 0) return 1.0;
  Eigen::MatrixXcd m = k;
  for (Eigen::Index j = 0; j < n; ++j) m.col(j) *= sign * nodes.w[j];
  m += Eigen::MatrixXcd::Identity(n, n);
  return m.partialPivLu().determinant();
}

void check_finite(const Eigen::MatrixXcd& k, const std::string& name) {
  if (!k.allFinite()) fail(ErrorClass::accuracy, "kernel " + name + " is not finite on the nodes");
}

template <class Eval>
FredholmResult refine(const Eval& det_at, const FredholmOptions& opt, const std::string& name) {
  if (opt.max_level < opt.base_level + 1) fail(ErrorClass::invalid_input, "need max_level > base_level");
  auto [prev, n_prev] = det_at(opt.base_level);
  FredholmResult r;
  for (int level = opt.base_level + 1; level <= opt.max_level; ++level) {
    auto [cur, n_cur] = det_at(level);
    r.value = cur;
    r.error_estimate = std::abs(cur - prev);
    r.n_nodes = n_cur;
    r.level = level;
    if (r.error_estimate <= opt.tol) return r;
    prev = cur;
  }
  if (opt.strict)
    fail(ErrorClass::accuracy, "Fredholm determinant of " + name + " did not converge: error estimate " +
                                   std::to_string(r.error_estimate));
  return r;
}

}  // namespace

KernelEval pointwise_kernel(std::string name, std::string echo, std::function<cplx(cplx, cplx)> k) {
  KernelEval ke;
  ke.name = std::move(name);
  ke.echo = std::move(echo);
  ke.assemble = [k](const Nodes& nodes) {
    const std::size_t n = nodes.size();
    Eigen::MatrixXcd m(n, n);
    parallel_for(n, [&](std::size_t i) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) = k(nodes.z[i], nodes.z[j]);
    });
    return m;
  };
  return ke;
}

FredholmResult fredholm_det(const KernelEval& kernel, const Domain& domain, const FredholmOptions& opt) {
  auto det_at = [&](int level) {
    Nodes nodes = domain(level);
    Eigen::MatrixXcd k = kernel.assemble(nodes);
    check_finite(k, kernel.name);
    return std::pair<cplx, std::size_t>(nystrom_det(k, nodes, opt.sign), nodes.size());
  };
  return refine(det_at, opt, kernel.name);
}

FredholmResult fredholm_det_indexed(const IndexedKernel& kernel, const Domain& domain, const FredholmOptions& opt) {
  if (kernel.n_index < 1) fail(ErrorClass::invalid_input, "index truncation must be >= 1");
  auto det_at = [&](int level) {
    Nodes base = domain(level);
    const std::size_t m = base.size(), n = m * static_cast<std::size_t>(kernel.n_index);
    Nodes nodes;
    nodes.z.reserve(n);
    nodes.w.reserve(n);
    for (int a = 0; a < kernel.n_index; ++a)
      for (std::size_t i = 0; i < m; ++i) {
        nodes.z.push_back(base.z[i]);
        nodes.w.push_back(base.w[i]);
      }
    Eigen::MatrixXcd k(n, n);
    parallel_for(n, [&](std::size_t r) {
      int n1 = static_cast<int>(r / m) + 1;
      for (std::size_t c = 0; c < n; ++c) {
        int n2 = static_cast<int>(c / m) + 1;
        k(r, c) = kernel.k(n1, nodes.z[r], n2, nodes.z[c]);
      }
    });
    check_finite(k, kernel.name);
    return std::pair<cplx, std::size_t>(nystrom_det(k, nodes, opt.sign), n);
  };
  return refine(det_at, opt, kernel.name);
}

// ---- contours ----

void ContourC0::validate(double tau) const {
  if (!(delta > 0.0 && delta < 1.0 - tau)) fail(ErrorClass::contour, "C_0 needs 0 < delta < 1 - tau");
  if (!(phi_max > 0.0 && panel > 0.0 && order >= 2)) fail(ErrorClass::invalid_input, "bad C_0 discretization");
}

std::size_t ContourC0::n_nodes(int level) const {
  double h = panel / std::ldexp(1.0, level);
  return static_cast<std::size_t>(std::ceil(2.0 * phi_max / h)) * static_cast<std::size_t>(order);
}

Nodes ContourC0::nodes(int level) const {
  double h = panel / std::ldexp(1.0, level);
  int panels = static_cast<int>(std::ceil(2.0 * phi_max / h));
  std::vector<double> br(panels + 1);
  for (int k = 0; k <= panels; ++k) br[k] = -phi_max + 2.0 * phi_max * k / panels;
  Rule r = composite_gl(br, order);
  Nodes n;
  for (std::size_t k = 0; k < r.size(); ++k) {
    n.z.emplace_back(-delta, r.x[k]);
    n.w.emplace_back(r.w[k] / (2.0 * M_PI));  // i dphi / (2 pi i)
  }
  return n;
}

ContourCw ContourCw::build(cplx w, double delta, double tau, cplx zeta, double growth_bound, double tol,
                           int level) {
  if (!(tau > 0.0 && tau < 1.0)) fail(ErrorClass::domain, "C_w needs 0 < tau < 1");
  if (zeta.imag() == 0.0 && zeta.real() >= 0.0) fail(ErrorClass::domain, "zeta must lie off the positive axis");
  ContourCw c;
  c.w = w;
  c.delta = delta;
  c.tau = tau;
  const double ltau = -std::log(tau);
  const double phi = std::abs(w.imag());
  const double tx0 = std::pow(tau, c.x0);
  // tau^R |w| <= delta / 2 on the far vertical piece; R kept half-integral
  double r0 = std::max(c.x0, std::log(2.0 * std::abs(w) / delta) / ltau);
  c.R = std::max(c.x0, std::ceil(r0 - 0.5) + 0.5);
  // the rotation by d ln(1/tau) may move tau^s w left by at most delta (1 - tau^x0) / 2
  c.a0 = 0.5 * delta * (1.0 - tx0);
  double smax_rot = 0.5 * delta * (1.0 - tx0) / tx0;
  double alpha = phi > smax_rot ? std::asin(smax_rot / phi) : 0.5 * M_PI;
  c.d = std::min({0.5, alpha / ltau, 0.5 * M_PI / ltau});

  const double theta = std::abs(std::arg(-zeta));
  const double lz = std::log(std::abs(zeta));
  double logb = std::log(2.0 * M_PI * std::max(growth_bound, 1e-300) / c.a0) + c.R * lz;
  c.s_max = c.d + std::max(0.0, (std::log(1.0 / tol) + logb) / (M_PI - theta)) + 1.0;

  const int m = 12 + 4 * level;
  std::vector<cplx> pts, dss;
  auto add = [&](const Rule& r, auto&& map, cplx dir) {
    for (std::size_t k = 0; k < r.size(); ++k) {
      pts.push_back(map(r.x[k]));
      dss.push_back(dir * r.w[k]);
    }
  };
  // x0 -> x0 + i d
  add(graded_rule(0.0, c.d, {}, 0.25, m), [&](double y) { return cplx(c.x0, y); }, kI);
  // x0 + i d -> R + i d, graded toward the poles at the integers
  if (c.R > c.x0) {
    std::vector<NearSingularity> sing;
    for (double k = std::ceil(c.x0); k < c.R; k += 1.0) sing.push_back({k, c.d});
    add(graded_rule(c.x0, c.R, sing, 0.5, m), [&](double x) { return cplx(x, c.d); }, 1.0);
  }
  // R + i d -> R + i s_max
  add(graded_rule(c.d, c.s_max, {}, 1.0, m), [&](double y) { return cplx(c.R, y); }, kI);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    c.nodes.z.push_back(pts[k]);
    c.nodes.w.push_back(dss[k] * kInv2PiI);
    // mirror image, traversed upward: ds -> -conj(ds)
    c.nodes.z.push_back(std::conj(pts[k]));
    c.nodes.w.push_back(-std::conj(dss[k]) * kInv2PiI);
  }
  if (c.clearance() < c.a0 * (1.0 - 1e-9))
    fail(ErrorClass::contour, "C_w construction violates |tau^s w - w'| >= a0");
  return c;
}

double ContourCw::clearance() const {
  double best = std::numeric_limits<double>::infinity();
  const double lt = std::log(tau);
  for (const cplx& s : nodes.z) best = std::min(best, (std::exp(s * lt) * w).real() + delta);
  return best;
}

Nodes RayContours::w_nodes(int level) const {
  Rule r = composite_gl({0.0, 0.5, 1.5, 3.0, radius}, nodes_per_ray * (1 << level) / 4);
  Nodes n;
  const cplx up = std::polar(1.0, M_PI / 3.0), dn = std::polar(1.0, -M_PI / 3.0);
  // lower ray inward, then upper ray outward
  for (std::size_t k = r.size(); k-- > 0;) {
    n.z.push_back(1.0 + r.x[k] * dn);
    n.w.push_back(-dn * r.w[k] * kInv2PiI);
  }
  for (std::size_t k = 0; k < r.size(); ++k) {
    n.z.push_back(1.0 + r.x[k] * up);
    n.w.push_back(up * r.w[k] * kInv2PiI);
  }
  return n;
}

Nodes RayContours::z_nodes(int level) const {
  Rule r = composite_gl({0.0, 0.5, 1.5, 3.0, radius}, nodes_per_ray * (1 << level) / 4);
  Nodes n;
  const cplx up = std::polar(1.0, 2.0 * M_PI / 3.0), dn = std::polar(1.0, -2.0 * M_PI / 3.0);
  // upper ray inward, then lower ray outward
  for (std::size_t k = r.size(); k-- > 0;) {
    n.z.push_back(r.x[k] * up);
    n.w.push_back(-up * r.w[k] * kInv2PiI);
  }
  for (std::size_t k = 0; k < r.size(); ++k) {
    n.z.push_back(r.x[k] * dn);
    n.w.push_back(dn * r.w[k] * kInv2PiI);
  }
  return n;
}

// ---- kernels ----

cplx kernel_f(cplx z, double u, double t, double tau) {
  cplx den = z + (1.0 - tau);
  if (std::abs(den) < 1e-300) fail(ErrorClass::pole, "f evaluated at its pole z = -(1 - tau)");
  return (1.0 - tau) / den * std::exp(u * z + 0.5 * t * z * z);
}

cplx g_function(cplx z, double u, double t, double tau, double gamma) {
  const double c = 1.0 / (1.0 - tau);
  return std::exp(u * c * z + 0.5 * gamma * t * c * c * z * z) * e_tau(-c * z, tau);
}

cplx g_tilde(cplx w, double u, double t, double tau) {
  return std::exp(u * w + 0.5 * t * w * w) * e_tau(-w, tau);
}

cplx kernel_K(int n1, cplx w1, int n2, cplx w2, cplx zeta, double u, double t, double tau) {
  if (n1 < 1 || n2 < 1) fail(ErrorClass::invalid_input, "kernel indices start at 1");
  cplx prod = 1.0, v = w1;
  for (int k = 0; k < n1; ++k) {
    prod *= kernel_f(v, u, t, tau);
    v *= tau;
  }
  return std::pow(zeta, n1) * prod / (v - w2);
}

namespace {

// Gamma(-s)Gamma(1+s) (-zeta)^s g~(w)/g~(tau^s w) ds/(2 pi i) at each node.
void kzeta_row(cplx w, cplx zeta, double u, double t, double tau, const ContourCw& cw, std::vector<cplx>& h,
               std::vector<cplx>& v) {
  const std::size_t n = cw.nodes.size();
  h.resize(n);
  v.resize(n);
  const double lt = std::log(tau);
  const cplx lmz = std::log(-zeta);
  const cplx qw = q_pochhammer_inf(-w, tau);
  for (std::size_t k = 0; k < n; ++k) {
    cplx s = cw.nodes.z[k];
    cplx ts = std::exp(s * lt);
    cplx ratio = std::exp(u * (1.0 - ts) * w + 0.5 * t * w * w * (1.0 - ts * ts)) *
                 q_pochhammer_inf(-ts * w, tau) / qw;
    h[k] = gamma_product(s) * std::exp(s * lmz) * ratio * cw.nodes.w[k];
    v[k] = ts * w;
  }
}

double kzeta_growth(cplx w, double u, double t, double tau, double delta) {
  // |g~(w)| times a bound on 1/|g~(tau^s w)| for |tau^s w| <= delta / 2
  double b = std::abs(std::exp(u * w + 0.5 * t * w * w) / q_pochhammer_inf(-w, tau));
  double r = 0.5 * delta;
  double qp = std::abs(q_pochhammer_inf(cplx(r, 0.0), tau, 1e-17));
  double qm = 1.0;
  for (double x = r; x > 1e-18; x *= tau) qm *= (1.0 + x);
  return b * std::exp(std::abs(u) * r + 0.5 * t * r * r) * std::max(qm, 1.0 / std::max(qp, 1e-300));
}

}  // namespace

cplx kernel_K_zeta(cplx w, cplx w_prime, cplx zeta, double u, double t, double tau, const ContourCw& cw) {
  std::vector<cplx> h, v;
  kzeta_row(w, zeta, u, t, tau, cw, h, v);
  cplx acc = 0.0;
  for (std::size_t k = 0; k < h.size(); ++k) acc += h[k] / (v[k] - w_prime);
  return acc;
}

cplx kernel_K_zeta(cplx w, cplx w_prime, cplx zeta, double u, double t, double tau, double delta) {
  ContourCw cw = ContourCw::build(w, delta, tau, zeta, kzeta_growth(w, u, t, tau, delta), 1e-15, 0);
  return kernel_K_zeta(w, w_prime, zeta, u, t, tau, cw);
}

DecayFit kzeta_decay_fit(double u, double t, const ModelParams& params, cplx zeta, double delta, double phi_prime,
                         double phi_max, int n_points) {
  const double tau = params.tau;
  if (!(delta > 0.0 && delta < 1.0 - tau)) fail(ErrorClass::invalid_input, "need 0 < delta < 1 - tau");
  if (n_points < 3 || !(phi_max > 0.0)) fail(ErrorClass::invalid_input, "decay fit needs >= 3 points");
  DecayFit f;
  const cplx wp(-delta, phi_prime);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 0; k < n_points; ++k) {
    double phi = phi_max * k / (n_points - 1);
    double y = std::log(std::abs(kernel_K_zeta(cplx(-delta, phi), wp, zeta, u, t, tau, delta)));
    f.phi.push_back(phi);
    f.log_abs.push_back(y);
    double x = phi * phi;
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double n = n_points;
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.c1 = -slope;
  f.intercept = (sy - slope * sx) / n;
  for (int k = 0; k < n_points; ++k)
    f.max_residual = std::max(f.max_residual,
                              std::abs(f.log_abs[k] - f.intercept - slope * f.phi[k] * f.phi[k]));
  return f;
}

// The z integral carries -dz/(2 pi i) along the stated orientation; with
// dw/(2 pi i) on the w rays this makes det(1 + K_r) the Airy determinant.
cplx kernel_Kr(cplx w, cplx w_prime, double a, double r, const RayContours& rays, int level) {
  if (!(a > 0.0)) fail(ErrorClass::invalid_input, "K_r needs a > 0");
  const double c = std::pow(0.5 * a, -2.0 / 3.0) * r;
  Nodes zn = rays.z_nodes(level);
  cplx acc = 0.0;
  for (std::size_t k = 0; k < zn.size(); ++k) {
    cplx z = zn.z[k];
    acc += std::exp(-z * z * z / 3.0 + w * w * w / 3.0 + c * (z - w)) / ((w - z) * (z - w_prime)) * zn.w[k];
  }
  return -acc;
}

// ---- determinants ----

namespace {

double default_delta(double tau) { return 0.6 * (1.0 - tau); }

double gauss_range(double rate, double tol) { return std::sqrt(2.0 * (std::log(1.0 / tol) + 4.0) / rate) + 1.0; }

}  // namespace

FredholmResult det_K(cplx zeta, const DetSpec& spec, int* index_terms) {
  const double tau = spec.params.tau;
  spec.params.require_analytic();
  if (!(spec.t > 0.0)) fail(ErrorClass::invalid_input, "det_K needs t > 0");
  ContourC0 c0;
  c0.delta = spec.delta > 0.0 ? spec.delta : default_delta(tau);
  c0.phi_max = gauss_range(spec.t, spec.fred.tol * 1e-3);
  c0.panel = 2.0 * c0.delta * (1.0 - tau);
  c0.validate(tau);
  const double u = spec.u, t = spec.t;
  const double az = std::abs(zeta);
  int used = 0;
  KernelEval ke;
  ke.name = "K";
  ke.echo = "zeta=" + std::to_string(zeta.real()) + " u=" + std::to_string(u) + " t=" + std::to_string(t);
  ke.assemble = [&](const Nodes& nodes) {
    const std::size_t n = nodes.size();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    std::vector<int> terms(n, 0);
    const double floor_dist = (1.0 - tau) * c0.delta;
    parallel_for(n, [&](std::size_t i) {
      cplx w1 = nodes.z[i], prod = 1.0, v = w1, zp = 1.0;
      int k = 0;
      for (; k < 5000; ++k) {
        prod *= kernel_f(v, u, t, tau);
        v *= tau;
        zp *= zeta;
        cplx coef = zp * prod;
        for (std::size_t j = 0; j < n; ++j) m(i, j) += coef / (v - nodes.z[j]);
        if (std::abs(coef) / floor_dist < 1e-17 * (1.0 - std::min(az, 0.999))) break;
      }
      if (k == 5000) fail(ErrorClass::accuracy, "index sum for K did not converge; |zeta| too large");
      terms[i] = k + 1;
    });
    used = std::max(used, *std::max_element(terms.begin(), terms.end()));
    return m;
  };
  auto dom = [&](int level) { return c0.nodes(level); };
  FredholmResult r = fredholm_det(ke, dom, spec.fred);
  if (index_terms) *index_terms = used;
  return r;
}

FredholmResult det_K_zeta(cplx zeta, const DetSpec& spec) {
  const double tau = spec.params.tau;
  spec.params.require_analytic();
  if (!(spec.t > 0.0)) fail(ErrorClass::invalid_input, "det_K_zeta needs t > 0");
  if (zeta.imag() == 0.0 && zeta.real() >= 0.0) fail(ErrorClass::domain, "zeta must lie off the positive axis");
  ContourC0 c0;
  c0.delta = spec.delta > 0.0 ? spec.delta : default_delta(tau);
  c0.phi_max = gauss_range(spec.t * (1.0 - tau), spec.fred.tol * 1e-3);
  c0.panel = 1.0;
  c0.validate(tau);
  const double u = spec.u, t = spec.t;
  KernelEval ke;
  ke.name = "K_zeta";
  ke.echo = "zeta=" + std::to_string(zeta.real()) + " u=" + std::to_string(u) + " t=" + std::to_string(t);
  int cur_level = 0;
  ke.assemble = [&](const Nodes& nodes) {
    const std::size_t n = nodes.size();
    Eigen::MatrixXcd m(n, n);
    parallel_for(n, [&](std::size_t i) {
      cplx w = nodes.z[i];
      ContourCw cw = ContourCw::build(w, c0.delta, tau, zeta, kzeta_growth(w, u, t, tau, c0.delta), 1e-15,
                                      cur_level);
      std::vector<cplx> h, v;
      kzeta_row(w, zeta, u, t, tau, cw, h, v);
      for (std::size_t j = 0; j < n; ++j) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < h.size(); ++k) acc += h[k] / (v[k] - nodes.z[j]);
        m(i, j) = acc;
      }
    });
    return m;
  };
  auto dom = [&](int level) {
    cur_level = level;
    return c0.nodes(level);
  };
  return fredholm_det(ke, dom, spec.fred);
}

FredholmResult det_Kr(double a, double r, const RayContours& rays, const FredholmOptions& opt) {
  if (!(a > 0.0)) fail(ErrorClass::invalid_input, "K_r needs a > 0");
  const double c = std::pow(0.5 * a, -2.0 / 3.0) * r;
  int cur_level = 0;
  KernelEval ke;
  ke.name = "K_r";
  ke.echo = "a=" + std::to_string(a) + " r=" + std::to_string(r);
  ke.assemble = [&](const Nodes& wn) {
    Nodes zn = rays.z_nodes(cur_level);
    const std::size_t n = wn.size(), nz = zn.size();
    std::vector<cplx> ez(nz);
    for (std::size_t k = 0; k < nz; ++k) {
      cplx z = zn.z[k];
      ez[k] = -std::exp(-z * z * z / 3.0 + c * z) * zn.w[k];
    }
    Eigen::MatrixXcd m(n, n);
    parallel_for(n, [&](std::size_t i) {
      cplx w = wn.z[i];
      cplx ew = std::exp(w * w * w / 3.0 - c * w);
      for (std::size_t j = 0; j < n; ++j) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < nz; ++k) acc += ez[k] / ((w - zn.z[k]) * (zn.z[k] - wn.z[j]));
        m(i, j) = ew * acc;
      }
    });
    return m;
  };
  auto dom = [&](int level) {
    cur_level = level;
    return rays.w_nodes(level);
  };
  return fredholm_det(ke, dom, opt);
}

// ---- Tracy-Widom ----

namespace {

Nodes half_line(double s, int m) {
  const Rule& g = gauss_legendre(m);
  Nodes n;
  for (int k = 0; k < m; ++k) {
    double xi = g.x[k];
    n.z.emplace_back(s + 4.0 * (1.0 + xi) / (1.0 - xi));
    n.w.emplace_back(8.0 / ((1.0 - xi) * (1.0 - xi)) * g.w[k]);
  }
  return n;
}

FredholmResult airy_det(double s, int m, FredholmOptions opt, bool goe) {
  if (!std::isfinite(s)) fail(ErrorClass::invalid_input, "argument must be finite");
  if (m < 4) fail(ErrorClass::invalid_input, "too few nodes");
  opt.sign = -1.0;
  KernelEval ke;
  ke.name = goe ? "Ai(u+u')" : "Airy";
  ke.assemble = [goe](const Nodes& nodes) {
    const std::size_t n = nodes.size();
    Eigen::MatrixXcd k(n, n);
    if (goe) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) k(i, j) = k(j, i) = airy_ai(nodes.z[i].real() + nodes.z[j].real());
      return k;
    }
    std::vector<AiryValue> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = airy(nodes.z[i].real());
    for (std::size_t i = 0; i < n; ++i) {
      double x = nodes.z[i].real();
      for (std::size_t j = 0; j < n; ++j) {
        double y = nodes.z[j].real();
        k(i, j) = (i == j) ? a[i].aip * a[i].aip - x * a[i].ai * a[i].ai
                           : (a[i].ai * a[j].aip - a[i].aip * a[j].ai) / (x - y);
      }
    }
    return k;
  };
  auto dom = [s, m](int level) { return half_line(s, m << level); };
  return fredholm_det(ke, dom, opt);
}

}  // namespace

FredholmResult tw_gue_det(double s, int m, const FredholmOptions& opt) { return airy_det(s, m, opt, false); }
FredholmResult tw_goe_det(double s, int m, const FredholmOptions& opt) { return airy_det(s, m, opt, true); }

namespace {
double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }
}  // namespace

double tw_gue_cdf(double s) {
  FredholmOptions o;
  o.tol = 1e-10;
  o.max_level = 2;
  return clamp01(tw_gue_det(s, 24 + 4 * static_cast<int>(std::max(0.0, -s)), o).value.real());
}

double tw_goe_cdf(double s) {
  FredholmOptions o;
  o.tol = 1e-10;
  o.max_level = 2;
  return clamp01(tw_goe_det(s, 24 + 6 * static_cast<int>(std::max(0.0, -s)), o).value.real());
}

DistributionMoments cdf_moments(const std::function<double(double)>& cdf, double lo, double hi) {
  if (!(hi > lo)) fail(ErrorClass::invalid_input, "need hi > lo");
  std::vector<double> br;
  const int panels = static_cast<int>(std::ceil((hi - lo) / 0.5));
  for (int k = 0; k <= panels; ++k) br.push_back(lo + (hi - lo) * k / panels);
  Rule r = composite_gl(br, 8);
  // integration by parts with F(lo) ~ 0, F(hi) ~ 1
  double i0 = 0.0, i1 = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    double f = cdf(r.x[k]);
    i0 += r.w[k] * f;
    i1 += r.w[k] * r.x[k] * f;
  }
  double m1 = hi - i0;
  double m2 = hi * hi - 2.0 * i1;
  return {m1, m2 - m1 * m1};
}

double e_tau_of_count(cplx zeta, long n, double tau) {
  return e_tau(zeta * std::pow(tau, static_cast<double>(n)), tau).real();
}

}  // namespace kpz
