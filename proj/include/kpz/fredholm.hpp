#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kpz/core.hpp"
#include "kpz/specfun.hpp"

namespace kpz {

// Quadrature nodes on a contour. w_k already contains dz / (2 pi i) for complex
// contours, or dx for real half-lines.
struct Nodes {
  std::vector<cplx> z;
  std::vector<cplx> w;
  std::size_t size() const { return z.size(); }
};

// Node set at refinement level l; level l + 1 doubles the resolution.
using Domain = std::function<Nodes(int level)>;

struct KernelEval {
  std::string name;
  std::string echo;
  // Matrix k(z_i, z_j) over all node pairs.
  std::function<Eigen::MatrixXcd(const Nodes&)> assemble;
};

// Builds a KernelEval from a pointwise callback; assembly runs over rows in parallel.
KernelEval pointwise_kernel(std::string name, std::string echo, std::function<cplx(cplx, cplx)> k);

struct FredholmOptions {
  double tol = 1e-10;  // target for the doubling error estimate
  int base_level = 0;
  int max_level = 3;
  double sign = 1.0;  // det(1 + sign K)
  bool strict = true;  // accuracy error if tol is never met
};

struct FredholmResult {
  cplx value;
  double error_estimate = 0.0;  // |det(2n) - det(n)|
  std::size_t n_nodes = 0;
  int level = 0;
};

// det(1 + sign K) by Nystrom: det(I + sign K W). Returns the finer of two
// consecutive levels once they agree to tol.
FredholmResult fredholm_det(const KernelEval& kernel, const Domain& domain, const FredholmOptions& opt = {});

// Kernel on Z_{>0} x contour, indices 1..n_index.
struct IndexedKernel {
  std::string name;
  std::function<cplx(int, cplx, int, cplx)> k;
  int n_index = 1;
};
FredholmResult fredholm_det_indexed(const IndexedKernel& kernel, const Domain& domain,
                                    const FredholmOptions& opt = {});

// ---- contours ----

// C_0 = {-delta + i phi}, |phi| <= phi_max, composite GL.
struct ContourC0 {
  double delta = 0.25;
  double phi_max = 10.0;
  double panel = 0.25;  // panel length at level 0
  int order = 10;
  void validate(double tau) const;
  Nodes nodes(int level) const;
  std::size_t n_nodes(int level) const;
};

// Piecewise-linear s-contour for anchor w = -delta + i phi:
// R - i S -> R - i d -> x0 - i d -> x0 -> x0 + i d -> R + i d -> R + i S.
struct ContourCw {
  cplx w;
  double delta, tau;
  double x0 = 0.5;
  double d = 0.5;
  double R = 0.5;
  double s_max = 0.0;
  double a0 = 0.0;  // guaranteed distance of tau^s w from C_0
  Nodes nodes;      // s nodes with ds / (2 pi i)

  static ContourCw build(cplx w, double delta, double tau, cplx zeta, double growth_bound, double tol = 1e-14,
                         int level = 0);
  // Smallest Re(tau^s w) + delta over nodes; must be >= a0.
  double clearance() const;
};

// w rays from 1 at angles +-pi/3 and z rays from 0 at angles +-2pi/3,
// truncated at the given radius.
struct RayContours {
  double radius = 6.0;
  int nodes_per_ray = 40;
  Nodes w_nodes(int level) const;  // oriented with increasing imaginary part
  Nodes z_nodes(int level) const;  // oriented with decreasing imaginary part
};

// ---- kernels ----

// (1 - tau) / (z + 1 - tau) e^{u z + t z^2 / 2}
cplx kernel_f(cplx z, double u, double t, double tau);

// g(z,t) with f = g(z) / g(tau z); gamma = q - p.
cplx g_function(cplx z, double u, double t, double tau, double gamma);
// g~(w,t) = e^{u w + t w^2 / 2} / (-w; tau)_inf
cplx g_tilde(cplx w, double u, double t, double tau);

// zeta^{n1} prod_{k<n1} f(tau^k w1) / (tau^{n1} w1 - w2). t is the diffusion time.
cplx kernel_K(int n1, cplx w1, int n2, cplx w2, cplx zeta, double u, double t, double tau);

// Mellin-Barnes kernel in the w variable; t is the gamma-rescaled time.
cplx kernel_K_zeta(cplx w, cplx w_prime, cplx zeta, double u, double t, double tau, const ContourCw& cw);
// Same, with C_w built for w on C_0 with the given delta.
cplx kernel_K_zeta(cplx w, cplx w_prime, cplx zeta, double u, double t, double tau, double delta);

// Least-squares fit of log|K_zeta(-delta+i phi, -delta+i phi')| = c - c1 phi^2
// over phi in [0, phi_max] at fixed phi'. t is the gamma-rescaled time.
struct DecayFit {
  double c1 = 0.0;        // minus the fitted slope
  double intercept = 0.0;
  double max_residual = 0.0;
  std::vector<double> phi, log_abs;
};
DecayFit kzeta_decay_fit(double u, double t, const ModelParams& params, cplx zeta, double delta, double phi_prime,
                         double phi_max = 6.0, int n_points = 25);

// Limiting kernel, with the z integral done on the given rays and normalized by
// -1/(2 pi i). det(1 + K_r) = F_GUE((a/2)^{-2/3} r).
cplx kernel_Kr(cplx w, cplx w_prime, double a, double r, const RayContours& rays, int level = 0);

// ---- determinants ----

struct DetSpec {
  double u = 1.0;
  double t = 1.0;  // see each function for the clock
  ModelParams params;
  double delta = -1.0;  // default chosen inside (0, 1 - tau)
  FredholmOptions fred;
};

// det(1 + K) on Z_{>0} x C_0 with the index sum done exactly (K does not depend
// on n2). t is the diffusion time: the result is E e_tau(zeta tau^{N(u,t)}).
FredholmResult det_K(cplx zeta, const DetSpec& spec, int* index_terms = nullptr);

// det(1 + K_zeta); t is the gamma-rescaled time: the result is
// E e_tau(zeta tau^{N(u, t/gamma)}).
FredholmResult det_K_zeta(cplx zeta, const DetSpec& spec);

// det(1 + K_r) with the stated ray orientations.
FredholmResult det_Kr(double a, double r, const RayContours& rays = {}, const FredholmOptions& opt = {});

// ---- Tracy-Widom ----

// det(1 - A) on [s, inf), Airy kernel, rational map x = s + 4 (1 + xi) / (1 - xi).
FredholmResult tw_gue_det(double s, int m = 40, const FredholmOptions& opt = {});
double tw_gue_cdf(double s);
// det(1 - B0) on [s, inf), B0(u,u') = Ai(u + u').
FredholmResult tw_goe_det(double s, int m = 40, const FredholmOptions& opt = {});
double tw_goe_cdf(double s);

struct DistributionMoments {
  double mean;
  double variance;
};
// Mean and variance from the CDF by quadrature over [lo, hi].
DistributionMoments cdf_moments(const std::function<double(double)>& cdf, double lo = -10.0, double hi = 8.0);

// E e_tau(zeta tau^N) estimator sample.
double e_tau_of_count(cplx zeta, long n, double tau);

}  // namespace kpz
