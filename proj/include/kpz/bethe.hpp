#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "kpz/core.hpp"
#include "kpz/specfun.hpp"

namespace kpz {

// Truncated trapezoid rule on Re z = a. Weights carry dz/(2 pi i) = dphi/(2 pi).
struct VerticalContour {
  double a = 1.0;
  double phi_max = 10.0;
  double h = 0.1;

  std::size_t n_nodes() const;
  std::vector<cplx> nodes() const;
  double weight() const;  // common weight h/(2 pi)

  // phi_max = sqrt(2 ln(1/tol)/t) + |a|; spacing resolves the oscillation
  // (spread = largest |x - y|) and the nearest pole at distance pole_dist from the line.
  static VerticalContour design(double a, double t, double spread, double pole_dist, double tol = 1e-12);
};

// Nearest pole distance of the Bethe integrand for abscissa a.
double bethe_pole_distance(double a, double tau);

class Permutation {
 public:
  explicit Permutation(std::vector<int> images);  // 0-based images sigma(0..N-1)
  static std::vector<Permutation> all(int n);

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i]; }
  int inverse(int k) const { return inv_[k]; }
  // Pairs (sigma(i), sigma(j)) with i < j and sigma(i) > sigma(j).
  const std::vector<std::pair<int, int>>& inversions() const { return invs_; }

 private:
  std::vector<int> img_, inv_;
  std::vector<std::pair<int, int>> invs_;
};

cplx scattering_S(cplx za, cplx zb, double tau);
cplx amplitude_A(const Permutation& sigma, const std::vector<cplx>& z, double tau);

struct QuadResult {
  double value = 0.0;
  double imag_residual = 0.0;
  std::size_t nodes_per_dim = 0;
};

constexpr int kBetheMaxN = 5;

// Bethe-ansatz density of x(t) = x given x(0) = y.
QuadResult transition_density_Q(const Config& y, const Config& x, double t, const ModelParams& params,
                                 const VerticalContour& contour, double tol = 1e-12);
QuadResult transition_density_Q(const Config& y, const Config& x, double t, const ModelParams& params);

double gaussian_kernel(double u, double t);
double transition_permanent_tau1(const Config& y, const Config& x, double t);

// F_m(u) on a vertical contour.
QuadResult contour_F(int m, double u, double t, const VerticalContour& contour);
QuadResult transition_det_q1(const Config& y, const Config& x, double t, const VerticalContour& contour);

// Distribution function of the rightmost particle.
QuadResult cdf_gN(double u, const Config& y, double t, const ModelParams& params, const VerticalContour& contour,
                  double tol = 1e-12);
QuadResult cdf_gN(double u, const Config& y, double t, const ModelParams& params);

// Integral of Q over the chamber, by tensor Gauss-Legendre in gap coordinates
// on a box of half-width 8 sqrt(t) around the start (N <= 3).
double normalization_Q(const Config& y, double t, const ModelParams& params, int gl_order = 48);

// Marginal CDFs of both particles for N = 2 on the grid u: first from the
// x1-marginal density (gap-coordinate quadrature of Q), second from g_2.
struct MarginalCdfs {
  std::vector<double> u;
  std::vector<double> first;
  std::vector<double> second;
};
MarginalCdfs marginal_cdfs_n2(const Config& y, double t, const ModelParams& params, const std::vector<double>& u,
                              double tol = 1e-10);

}  // namespace kpz
