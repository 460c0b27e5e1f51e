#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "kpz/bethe.hpp"
#include "kpz/core.hpp"
#include "kpz/sde.hpp"

namespace kpz {

// Abscissas -(1-tau) < a_1 < ... < a_n < 0 with tau a_j < a_{j+1}.
struct NestedContours {
  std::vector<double> a;

  // Equal pole clearance d on every constraint (default).
  static NestedContours equal_gap(int n, double tau);
  // a_j = -(1-tau) (tau/2)^j.
  static NestedContours geometric(int n, double tau);

  void validate(double tau) const;  // contour error on violation
  // Smallest distance from any contour to a pole it must avoid.
  double clearance(double tau) const;
};

struct ContourOptions {
  enum class Shape { automatic, vertical, bent };
  Shape shape = Shape::automatic;
  double tol = 1e-12;
  int gl_order = 10;
  double bend = 0.8;  // asymptotic slope of bent contours
  double grading = 3.0;       // panel growth away from near-singularities
  double panel_scale = 2.0 * M_PI;  // base panel length times local frequency
};

// Nested-contour formula for E prod_j tau^{N(x_j, t)} under half-line Poisson data.
QuadResult f_n_contour(const Config& x, double t, const ModelParams& params, const NestedContours& contours,
                       const ContourOptions& opt = {});
QuadResult f_n_contour(const Config& x, double t, const ModelParams& params);

// E tau^{n N(u,t)}; n = 0 gives 1.
double moment_tau_n(double u, double t, int n, const ModelParams& params, const NestedContours& contours,
                    const ContourOptions& opt = {});
double moment_tau_n(double u, double t, int n, const ModelParams& params);

struct MomentMc {
  McRun e1;  // dual particles from x, averaged F_n(x(t))
  McRun e2;  // Poisson(1) on [0, L], averaged prod tau^{N(x_j; y(t))}
  double combined_stderr = 0.0;
};

// sim supplies dt, scheme, n_paths and seed; its t_end and params are overridden.
MomentMc mc_generating_moment(const Config& x, double t, const ModelParams& params, double poisson_L,
                              const SimSpec& sim);

// Default truncation L = max(x_1, 0) + 6 sqrt(t) + 4.
double default_poisson_L(const Config& x, double t);

// N(u_k, t) (particles at or left of u_k) for Poisson(1) data on [0, L]; one row per path.
std::vector<std::vector<long>> poisson_counts(const std::vector<double>& u, double t, double poisson_L,
                                              const SimSpec& sim);

// Monte Carlo E e_tau(zeta tau^{N(u,t)}) for each zeta on shared paths; t is the diffusion time.
std::vector<McRun> mc_e_tau(const std::vector<double>& zetas, double u, double t, const ModelParams& params,
                            double poisson_L, const SimSpec& sim);

// Draws a Poisson(1) configuration on [0, L] (sorted).
std::vector<double> poisson_configuration(double L, Stream& s);

}  // namespace kpz
