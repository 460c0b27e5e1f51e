#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kpz/sde.hpp"
#include "kpz/specfun.hpp"

namespace kpz {

// Pressure function with its first two derivatives.
struct MacroProfile {
  std::string name;
  std::function<double(double)> P, dP, d2P;

  static MacroProfile point_interaction();  // P = 1/l
  static MacroProfile gaussian_chain();     // P = l
  // Derivatives by central differences of a supplied P.
  static MacroProfile from_function(std::string name, std::function<double(double)> P, double h = 1e-4);
};

// Self-similar height profile; t is the clock of the printed formula.
// 2 sqrt(u t) on 0 <= u <= t, u + t for u >= t.
double lln_profile(double u, double t);

// Leading-order N(a t, t / gamma): a^2 t / 4 for a <= 2, (a - 1) t beyond.
double lln_counts(double a, double t);

struct SaddleData {
  double a;
  double z_c;
  cplx G_at_zc;
  double G1_at_zc;
  double G2_at_zc;
  double G3_at_zc;
};

// G(z) = -z^2/2 - a z - (a^2/4) log z (principal log) and derivatives.
cplx saddle_G(cplx z, double a);
cplx saddle_dG(cplx z, double a);
cplx saddle_d2G(cplx z, double a);
cplx saddle_d3G(cplx z, double a);
SaddleData saddle_data(double a);

// r_i = -(a/2)^{-2/3} t^{-1/3} (N_i - a^2 t / 4).
std::vector<double> rescale_fluctuations(const std::vector<double>& counts, double a, double t);

struct KpzConstants {
  double A = 0.0;
  double lambda = 0.0;
  double sign = 0.0;        // multiplies the scale in the event x - mean <= sign * scale * s
  double scale_coeff = 0.0; // scale(t) = (scale_coeff * t)^{1/3}
  double linear = 0.0;      // coefficient of t in the deterministic term
  double index_rate = 0.0;  // stationary case: label floor(index_rate * t)
  double scale(double t) const;
};

// Wedge: scale (|lambda| A^2 t / 2)^{1/3}, sign -sgn(phi''); phi_second_sign is +1 for
// the sup profile and -1 for the inf profile.
KpzConstants kpz_constants_wedge(double ell0, double gamma, const MacroProfile& profile, double phi_second_sign);
// Flat: scale (|lambda| A^2 t)^{1/3}, deterministic term (u l + gamma P(l)) t.
KpzConstants kpz_constants_flat(double ell, double u, double gamma, const MacroProfile& profile);
// Stationary: label -gamma P'(l) t, deterministic term (-l P'(l) + P(l)) gamma t.
KpzConstants kpz_constants_stationary(double ell, double gamma, const MacroProfile& profile);

// sup (or inf) over l in [l_minus, l_plus] of l y + gamma P(l).
double kpz_profile_wedge(double y, double ell_minus, double ell_plus, double gamma, const MacroProfile& profile,
                         bool sup = true);

// Finite-t pipeline: first n_particles points of a Poisson(1) process on the
// half-line, evolved for diffusion time t / gamma, counted at u = a t.
struct ScalingRun {
  double a = 1.0;
  double t = 50.0;
  double sde_time = 0.0;
  std::vector<double> counts;
  double mean_count = 0.0;
  double lln = 0.0;
  std::vector<double> r;     // rescaled fluctuations
  double ks = 0.0;           // sup |F_emp(r) - F_GUE(r)|
  double ks_lattice = 0.0;   // same sup restricted to the attainable values of r
  std::string echo;
};
// sim supplies params, dt, scheme, n_paths, seed; its t_end is overridden.
ScalingRun scaling_experiment(double a, double t, std::size_t n_particles, const SimSpec& sim,
                              bool compare_gue = true);

}  // namespace kpz
