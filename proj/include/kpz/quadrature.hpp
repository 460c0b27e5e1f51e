#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace kpz {

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

// n-point Gauss-Legendre rule on [-1, 1] (cached per n).
const Rule& gauss_legendre(int n);

// Composite Gauss-Legendre over consecutive breakpoints.
Rule composite_gl(const std::vector<double>& breaks, int m);

// A point where the integrand is nearly singular: real location along the
// integration variable and distance of the singularity from the real line.
struct NearSingularity {
  double loc;
  double dist;
};

// Composite GL on [lo, hi] whose panels shrink geometrically toward each near
// singularity (smallest panel ~ dist, growth factor ratio), with base panels
// no longer than hmax.
Rule graded_rule(double lo, double hi, const std::vector<NearSingularity>& sing, double hmax, int m,
                 double ratio = 2.0);

}  // namespace kpz
