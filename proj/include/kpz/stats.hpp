#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace kpz {

// sup_x |F_n(x) - F(x)| for the empirical CDF of samples against a continuous F.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

// sup_x |F_n(x) - G_m(x)| between two empirical CDFs.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Asymptotic two-sample KS p-value (Kolmogorov series).
double ks_pvalue(double d, std::size_t n, std::size_t m);

namespace detail {
struct SplineHolder;
}

// Cubic B-spline interpolant of a smooth function tabulated on a uniform grid,
// clamped to the end values outside [lo, hi].
class Tabulated {
 public:
  Tabulated(const std::function<double(double)>& f, double lo, double hi, std::size_t n);
  Tabulated(std::vector<double> values, double lo, double hi);
  double operator()(double x) const;
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  void build();
  std::vector<double> v_;
  double lo_, hi_, h_;
  std::shared_ptr<const detail::SplineHolder> spline_;
};

}  // namespace kpz
