#include "kpz/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "kpz/errors.hpp"

namespace kpz {

double ks_distance(std::vector<double> s, const std::function<double(double)>& cdf) {
  if (s.empty()) fail(ErrorClass::invalid_input, "KS distance of an empty sample");
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    // ties: evaluate at the last copy so both one-sided limits are covered
    if (i + 1 < s.size() && s[i + 1] == s[i]) continue;
    std::size_t first = i;
    while (first > 0 && s[first - 1] == s[i]) --first;
    double F = cdf(s[i]);
    d = std::max(d, std::abs((i + 1) / n - F));
    d = std::max(d, std::abs(F - first / n));
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) fail(ErrorClass::invalid_input, "KS distance of an empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

double ks_pvalue(double d, std::size_t n, std::size_t m) {
  const double ne = double(n) * m / (n + m);
  const double lam = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  if (lam < 1e-3) return 1.0;
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lam * lam);
    s += term;
    if (std::abs(term) < 1e-16) break;
  }
  return std::clamp(s, 0.0, 1.0);
}

namespace detail {
struct SplineHolder {
  boost::math::interpolators::cardinal_cubic_b_spline<double> s;
};
}  // namespace detail

Tabulated::Tabulated(const std::function<double(double)>& f, double lo, double hi, std::size_t n)
    : lo_(lo), hi_(hi), h_((hi - lo) / (n - 1)) {
  if (n < 4 || !(hi > lo)) fail(ErrorClass::invalid_input, "table needs at least 4 points on a proper interval");
  v_.resize(n);
  for (std::size_t i = 0; i < n; ++i) v_[i] = f(lo + i * h_);
  build();
}

Tabulated::Tabulated(std::vector<double> values, double lo, double hi)
    : v_(std::move(values)), lo_(lo), hi_(hi), h_((hi - lo) / (v_.size() - 1)) {
  if (v_.size() < 4 || !(hi > lo)) fail(ErrorClass::invalid_input, "table needs at least 4 points on a proper interval");
  build();
}

void Tabulated::build() {
  spline_ = std::make_shared<const detail::SplineHolder>(
      detail::SplineHolder{boost::math::interpolators::cardinal_cubic_b_spline<double>(v_.begin(), v_.end(), lo_, h_)});
}

double Tabulated::operator()(double x) const {
  if (x <= lo_) return v_.front();
  if (x >= hi_) return v_.back();
  return spline_->s(x);
}

}  // namespace kpz
