#include "kpz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "kpz/errors.hpp"

namespace kpz {

namespace {

Rule compute_gl(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // one more evaluation at the converged root for the weight
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return r;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  if (n < 1) fail(ErrorClass::invalid_input, "Gauss-Legendre order must be positive");
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard<std::mutex> g(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
  return it->second;
}

Rule composite_gl(const std::vector<double>& breaks, int m) {
  const Rule& g = gauss_legendre(m);
  Rule r;
  r.x.reserve((breaks.size() - 1) * m);
  r.w.reserve((breaks.size() - 1) * m);
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    double a = breaks[k], b = breaks[k + 1];
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    if (h <= 0.0) continue;
    for (int i = 0; i < m; ++i) {
      r.x.push_back(c + h * g.x[i]);
      r.w.push_back(h * g.w[i]);
    }
  }
  return r;
}

Rule graded_rule(double lo, double hi, const std::vector<NearSingularity>& sing, double hmax, int m,
                 double ratio) {
  if (!(ratio > 1.0)) fail(ErrorClass::invalid_input, "grading ratio must exceed 1");
  std::vector<double> br{lo, hi};
  for (const auto& s : sing) {
    if (s.loc < lo - s.dist || s.loc > hi + s.dist) continue;
    double d = std::max(s.dist, 1e-12);
    br.push_back(std::clamp(s.loc, lo, hi));
    for (double step = d; step < (hi - lo); step *= ratio) {
      if (s.loc - step > lo) br.push_back(s.loc - step);
      if (s.loc + step < hi) br.push_back(s.loc + step);
    }
  }
  std::sort(br.begin(), br.end());
  // split long panels
  std::vector<double> out;
  out.push_back(br.front());
  for (std::size_t k = 1; k < br.size(); ++k) {
    double a = out.back(), b = br[k];
    if (b - a <= 1e-14 * std::max(1.0, std::abs(b))) continue;
    int pieces = static_cast<int>(std::ceil((b - a) / hmax));
    for (int j = 1; j <= pieces; ++j) out.push_back(a + (b - a) * j / pieces);
  }
  return composite_gl(out, m);
}

}  // namespace kpz
