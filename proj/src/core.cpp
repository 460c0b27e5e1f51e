#include "kpz/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "kpz/errors.hpp"

namespace kpz {

ModelParams ModelParams::from_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorClass::invalid_input, "p must lie in [0,1]");
  ModelParams m;
  m.p = p;
  m.q = 1.0 - p;
  m.tau = m.q > 0.0 ? p / m.q : std::numeric_limits<double>::infinity();
  m.gamma = m.q - m.p;
  return m;
}

ModelParams ModelParams::from_tau(double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) fail(ErrorClass::invalid_input, "tau must be finite and >= 0");
  ModelParams m;
  m.q = 1.0 / (1.0 + tau);
  m.p = tau / (1.0 + tau);
  m.tau = tau;
  m.gamma = m.q - m.p;
  return m;
}

void ModelParams::require_analytic() const {
  if (!(tau > 0.0 && tau < 1.0)) fail(ErrorClass::domain, "analytic formulas need 0 < tau < 1");
}

Config::Config(std::vector<double> positions, Chamber chamber)
    : pos_(std::move(positions)), chamber_(chamber) {
  for (double v : pos_)
    if (!std::isfinite(v)) fail(ErrorClass::invalid_input, "non-finite coordinate");
  if (chamber_ == Chamber::increasing)
    std::sort(pos_.begin(), pos_.end());
  else
    std::sort(pos_.begin(), pos_.end(), std::greater<double>());
}

void Config::require(Chamber expected, const char* what) const {
  if (chamber_ != expected)
    fail(ErrorClass::invalid_input,
         std::string(what) + ": configuration is tagged with the wrong chamber");
}

double duality_H(const Config& x, const Config& y, const ModelParams& params) {
  x.require(Chamber::decreasing, "duality_H(x)");
  y.require(Chamber::increasing, "duality_H(y)");
  params.require_analytic();
  long k = 0;
  for (double xj : x.positions())
    for (double yi : y.positions()) k += (xj - yi > 0.0);
  return std::pow(params.tau, static_cast<double>(k));
}

double f_n_initial(const Config& x, const ModelParams& params) {
  x.require(Chamber::decreasing, "f_n_initial");
  params.require_analytic();
  // x is decreasing, so the positive coordinates form a prefix (sector S_l).
  double s = 0.0, w = 1.0;
  for (double xj : x.positions()) {
    if (!(xj > 0.0)) break;
    s += w * xj;
    w *= params.tau;
  }
  return std::exp(-(1.0 - params.tau) * s);
}

std::size_t count_left(double u, const double* y, std::size_t m) {
  return static_cast<std::size_t>(std::upper_bound(y, y + m, u) - y);
}

std::size_t count_left(double u, const Config& y) {
  y.require(Chamber::increasing, "count_left");
  return count_left(u, y.positions().data(), y.size());
}

}  // namespace kpz
