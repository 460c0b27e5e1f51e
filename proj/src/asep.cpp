#include "kpz/asep.hpp"

#include <algorithm>
#include <cmath>

#include "kpz/errors.hpp"
#include "kpz/parallel.hpp"

namespace kpz {

void AsepState::validate() const {
  for (std::size_t i = 1; i < sites.size(); ++i)
    if (sites[i] <= sites[i - 1]) fail(ErrorClass::invalid_input, "ASEP sites must be strictly increasing");
  if (!(params.p >= 0.0 && params.p <= 1.0)) fail(ErrorClass::invalid_input, "need 0 <= p <= 1");
}

AsepState simulate_asep(const AsepState& initial, double t_end, Stream& stream) {
  initial.validate();
  if (!(t_end >= initial.time)) fail(ErrorClass::invalid_input, "t_end precedes the state time");
  AsepState s = initial;
  const std::size_t m = s.sites.size();
  if (m == 0) {
    s.time = t_end;
    return s;
  }
  const double right = s.dual ? s.params.q : s.params.p;
  // Every particle carries one rate-1 clock; blocked attempts are discarded.
  const double rate = static_cast<double>(m);
  double t = s.time;
  for (;;) {
    t += stream.exponential(rate);
    if (t > t_end) break;
    std::size_t i = std::min<std::size_t>(m - 1, static_cast<std::size_t>(stream.uniform() * m));
    if (stream.uniform() < right) {
      if (i + 1 < m && s.sites[i + 1] == s.sites[i] + 1) continue;
      ++s.sites[i];
    } else {
      if (i > 0 && s.sites[i - 1] == s.sites[i] - 1) continue;
      --s.sites[i];
    }
  }
  s.time = t_end;
  return s;
}

AsepState simulate_asep(const AsepState& initial, double t_end, std::uint64_t seed) {
  Stream s = seed_stream(seed, 0);
  return simulate_asep(initial, t_end, s);
}

Config rescale_diffusive(const AsepState& state, double epsilon) {
  if (!(epsilon > 0.0)) fail(ErrorClass::invalid_input, "epsilon must be positive");
  const double shift = std::floor((state.params.p - state.params.q) * state.time);
  std::vector<double> v;
  v.reserve(state.sites.size());
  for (long long w : state.sites) v.push_back(epsilon * (static_cast<double>(w) + (state.dual ? shift : -shift)));
  return Config(std::move(v), state.dual ? Chamber::decreasing : Chamber::increasing);
}

std::vector<long long> lattice_sites(const Config& c, double epsilon) {
  std::vector<long long> w;
  for (double v : c.positions()) {
    double r = std::round(v / epsilon);
    if (std::abs(v / epsilon - r) > 1e-9) fail(ErrorClass::invalid_input, "configuration is not on the eps-lattice");
    w.push_back(static_cast<long long>(r));
  }
  std::sort(w.begin(), w.end());
  return w;
}

AsepDuality asep_duality_check(const Config& x0, const Config& y0, double t, double epsilon,
                               const ModelParams& params, std::size_t n_samples, std::uint64_t seed) {
  x0.require(Chamber::decreasing, "asep_duality_check");
  y0.require(Chamber::increasing, "asep_duality_check");
  params.require_analytic();
  if (!(t >= 0.0)) fail(ErrorClass::invalid_input, "t must be >= 0");
  if (n_samples < 1) fail(ErrorClass::invalid_input, "need at least one sample");
  AsepState xs{lattice_sites(x0, epsilon), params, 0.0, true};
  AsepState ys{lattice_sites(y0, epsilon), params, 0.0, false};
  xs.validate();
  ys.validate();
  const double T = t / (epsilon * epsilon);
  std::vector<double> a(n_samples), b(n_samples);
  parallel_for(n_samples, [&](std::size_t i) {
    Stream s1 = seed_stream(seed, 2 * i);
    Stream s2 = seed_stream(seed, 2 * i + 1);
    a[i] = duality_H(rescale_diffusive(simulate_asep(xs, T, s1), epsilon), y0, params);
    b[i] = duality_H(x0, rescale_diffusive(simulate_asep(ys, T, s2), epsilon), params);
  });
  AsepDuality r;
  r.lhs = summarize("E_x H(x(t),y)", a, seed, "asep dual");
  r.rhs = summarize("E_y H(x,y(t))", b, seed, "asep primal");
  r.combined_stderr = std::sqrt(r.lhs.stderr_ * r.lhs.stderr_ + r.rhs.stderr_ * r.rhs.stderr_);
  return r;
}

}  // namespace kpz
