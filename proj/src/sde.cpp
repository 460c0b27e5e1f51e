#include "kpz/sde.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kpz/errors.hpp"
#include "kpz/parallel.hpp"

namespace kpz {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::oblique_projection: return "oblique-projection";
    case Scheme::oblique_bridge: return "oblique-bridge";
    case Scheme::potential: return "potential";
  }
  return "?";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "oblique-projection" || name == "projection") return Scheme::oblique_projection;
  if (name == "oblique-bridge" || name == "bridge") return Scheme::oblique_bridge;
  if (name == "potential") return Scheme::potential;
  fail(ErrorClass::invalid_input, "unknown scheme '" + name + "'");
}

double potential_V(double u) {
  double a = std::abs(u);
  if (a >= 1.0) return 0.0;
  if (a == 0.0) fail(ErrorClass::domain, "potential evaluated at contact");
  double r = 1.0 - a;
  return r * r * r / a;
}

double potential_dV(double u) {
  double a = std::abs(u);
  if (a >= 1.0) return 0.0;
  if (a == 0.0) fail(ErrorClass::domain, "potential evaluated at contact");
  double r = 1.0 - a;
  double d = -r * r * (1.0 + 2.0 * a) / (a * a);
  return u > 0.0 ? d : -d;
}

void SimSpec::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorClass::invalid_input, "dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) fail(ErrorClass::invalid_input, "t_end must be >= 0");
  if (n_paths < 1) fail(ErrorClass::invalid_input, "n_paths must be >= 1");
  if (!(params.p >= 0.0 && params.p <= 1.0) || std::abs(params.p + params.q - 1.0) > 1e-12)
    fail(ErrorClass::invalid_input, "need p + q = 1 with 0 <= p <= 1");
  if (scheme == Scheme::potential) {
    const double e = potential.epsilon;
    if (!(e > 0.0)) fail(ErrorClass::invalid_input, "epsilon must be positive");
    if (dt > e * e / 10.0 * (1.0 + 1e-12))
      fail(ErrorClass::step_size, "potential scheme needs dt <= epsilon^2/10");
  }
}

std::size_t SimSpec::n_steps() const {
  if (t_end == 0.0) return 0;
  return static_cast<std::size_t>(std::max(1.0, std::ceil(t_end / dt - 1e-9)));
}

std::string SimSpec::echo() const {
  std::ostringstream os;
  os.precision(17);
  os << "p=" << params.p << " q=" << params.q << " dt=" << dt << " t_end=" << t_end << " n_paths=" << n_paths
     << " seed=" << seed << " scheme=" << scheme_name(scheme);
  if (scheme == Scheme::potential) os << " epsilon=" << potential.epsilon << " V=" << potential.form_id;
  return os.str();
}

McRun summarize(const std::string& estimator, const std::vector<double>& samples, std::uint64_t seed,
                const std::string& echo) {
  McRun r;
  r.estimator = estimator;
  r.n_paths = samples.size();
  r.seed = seed;
  r.spec_echo = echo;
  if (samples.empty()) return r;
  double s = 0.0;
  for (double v : samples) s += v;
  r.mean = s / samples.size();
  double ss = 0.0;
  for (double v : samples) ss += (v - r.mean) * (v - r.mean);
  r.variance = samples.size() > 1 ? ss / (samples.size() - 1) : 0.0;
  r.stderr_ = std::sqrt(r.variance / samples.size());
  return r;
}

Stream path_noise_stream(std::uint64_t seed, std::uint64_t path) { return seed_stream(seed, 2 * path); }
Stream path_aux_stream(std::uint64_t seed, std::uint64_t path) { return seed_stream(seed, 2 * path + 1); }

namespace {

// Alternating sweeps of the pairwise p/q projection. Each resolved pair ends
// exactly tied, so Delta = 0 never moves anything.
void project(std::vector<double>& y, double p) {
  const std::size_t m = y.size();
  if (m < 2) return;
  const std::size_t cap = std::max<std::size_t>(m * m, 64);
  auto resolve = [&](std::size_t j) {
    double d = y[j] - y[j + 1];
    if (d <= 0.0) return false;
    double v = y[j] - p * d;
    y[j] = y[j + 1] = v;
    return true;
  };
  for (std::size_t pass = 0; pass < cap; ++pass) {
    bool moved = false;
    if (pass % 2 == 0) {
      for (std::size_t j = 0; j + 1 < m; ++j) moved |= resolve(j);
    } else {
      for (std::size_t j = m - 1; j-- > 0;) moved |= resolve(j);
    }
    if (!moved) return;
  }
  // Clusters contract geometrically; whatever is left is at rounding level.
  double worst = 0.0, scale = 1.0;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    worst = std::max(worst, y[j] - y[j + 1]);
    scale = std::max(scale, std::abs(y[j]));
  }
  if (worst > 1e-10 * scale) fail(ErrorClass::diverged, "projection sweep did not reach the chamber");
  for (std::size_t j = 0; j + 1 < m; ++j)
    if (y[j] > y[j + 1]) y[j + 1] = y[j];
}

void check_finite(const std::vector<double>& y) {
  for (double v : y)
    if (!std::isfinite(v)) fail(ErrorClass::diverged, "non-finite particle position");
}

constexpr int kMaxRefine = 30;

void potential_drift(const std::vector<double>& y, double p, double q, double eps, std::vector<double>& drift) {
  std::fill(drift.begin(), drift.end(), 0.0);
  for (std::size_t j = 0; j + 1 < y.size(); ++j) {
    double g = y[j + 1] - y[j];
    if (g >= eps) continue;
    double f = potential_dV(g / eps) / eps;
    drift[j] += p * f;
    drift[j + 1] -= q * f;
  }
}

// Euler step over [0,h] with increments dw. The step is halved (midpoint from
// the Brownian bridge) when it would cross, when drift moves a gap by more than
// half of it, or when a gap inside the potential range more than halves. Returns false if the depth limit is hit.
bool potential_step(std::vector<double>& y, const std::vector<double>& dw, double h, double p, double q,
                    double eps, Stream& aux, int depth) {
  const std::size_t m = y.size();
  std::vector<double> drift(m), trial(m);
  potential_drift(y, p, q, eps, drift);
  bool ok = true;
  for (std::size_t j = 0; j < m; ++j) trial[j] = y[j] + drift[j] * h + dw[j];
  for (std::size_t j = 0; ok && j + 1 < m; ++j) {
    double g = y[j + 1] - y[j], g1 = trial[j + 1] - trial[j];
    if (!(g1 > 0.0) || std::abs(drift[j + 1] - drift[j]) * h > 0.5 * g) ok = false;
    if (g1 < eps && g1 < 0.5 * g) ok = false;
  }
  if (ok) {
    y.swap(trial);
    return true;
  }
  if (depth >= kMaxRefine) return false;
  std::vector<double> w1(m), w2(m);
  const double s = std::sqrt(h / 4.0);
  for (std::size_t j = 0; j < m; ++j) {
    w1[j] = 0.5 * dw[j] + s * aux.normal();
    w2[j] = dw[j] - w1[j];
  }
  return potential_step(y, w1, 0.5 * h, p, q, eps, aux, depth + 1) &&
         potential_step(y, w2, 0.5 * h, p, q, eps, aux, depth + 1);
}

}  // namespace

void evolve_path(const SimSpec& spec, std::vector<double>& y, Stream& noise, Stream& aux,
                 const StepObserver* observer) {
  const std::size_t K = spec.n_steps();
  const std::size_t m = y.size();
  const double h = K ? spec.t_end / K : 0.0;
  const double sh = std::sqrt(h);
  const double p = spec.params.p, q = spec.params.q;
  const double eps = spec.potential.epsilon;
  std::vector<double> gap0(m ? m - 1 : 0), lam(m ? m - 1 : 0), drift(m);

  if (observer) (*observer)(0, 0.0, y);
  for (std::size_t k = 1; k <= K; ++k) {
    switch (spec.scheme) {
      case Scheme::oblique_projection:
        for (std::size_t j = 0; j < m; ++j) y[j] += sh * noise.normal();
        project(y, p);
        break;
      case Scheme::oblique_bridge:
        for (std::size_t j = 0; j + 1 < m; ++j) gap0[j] = y[j + 1] - y[j];
        for (std::size_t j = 0; j < m; ++j) y[j] += sh * noise.normal();
        // Local time of each free pair gap over the step from the exact law of
        // the Brownian-bridge minimum (gap diffusivity 2).
        for (std::size_t j = 0; j + 1 < m; ++j) {
          double g0 = gap0[j], g1 = y[j + 1] - y[j];
          lam[j] = 0.0;
          if (g0 > 0.0 && g1 > 0.0 && g0 * g1 / h > 40.0) continue;
          double e = -std::log(aux.uniform());
          double mn = 0.5 * (g0 + g1 - std::sqrt((g1 - g0) * (g1 - g0) + 4.0 * h * e));
          lam[j] = std::max(0.0, -mn);
        }
        for (std::size_t j = 0; j + 1 < m; ++j) {
          if (lam[j] == 0.0) continue;
          y[j] -= p * lam[j];
          y[j + 1] += q * lam[j];
        }
        project(y, p);
        break;
      case Scheme::potential: {
        for (std::size_t j = 0; j < m; ++j) drift[j] = sh * noise.normal();
        if (!potential_step(y, drift, h, p, q, eps, aux, 0)) {
          std::ostringstream os;
          os << "potential step " << k << " (t=" << k * h << ") still crosses after " << kMaxRefine
             << " halvings; reduce dt below " << h;
          fail(ErrorClass::step_size, os.str());
        }
        break;
      }
    }
    check_finite(y);
    if (observer) (*observer)(k, k * h, y);
  }
}

namespace {

std::vector<Config> run_batch(const SimSpec& spec, const Config& y0, const PathObserverFactory& obs) {
  spec.validate();
  y0.require(Chamber::increasing, "simulate");
  std::vector<Config> out(spec.n_paths);
  parallel_for(spec.n_paths, [&](std::size_t i) {
    std::vector<double> y = y0.positions();
    Stream noise = path_noise_stream(spec.seed, i);
    Stream aux = path_aux_stream(spec.seed, i);
    StepObserver* o = obs ? obs(i) : nullptr;
    evolve_path(spec, y, noise, aux, o);
    out[i] = Config(std::move(y), Chamber::increasing);
  });
  return out;
}

}  // namespace

std::vector<Config> simulate_oblique(const SimSpec& spec, const Config& y0, const PathObserverFactory& obs) {
  if (spec.scheme == Scheme::potential)
    fail(ErrorClass::invalid_input, "simulate_oblique needs an oblique scheme");
  return run_batch(spec, y0, obs);
}

std::vector<Config> simulate_dual(const SimSpec& spec, const Config& x0, const PathObserverFactory& obs) {
  x0.require(Chamber::decreasing, "simulate_dual");
  if (spec.scheme == Scheme::potential) fail(ErrorClass::invalid_input, "simulate_dual needs an oblique scheme");
  // Reversing the labels turns the dual into the primal system with p and q swapped.
  SimSpec s = spec;
  s.params = spec.params.swapped();
  std::vector<double> w(x0.positions().rbegin(), x0.positions().rend());
  std::vector<Config> raw = run_batch(s, Config::increasing(w), obs);
  std::vector<Config> out;
  out.reserve(raw.size());
  for (auto& c : raw) out.push_back(Config::decreasing(c.positions()));
  return out;
}

std::vector<Config> simulate_potential(const SimSpec& spec, const Config& y0, const PathObserverFactory& obs) {
  if (spec.scheme != Scheme::potential) fail(ErrorClass::invalid_input, "simulate_potential needs the potential scheme");
  return run_batch(spec, y0, obs);
}

CouplingResult potential_coupling(const SimSpec& spec, const Config& y0, const std::vector<double>& eps) {
  spec.validate();
  y0.require(Chamber::increasing, "potential_coupling");
  if (spec.scheme == Scheme::potential) fail(ErrorClass::invalid_input, "reference scheme must be oblique");
  std::vector<SimSpec> pots;
  for (double e : eps) {
    SimSpec s = spec;
    s.scheme = Scheme::potential;
    s.potential.epsilon = e;
    s.validate();
    pots.push_back(s);
  }
  for (std::size_t j = 0; j + 1 < y0.size(); ++j)
    if (!(y0[j + 1] > y0[j])) fail(ErrorClass::invalid_input, "potential start needs strictly ordered positions");
  std::vector<std::vector<double>> sq(eps.size(), std::vector<double>(spec.n_paths));
  parallel_for(spec.n_paths, [&](std::size_t i) {
    const Stream noise0 = path_noise_stream(spec.seed, i);
    std::vector<double> y = y0.positions();
    Stream noise = noise0;
    Stream aux = path_aux_stream(spec.seed, i);
    evolve_path(spec, y, noise, aux);
    for (std::size_t e = 0; e < eps.size(); ++e) {
      std::vector<double> x = y0.positions();
      Stream n2 = noise0;
      Stream a2 = path_aux_stream(spec.seed, i);
      evolve_path(pots[e], x, n2, a2);
      double s = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) s += (x[j] - y[j]) * (x[j] - y[j]);
      sq[e][i] = s;
    }
  });
  CouplingResult r;
  r.epsilon = eps;
  for (std::size_t e = 0; e < eps.size(); ++e)
    r.msd.push_back(summarize("E|x_eps-y|^2", sq[e], spec.seed, pots[e].echo()));
  return r;
}

}  // namespace kpz
