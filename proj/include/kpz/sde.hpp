#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kpz/core.hpp"
#include "kpz/rng.hpp"

namespace kpz {

enum class Scheme {
  oblique_projection,  // Euler step + pairwise p/q Skorokhod projection
  oblique_bridge,      // pairwise Brownian-bridge local time + projection fallback
  potential,           // Euler-Maruyama with the scaled short-range potential
};

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

// Reference potential V(u) = (1-|u|)^3/|u| on [-1,1], zero outside; delta = 1.
struct PotentialSpec {
  double epsilon = 0.1;
  double delta_exponent = 1.0;
  std::string form_id = "cubic-over-abs";
};

double potential_V(double u);
double potential_dV(double u);  // V'(u)

struct SimSpec {
  ModelParams params;
  double dt = 1e-4;
  double t_end = 1.0;
  std::size_t n_paths = 1;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::oblique_projection;
  PotentialSpec potential;

  void validate() const;
  std::size_t n_steps() const;
  std::string echo() const;
};

struct McRun {
  std::string estimator;
  double mean = 0.0;
  double variance = 0.0;
  double stderr_ = 0.0;
  std::size_t n_paths = 0;
  std::uint64_t seed = 0;
  std::string spec_echo;
};

McRun summarize(const std::string& estimator, const std::vector<double>& samples, std::uint64_t seed,
                const std::string& echo);

// Called after every step (and once at step 0) with the current state.
using StepObserver = std::function<void(std::size_t step, double time, const std::vector<double>& state)>;

// Evolves one increasing-ordered state in place up to spec.t_end.
// noise supplies the Brownian increments; aux feeds the bridge scheme only, so
// all schemes see the same increment sequence from the same noise stream.
void evolve_path(const SimSpec& spec, std::vector<double>& y, Stream& noise, Stream& aux,
                 const StepObserver* observer = nullptr);

// Streams of path i: noise from (seed, 2i), aux from (seed, 2i+1).
Stream path_noise_stream(std::uint64_t seed, std::uint64_t path);
Stream path_aux_stream(std::uint64_t seed, std::uint64_t path);

// Observer factory invoked per path (may return nullptr); must be thread safe.
using PathObserverFactory = std::function<StepObserver*(std::size_t path)>;

std::vector<Config> simulate_oblique(const SimSpec& spec, const Config& y0,
                                     const PathObserverFactory& obs = nullptr);

// Dual particles (decreasing chamber, p and q interchanged): on contact the
// right particle is pushed right by p, the left one left by q.
std::vector<Config> simulate_dual(const SimSpec& spec, const Config& x0,
                                  const PathObserverFactory& obs = nullptr);

std::vector<Config> simulate_potential(const SimSpec& spec, const Config& y0,
                                       const PathObserverFactory& obs = nullptr);

// Potential processes for several epsilon and the oblique reference, all driven
// by the same increments. Returns per-epsilon estimates of E|x^eps(t)-y(t)|^2.
struct CouplingResult {
  std::vector<double> epsilon;
  std::vector<McRun> msd;
};
CouplingResult potential_coupling(const SimSpec& spec, const Config& y0, const std::vector<double>& eps);

}  // namespace kpz
