#pragma once

#include <cstdint>
#include <vector>

#include "kpz/core.hpp"
#include "kpz/rng.hpp"
#include "kpz/sde.hpp"

namespace kpz {

// Continuous-time ASEP on Z. Primal particles jump right at rate p and left at
// rate q; dual particles use the interchanged rates. Sites are kept increasing.
struct AsepState {
  std::vector<long long> sites;
  ModelParams params;
  double time = 0.0;
  bool dual = false;

  void validate() const;
};

// Runs the exact jump dynamics from state.time up to absolute time t_end.
AsepState simulate_asep(const AsepState& initial, double t_end, Stream& stream);
AsepState simulate_asep(const AsepState& initial, double t_end, std::uint64_t seed);

// Moving-frame diffusive rescaling. With s = floor((p-q) t / eps^2):
// primal y = eps (w - s), increasing; dual x = eps (w + s), decreasing.
// state.time is the microscopic time eps^-2 t.
Config rescale_diffusive(const AsepState& state, double epsilon);

// Lattice sites of an eps-aligned configuration (throws if not aligned).
std::vector<long long> lattice_sites(const Config& c, double epsilon);

struct AsepDuality {
  McRun lhs;  // E_x H(x^eps(t), y0) over dual runs
  McRun rhs;  // E_y H(x0, y^eps(t)) over primal runs
  double combined_stderr = 0.0;
};

AsepDuality asep_duality_check(const Config& x0, const Config& y0, double t, double epsilon,
                               const ModelParams& params, std::size_t n_samples, std::uint64_t seed);

}  // namespace kpz
