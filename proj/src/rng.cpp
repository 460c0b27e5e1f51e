#include "kpz/rng.hpp"

#include <sstream>

#include "kpz/errors.hpp"

namespace kpz {

Stream seed_stream(std::uint64_t master_seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x6b707a31u};
  return Stream(Stream::Engine(seq));
}

std::string Stream::serialize() const {
  std::ostringstream os;
  os << eng_;
  return os.str();
}

Stream Stream::deserialize(const std::string& state) {
  std::istringstream is(state);
  Engine e;
  is >> e;
  if (is.fail()) fail(ErrorClass::invalid_input, "malformed stream state");
  return Stream(e);
}

}  // namespace kpz
