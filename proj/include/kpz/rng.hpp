#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <boost/random/uniform_01.hpp>

namespace kpz {

// One reproducible random stream. The engine is mt19937_64 seeded through
// std::seed_seq, both of which are fully specified by the C++ standard, and
// the variates come from Boost.Random, so a given (master, index) pair yields
// the same draws on every platform.
class Stream {
 public:
  using Engine = std::mt19937_64;

  Stream() = default;
  explicit Stream(const Engine& e) : eng_(e) {}

  double normal() { return boost::random::normal_distribution<double>(0.0, 1.0)(eng_); }
  // Uniform on the open interval (0,1).
  double uniform() {
    double u;
    do u = boost::random::uniform_01<double>()(eng_);
    while (u <= 0.0);
    return u;
  }
  double exponential(double rate) { return boost::random::exponential_distribution<double>(rate)(eng_); }
  long poisson(double mean) {
    if (mean <= 0.0) return 0;
    return boost::random::poisson_distribution<long, double>(mean)(eng_);
  }
  std::uint64_t bits() { return eng_(); }

  std::string serialize() const;
  static Stream deserialize(const std::string& state);

  Engine& engine() { return eng_; }

 private:
  Engine eng_;
};

Stream seed_stream(std::uint64_t master_seed, std::uint64_t index);

}  // namespace kpz
