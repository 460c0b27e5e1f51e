#pragma once

#include <cstddef>
#include <vector>

namespace kpz {

// Asymmetry weights. p pushes left on contact, q pushes right.
struct ModelParams {
  double p = 0.5;
  double q = 0.5;
  double tau = 1.0;    // p / q (infinite when q == 0)
  double gamma = 0.0;  // q - p

  static ModelParams from_p(double p);
  static ModelParams from_tau(double tau);

  // Throws a domain error unless 0 < tau < 1.
  void require_analytic() const;
  // Roles of p and q interchanged.
  ModelParams swapped() const { return from_p(q); }
};

enum class Chamber { increasing, decreasing };

// Ordered particle configuration. Input is sorted into the requested chamber.
class Config {
 public:
  Config() = default;
  Config(std::vector<double> positions, Chamber chamber);

  static Config increasing(std::vector<double> positions) {
    return Config(std::move(positions), Chamber::increasing);
  }
  static Config decreasing(std::vector<double> positions) {
    return Config(std::move(positions), Chamber::decreasing);
  }

  Chamber chamber() const { return chamber_; }
  std::size_t size() const { return pos_.size(); }
  double operator[](std::size_t i) const { return pos_[i]; }
  const std::vector<double>& positions() const { return pos_; }

  void require(Chamber expected, const char* what) const;

 private:
  std::vector<double> pos_;
  Chamber chamber_ = Chamber::increasing;
};

inline double theta(double u) { return u > 0.0 ? 1.0 : 0.0; }

double duality_H(const Config& x, const Config& y, const ModelParams& params);

double f_n_initial(const Config& x, const ModelParams& params);

std::size_t count_left(double u, const Config& y);
std::size_t count_left(double u, const double* y, std::size_t m);

}  // namespace kpz
