#pragma once
// Internal seeded sampler. Draws are laid out by hand (rather than through
// std:: distributions) so that a fixed seed reproduces the same sequence on
// any standard library.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace relay::detail {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1) with 53-bit resolution.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double unit_positive() {
    double u = unit();
    while (u <= 0.0) u = unit();
    return u;
  }

  double exponential() { return -std::log(unit_positive()); }

  // Standard normal via Box-Muller; the spare value is deliberately dropped.
  double normal() {
    const double u1 = unit_positive();
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  // Marsaglia-Tsang; valid for any shape > 0.
  double gamma(double shape) {
    if (shape < 1.0) {
      return gamma(shape + 1.0) * std::pow(unit_positive(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      const double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      const double u = unit_positive();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
  }

  std::vector<double> dirichlet(std::size_t dim, double concentration) {
    std::vector<double> w(dim);
    double sum = 0.0;
    for (auto& v : w) {
      v = concentration == 1.0 ? exponential() : gamma(concentration);
      sum += v;
    }
    if (sum <= 0.0) {  // vanishingly unlikely; fall back to uniform
      for (auto& v : w) v = 1.0 / static_cast<double>(dim);
      return w;
    }
    for (auto& v : w) v /= sum;
    return w;
  }

  // Uniform integer in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(eng_() % (hi - lo + 1));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace relay::detail
