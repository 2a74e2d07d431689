#pragma once

// Deterministic random streams. Every stochastic entity in a simulation run
// (a node's mobility, the link layer, each agent) pulls from its own stream,
// derived from the episode seed and a (tag, id) pair. This keeps paired
// experiment sweeps aligned: changing one parameter does not shift the draws
// consumed by unrelated entities.

#include <cmath>
#include <cstdint>
#include <random>

namespace manetmc {

// splitmix64: used only to whiten (seed, tag, id) into engine seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  Rng() : eng_(0) {}
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  static Rng derive(std::uint64_t seed, std::uint64_t tag, std::uint64_t id = 0) {
    return Rng(mix64(mix64(seed ^ mix64(tag)) ^ mix64(id)));
  }

  // Uniform in [0, 1). 53-bit mantissa; identical across platforms for a
  // given seed, unlike std::uniform_real_distribution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  // Uniform in [-1, 1].
  double uniform_signed() { return 2.0 * uniform() - 1.0; }

  // Uniform integer in [0, n).
  int index(int n) {
    int k = static_cast<int>(uniform() * n);
    return k < n ? k : n - 1;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Inverse-CDF sample of the Weibull(shape, scale) distribution.
  double weibull(double shape, double scale) {
    double u = uniform();
    return scale * std::pow(-std::log1p(-u), 1.0 / shape);
  }

  // Exponential with the given mean.
  double exponential(double mean) {
    return -mean * std::log1p(-uniform());
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace manetmc
