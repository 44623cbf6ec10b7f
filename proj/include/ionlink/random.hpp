#ifndef IONLINK_RANDOM_HPP
#define IONLINK_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace ionlink {

// Deterministic random stream. Batch runs derive one substream per trial from a
// master seed, so results are reproducible regardless of execution order or the
// number of worker threads. All draws go through this wrapper; draw counts per
// logical event are fixed so call sequences stay stable across code paths.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(mix(seed)) {}

  static RandomStream substream(std::uint64_t master_seed, std::uint64_t index) {
    return RandomStream(master_seed ^ (0x9e3779b97f4a7c15ull * (index + 1)));
  }

  // Derived seed for labelling a substream in output (same mix as substream()).
  static std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
    return mix(master_seed ^ (0x9e3779b97f4a7c15ull * (index + 1)));
  }

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Normal(0, sigma) via Box-Muller; always consumes exactly two uniforms.
  double gaussian(double sigma) {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return sigma * r * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  static std::uint64_t mix(std::uint64_t x) {  // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace ionlink

#endif
