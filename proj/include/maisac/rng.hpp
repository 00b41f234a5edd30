#ifndef MAISAC_RNG_HPP_
#define MAISAC_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

#include "maisac/core.hpp"

namespace maisac {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace detail

/// Deterministic sub-stream of the root seed, keyed by (purpose, index).
/// Streams with distinct keys never share draws, so re-running one algorithm
/// cannot perturb the randomness consumed by another.
class Rng {
 public:
  Rng(std::uint64_t root_seed, std::string_view purpose, std::uint64_t index = 0) {
    std::uint64_t state = root_seed ^ detail::fnv1a64(purpose);
    std::uint64_t key = detail::splitmix64(state);
    state ^= index * 0x9E3779B97F4A7C15ULL;
    key ^= detail::splitmix64(state);
    engine_.seed(key);
  }

  /// Uniform draw in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

  /// Standard circularly-symmetric complex Gaussian CN(0, 1).
  cplx cgauss() {
    const double re = normal();
    const double im = normal();
    return cplx(re, im) / std::sqrt(2.0);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace maisac

#endif  // MAISAC_RNG_HPP_
