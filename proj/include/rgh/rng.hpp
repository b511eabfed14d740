#ifndef RGH_RNG_HPP
#define RGH_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace rgh {

// SplitMix64 (Steele/Lea/Flood 2014). The state advances by a fixed odd
// increment and every output is an avalanche of the state, which makes it
// effectively counter-based: independent streams are derived by hashing a
// (seed, label, label, ...) tuple into a fresh state. Period 2^64.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // UniformRandomBitGenerator interface.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }
  result_type operator()() { return next(); }

 private:
  std::uint64_t state_;
};

// Hashes a token list into a stream seed. Each token is avalanched into the
// running key, so (seed, a, b) and (seed, b, a) give unrelated streams.
inline std::uint64_t derive_seed(std::uint64_t seed,
                                 std::initializer_list<std::uint64_t> tokens) {
  std::uint64_t s = seed;
  for (std::uint64_t t : tokens) {
    SplitMix64 mix(s ^ (t + 0x9e3779b97f4a7c15ull));
    s = mix.next();
  }
  return s;
}

// Role tags for the RNG streams inside one Monte Carlo trial.
enum class StreamRole : std::uint64_t { Nodes = 1, Centers = 2 };

// Per-trial seed for trial `trial` of the level with parameter n, derived
// from the master seed. Independent of thread scheduling by construction.
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t n,
                                std::uint64_t trial) {
  return derive_seed(master_seed, {n, trial});
}

inline std::uint64_t role_seed(std::uint64_t trial_seed, StreamRole role) {
  return derive_seed(trial_seed, {static_cast<std::uint64_t>(role)});
}

// Exact Poisson(mean) draw via Knuth's product method applied to chunks of
// intensity at most 500 (a Poisson sum of Poissons); exp(-500) stays far
// from double underflow, and the cost is O(mean) uniforms.
inline std::uint64_t poisson_draw(SplitMix64& rng, double mean) {
  std::uint64_t total = 0;
  double remaining = mean;
  while (remaining > 0.0) {
    const double chunk = remaining > 500.0 ? 500.0 : remaining;
    remaining -= chunk;
    const double limit = std::exp(-chunk);
    double p = 1.0;
    std::uint64_t k = 0;
    do {
      ++k;
      p *= rng.uniform();
    } while (p > limit);
    total += k - 1;
  }
  return total;
}

}  // namespace rgh

#endif
