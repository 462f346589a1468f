#ifndef COAGRAPH_RNG_HPP_
#define COAGRAPH_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

namespace coagraph {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Per-worker stream seed: hash of (master seed, stream index).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

// mt19937_64 is fully specified by the standard, so seeded runs are
// reproducible across platforms; all transforms below are hand-rolled for
// the same reason (std::uniform_* and std::poisson_distribution are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform integer in [0, n), unbiased (rejection on the top band).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return double(gen_() >> 11) * 0x1.0p-53; }

  /// Poisson via product inversion; fine for the small means used here.
  int poisson(double mean) {
    const double limit = std::exp(-mean);
    int k = 0;
    double prod = unit();
    while (prod >= limit) {
      ++k;
      prod *= unit();
    }
    return k;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace coagraph

#endif  // COAGRAPH_RNG_HPP_
