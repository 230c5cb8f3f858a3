#ifndef SPHEREGRF_RNG_HPP
#define SPHEREGRF_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace spheregrf {

/// splitmix64 step, used to decorrelate (base_seed, sample_index) pairs.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for one Monte Carlo sample: depends only on (base_seed, sample_index),
/// never on scheduling, so samples are reproducible under any worker count.
constexpr std::uint64_t sample_seed(std::uint64_t base_seed, std::uint64_t sample_index) {
  return splitmix64(splitmix64(base_seed) ^ splitmix64(sample_index + 1));
}

/// Standard normal draws via Box-Muller on explicit 53-bit uniforms.
/// std::normal_distribution is implementation-defined; this sampler pins the
/// exact stream for the reproducibility contract.
class GaussianSampler {
public:
  explicit GaussianSampler(std::uint64_t seed) : gen_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53; // (0, 1]
    const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;         // [0, 1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

} // namespace spheregrf

#endif
