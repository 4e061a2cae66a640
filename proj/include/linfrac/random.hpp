#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace linfrac {

// splitmix64 finalizer; used to derive independent stream seeds from a base
// seed plus a stream tag so that parallel repetitions are reproducible no
// matter how work is scheduled.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic generator: mt19937_64 core (bit-stable across platforms by
// standard) with our own uniform/normal transforms. std::uniform_real_distribution
// and std::normal_distribution are implementation-defined, so they are avoided;
// this keeps CSV output byte-identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return std::ldexp(static_cast<double>(engine_() >> 11), -53); }

  // Uniform on (0, 1]; used where log(u) must stay finite.
  double uniform_pos() {
    return std::ldexp(static_cast<double>((engine_() >> 11) + 1), -53);
  }

  // Standard normal via Box-Muller; the paired value is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_pos();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Uniform integer in [0, n) without rejection (Lemire multiply-shift).
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace linfrac
