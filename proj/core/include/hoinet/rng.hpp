#ifndef HOINET_RNG_HPP
#define HOINET_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace hoinet {

/// splitmix64 finalizer, used to spread raw seeds and stream ids.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Maps a (seed, stream) pair to a well-separated 64-bit seed, so that
/// parallel workers get independent, reproducible draws.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed + 0x9e3779b97f4a7c15ULL * (stream + 1));
}

/// Deterministic random source: mt19937_64 underneath, uniforms from the
/// top 53 bits, gaussians via Box-Muller. All draws are fully specified
/// by the (seed, stream) pair, independent of platform and scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(mix64(seed)) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : gen_(derive_seed(seed, stream)) {}

  /// Raw 64-bit draw (e.g. for deriving child seeds).
  std::uint64_t bits() { return gen_(); }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Standard normal draw.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  /// Uniform integer in [0, n). Modulo bias is ~n / 2^64, negligible at
  /// the sample counts used here.
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

  /// In-place Fisher-Yates shuffle.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace hoinet

#endif
