#pragma once

#include <cstdint>
#include <random>

namespace bintree {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent random stream keyed by (master seed, stream index, repetition).
///
/// The key is hashed into the seed of a 64-bit Mersenne Twister, so a draw
/// depends only on the key and its position in the stream, never on which
/// thread consumes it.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t repetition)
      : engine_(key(seed, stream, repetition)) {}

  static std::uint64_t key(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t repetition) noexcept {
    return mix64(mix64(mix64(seed) ^ stream) + repetition);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bintree
