#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bintree {

/// A root-to-leaf path of `steps` up(1)/down(0) moves packed in an integer.
///
/// Step 1 is the most significant of the `steps` used bits, so the leading r
/// bits of a code are the r-bit prefix that selects a worker's block.
class BernoulliPath {
 public:
  constexpr BernoulliPath() = default;
  constexpr BernoulliPath(std::uint64_t code, int steps) noexcept : code_(code), steps_(steps) {}

  /// Packs bits[0] as step 1. Each entry must be 0 or 1.
  static BernoulliPath from_bits(std::span<const int> bits);

  constexpr std::uint64_t code() const noexcept { return code_; }
  constexpr int steps() const noexcept { return steps_; }

  /// Move at step t, 1-based.
  constexpr bool up(int t) const noexcept { return (code_ >> (steps_ - t)) & 1U; }

  int up_count() const noexcept;

  std::vector<int> bits() const;

  friend constexpr bool operator==(BernoulliPath, BernoulliPath) = default;

 private:
  std::uint64_t code_ = 0;
  int steps_ = 0;
};

}  // namespace bintree
