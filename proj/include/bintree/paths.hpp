#pragma once

#include <cstdint>
#include <iterator>
#include <vector>

#include "bintree/bernoulli_path.hpp"
#include "bintree/model.hpp"

namespace bintree {

/// p(x) = prod_t p_t^[x_t = 1] (1 - p_t)^[x_t = 0], as a running product.
double path_probability(const TreeParams& params, BernoulliPath path);

/// Probability of the first `prefix_bits` moves equalling the leading bits of
/// `prefix`.
double prefix_probability(const TreeParams& params, std::uint64_t prefix, int prefix_bits);

class BlockPaths;

/// Assignment of path prefixes to worker ranks.
///
/// Path space is cut into 2^prefix_bits blocks by the leading prefix_bits moves;
/// block b belongs to rank b mod M. With M a power of two, prefix_bits = log2 M
/// and every rank owns exactly the block equal to its rank. Otherwise
/// prefix_bits = min(N, ceil(log2 M) + 4) and blocks are dealt round-robin.
class PathPartition {
 public:
  PathPartition(int depth, std::uint64_t workers);

  int depth() const noexcept { return depth_; }
  std::uint64_t workers() const noexcept { return workers_; }
  int prefix_bits() const noexcept { return prefix_bits_; }
  std::uint64_t block_count() const noexcept { return std::uint64_t{1} << prefix_bits_; }
  std::uint64_t block_size() const noexcept { return std::uint64_t{1} << (depth_ - prefix_bits_); }
  bool power_of_two() const noexcept { return (workers_ & (workers_ - 1)) == 0; }

  std::uint64_t owner(std::uint64_t block) const noexcept { return block % workers_; }

  /// Prefix values owned by `rank`, ascending.
  std::vector<std::uint64_t> blocks(std::uint64_t rank) const;

  /// Number of paths owned by `rank`.
  std::uint64_t path_count(std::uint64_t rank) const;

  void check_rank(std::uint64_t rank) const;

 private:
  int depth_;
  std::uint64_t workers_;
  int prefix_bits_;
};

/// Throws InvalidWorkerCount unless 1 <= M <= 2^N.
PathPartition make_partition(int depth, std::uint64_t workers);

/// Ascending stream of the paths owned by one rank, generated from integer
/// codes without materializing a list.
class BlockPaths {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = BernoulliPath;
    using difference_type = std::ptrdiff_t;

    iterator() = default;

    BernoulliPath operator*() const noexcept {
      return BernoulliPath((block_ << suffix_bits_) | suffix_, depth_);
    }
    iterator& operator++() noexcept {
      if (++suffix_ == block_size_) {
        suffix_ = 0;
        block_ += stride_;
      }
      return *this;
    }
    iterator operator++(int) noexcept {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) noexcept {
      return a.block_ == b.block_ && a.suffix_ == b.suffix_;
    }

   private:
    friend class BlockPaths;
    std::uint64_t block_ = 0;
    std::uint64_t suffix_ = 0;
    std::uint64_t stride_ = 1;
    std::uint64_t block_size_ = 1;
    int suffix_bits_ = 0;
    int depth_ = 0;
  };

  BlockPaths(const PathPartition& partition, std::uint64_t rank);

  iterator begin() const noexcept { return begin_; }
  iterator end() const noexcept { return end_; }

 private:
  iterator begin_;
  iterator end_;
};

/// Paths owned by `rank`. Throws RankOutOfRange.
BlockPaths iter_block(const PathPartition& partition, std::uint64_t rank);

/// P(X lands in the blocks owned by `rank`). Throws RankOutOfRange.
double block_probability(const TreeParams& params, const PathPartition& partition,
                         std::uint64_t rank);

}  // namespace bintree
