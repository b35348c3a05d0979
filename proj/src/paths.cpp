#include "bintree/paths.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "bintree/errors.hpp"
#include "bintree/kahan.hpp"

namespace bintree {

namespace {

// Blocks beyond ceil(log2 M) bits when M is not a power of two.
constexpr int kOversubscriptionBits = 4;

std::uint64_t owned_block_count(std::uint64_t blocks, std::uint64_t workers, std::uint64_t rank) {
  return (blocks - rank + workers - 1) / workers;
}

}  // namespace

double path_probability(const TreeParams& params, BernoulliPath path) {
  double prob = 1.0;
  for (int t = 1; t <= path.steps(); ++t) {
    const double p = params.up_probs[static_cast<std::size_t>(t - 1)];
    prob *= path.up(t) ? p : 1.0 - p;
  }
  return prob;
}

double prefix_probability(const TreeParams& params, std::uint64_t prefix, int prefix_bits) {
  double prob = 1.0;
  for (int t = 1; t <= prefix_bits; ++t) {
    const double p = params.up_probs[static_cast<std::size_t>(t - 1)];
    prob *= ((prefix >> (prefix_bits - t)) & 1U) ? p : 1.0 - p;
  }
  return prob;
}

PathPartition::PathPartition(int depth, std::uint64_t workers) : depth_(depth), workers_(workers) {
  if (depth < 1 || depth > kMaxDepth) {
    throw ValuationError(ErrorCode::InvalidInput, "depth must lie in [1, 62]");
  }
  if (workers < 1 || workers > (std::uint64_t{1} << depth)) {
    throw ValuationError(ErrorCode::InvalidWorkerCount,
                         "worker count " + std::to_string(workers) + " outside [1, 2^" +
                             std::to_string(depth) + "]");
  }
  if (std::has_single_bit(workers)) {
    prefix_bits_ = std::countr_zero(workers);
  } else {
    const int ceil_log2 = std::bit_width(workers - 1);
    prefix_bits_ = std::min(depth, ceil_log2 + kOversubscriptionBits);
  }
}

void PathPartition::check_rank(std::uint64_t rank) const {
  if (rank >= workers_) {
    throw ValuationError(ErrorCode::RankOutOfRange, "rank " + std::to_string(rank) +
                                                        " with " + std::to_string(workers_) +
                                                        " workers");
  }
}

std::vector<std::uint64_t> PathPartition::blocks(std::uint64_t rank) const {
  check_rank(rank);
  std::vector<std::uint64_t> out;
  out.reserve(owned_block_count(block_count(), workers_, rank));
  for (std::uint64_t b = rank; b < block_count(); b += workers_) out.push_back(b);
  return out;
}

std::uint64_t PathPartition::path_count(std::uint64_t rank) const {
  check_rank(rank);
  return owned_block_count(block_count(), workers_, rank) * block_size();
}

PathPartition make_partition(int depth, std::uint64_t workers) { return {depth, workers}; }

BlockPaths::BlockPaths(const PathPartition& partition, std::uint64_t rank) {
  partition.check_rank(rank);
  begin_.block_ = rank;
  begin_.stride_ = partition.workers();
  begin_.block_size_ = partition.block_size();
  begin_.suffix_bits_ = partition.depth() - partition.prefix_bits();
  begin_.depth_ = partition.depth();
  end_ = begin_;
  end_.block_ = rank + owned_block_count(partition.block_count(), partition.workers(), rank) *
                           partition.workers();
}

BlockPaths iter_block(const PathPartition& partition, std::uint64_t rank) {
  return {partition, rank};
}

double block_probability(const TreeParams& params, const PathPartition& partition,
                         std::uint64_t rank) {
  partition.check_rank(rank);
  KahanSum<> sum;
  for (std::uint64_t b = rank; b < partition.block_count(); b += partition.workers()) {
    sum += prefix_probability(params, b, partition.prefix_bits());
  }
  return sum.value();
}

}  // namespace bintree
