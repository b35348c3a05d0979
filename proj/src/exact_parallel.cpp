#include <omp.h>

#include <algorithm>
#include <cstdint>

#include "bintree/exact_engine.hpp"
#include "bintree/kahan.hpp"
#include "exact_common.hpp"

namespace bintree {

namespace {

int resolve_threads(int requested, std::uint64_t workers) {
  if (requested > 0) return requested;
  const auto available = static_cast<std::uint64_t>(std::max(1, omp_get_max_threads()));
  return static_cast<int>(std::min(workers, available));
}

}  // namespace

ExactBreakdown value_exact_parallel_breakdown(const ValuationRequest& req) {
  detail::check_enumerable(req);
  const PathPartition partition = make_partition(req.inputs.N, req.workers);
  const double discount = discount_factor(req.inputs);
  const auto ranks = static_cast<std::int64_t>(partition.workers());

  ExactBreakdown out;
  out.per_rank.assign(partition.workers(), 0.0);
  std::vector<std::uint64_t> visited(partition.workers(), 0);

#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(req.threads, req.workers))
  for (std::int64_t m = 0; m < ranks; ++m) {
    const auto rank = static_cast<std::uint64_t>(m);
    KahanSum<> local;
    std::uint64_t count = 0;
    for (BernoulliPath path : iter_block(partition, rank)) {
      local += detail::path_term(req, path);
      ++count;
    }
    out.per_rank[rank] = discount * local.value();
    visited[rank] = count;
  }

  KahanSum<> total;
  for (std::uint64_t m = 0; m < partition.workers(); ++m) {
    total += out.per_rank[m];
    out.paths_visited += visited[m];
  }
  out.value = total.value();
  return out;
}

double value_exact_parallel(const ValuationRequest& req) {
  return value_exact_parallel_breakdown(req).value;
}

}  // namespace bintree
