#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "bintree/exact_engine.hpp"

namespace bintree {

struct BenchPoint {
  int N = 0;
  std::uint64_t M = 1;
};

/// One row of a scaling table. speedup = baseline_M * T(baseline) / T(M) and
/// efficiency = speedup / M. A skipped (infeasible) run has NaN timings.
struct BenchRecord {
  int N = 0;
  std::uint64_t M = 1;
  double wall_seconds = 0.0;
  double speedup = 0.0;
  double efficiency = 0.0;
  std::uint64_t baseline_M = 1;
  bool oversubscribed = false;
};

/// Builds the timed call for (N, M), or nullopt when that cell is infeasible.
/// Only the returned callable is timed.
using BenchWorkload = std::function<std::optional<std::function<void()>>(int, std::uint64_t)>;

/// Times every grid point (median of `repetitions`). Within each N the first
/// listed M is the baseline; if it is infeasible the smallest measured M0 takes
/// speedup M0 and the others are scaled relative to it.
std::vector<BenchRecord> run_bench(std::span<const BenchPoint> grid, const BenchWorkload& workload,
                                   int repetitions = 3);

/// run_bench over value_exact_parallel, deriving each cell's request from
/// `tmpl` with its N and M substituted.
std::vector<BenchRecord> run_exact_bench(std::span<const BenchPoint> grid,
                                         const ValuationRequest& tmpl, int repetitions = 3);

/// Header: N,M,wall_seconds,speedup,efficiency,baseline_M
void write_bench_csv(std::ostream& os, std::span<const BenchRecord> records);

/// Wall time, speedup and efficiency blocks with one line per N.
void write_bench_table(std::ostream& os, std::span<const BenchRecord> records);

}  // namespace bintree
