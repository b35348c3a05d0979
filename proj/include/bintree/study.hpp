#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bintree/mc_engine.hpp"

namespace bintree {

/// Summary over independent repetitions of one estimator configuration.
struct StudySummary {
  Method method = Method::Basic;
  std::uint64_t samples = 0;  // R
  std::uint64_t strata = 1;   // M
  std::uint64_t reps = 0;
  double mean_estimate = 0.0;
  double mean_variance_estimate = 0.0;
  double empirical_variance = 0.0;  // sample variance (n - 1) of the estimates
  double variance_estimate_sd = 0.0;  // spread of the per-repetition variance estimates
};

/// Runs repetitions 0..reps-1 of `method` (streams keyed by repetition index)
/// and summarizes them. Repetitions run concurrently; the summary is
/// independent of the thread count.
StudySummary repeat_estimates(Method method, const ValuationRequest& req, const McConfig& base,
                              std::uint64_t reps);

enum class StudyTable { McConvergence, PmcVariance, SmcVsPmc };

struct StudyRow {
  Method method;
  std::uint64_t parameter;  // R for McConvergence, M otherwise
  StudySummary summary;
};

/// McConvergence varies R over `values` with basic MC. PmcVariance varies M
/// with proportional allocation at fixed R. SmcVsPmc varies M with R_m = R,
/// comparing partitioned-equal against shared sample, plus one basic row.
std::vector<StudyRow> run_study(StudyTable table, const ValuationRequest& req, const McConfig& base,
                                std::span<const std::uint64_t> values, std::uint64_t reps);

}  // namespace bintree
