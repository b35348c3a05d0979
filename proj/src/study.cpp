#include "bintree/study.hpp"

#include <cmath>
#include <cstdint>

#include "bintree/errors.hpp"
#include "bintree/kahan.hpp"

namespace bintree {

namespace {

double mean_of(const std::vector<double>& xs) {
  KahanSum<> sum;
  for (double x : xs) sum += x;
  return sum.value() / static_cast<double>(xs.size());
}

double sample_variance(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  KahanSum<> sum;
  for (double x : xs) sum += (x - mean) * (x - mean);
  return sum.value() / static_cast<double>(xs.size() - 1);
}

}  // namespace

StudySummary repeat_estimates(Method method, const ValuationRequest& req, const McConfig& base,
                              std::uint64_t reps) {
  if (reps < 1) throw ValuationError(ErrorCode::InvalidInput, "reps must be positive");
  std::vector<double> values(reps);
  std::vector<double> variances(reps);
  const auto count = static_cast<std::int64_t>(reps);

  // Repetitions are the parallel unit here; each estimate runs single-threaded.
#pragma omp parallel for schedule(dynamic, 1) if (base.threads != 1)
  for (std::int64_t i = 0; i < count; ++i) {
    McConfig cfg = base;
    cfg.repetition = static_cast<std::uint64_t>(i);
    cfg.threads = 1;
    const Estimate est = estimate(method, req, cfg);
    values[static_cast<std::size_t>(i)] = est.value;
    variances[static_cast<std::size_t>(i)] = est.variance;
  }

  StudySummary out;
  out.method = method;
  out.samples = base.samples;
  out.strata = base.strata;
  out.reps = reps;
  out.mean_estimate = mean_of(values);
  out.empirical_variance = sample_variance(values, out.mean_estimate);
  out.mean_variance_estimate = mean_of(variances);
  out.variance_estimate_sd = std::sqrt(sample_variance(variances, out.mean_variance_estimate));
  return out;
}

std::vector<StudyRow> run_study(StudyTable table, const ValuationRequest& req, const McConfig& base,
                                std::span<const std::uint64_t> values, std::uint64_t reps) {
  std::vector<StudyRow> rows;
  switch (table) {
    case StudyTable::McConvergence:
      for (std::uint64_t r : values) {
        McConfig cfg = base;
        cfg.samples = r;
        cfg.strata = 1;
        rows.push_back({Method::Basic, r, repeat_estimates(Method::Basic, req, cfg, reps)});
      }
      break;
    case StudyTable::PmcVariance:
      for (std::uint64_t m : values) {
        McConfig cfg = base;
        cfg.strata = m;
        rows.push_back({Method::Partitioned, m, repeat_estimates(Method::Partitioned, req, cfg, reps)});
      }
      break;
    case StudyTable::SmcVsPmc: {
      McConfig basic = base;
      basic.strata = 1;
      rows.push_back({Method::Basic, 1, repeat_estimates(Method::Basic, req, basic, reps)});
      for (std::uint64_t m : values) {
        McConfig cfg = base;
        cfg.strata = m;
        rows.push_back({Method::PartitionedEqual, m,
                        repeat_estimates(Method::PartitionedEqual, req, cfg, reps)});
        rows.push_back({Method::Shared, m, repeat_estimates(Method::Shared, req, cfg, reps)});
      }
      break;
    }
  }
  return rows;
}

}  // namespace bintree
