#include "bintree/mc_engine.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "bintree/errors.hpp"
#include "bintree/study.hpp"

namespace bintree {
namespace {

constexpr PayoffKind kAllKinds[] = {PayoffKind::EuropeanCall, PayoffKind::EuropeanPut,
                                    PayoffKind::AsianPut, PayoffKind::FixedLookbackPut};

ValuationRequest desk_request(PayoffKind kind, int n) {
  return make_request({20.0, 100.0, 0.06, 3.0, 1.0, n}, kind);
}

McConfig config(std::uint64_t samples, std::uint64_t strata, std::uint64_t seed = 42) {
  McConfig cfg;
  cfg.samples = samples;
  cfg.strata = strata;
  cfg.seed = seed;
  return cfg;
}

void expect_same(const Estimate& a, const Estimate& b) {
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.variance, b.variance);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(SamplePath, CertainUpMoves) {
  TreeParams params;
  params.up_probs.assign(10, 1.0);
  RandomStream stream(1, 0, 0);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_path(params, stream).code(), 1023U);
}

TEST(SamplePath, PerBitFrequencies) {
  TreeParams params;
  params.up_probs.assign(16, 0.5);
  RandomStream stream(7, 0, 0);
  std::vector<int> ups(16, 0);
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const BernoulliPath path = sample_path(params, stream);
    for (int t = 1; t <= 16; ++t) ups[static_cast<std::size_t>(t - 1)] += path.up(t);
  }
  // 3-sigma binomial band around 0.5.
  for (int count : ups) {
    const double mean = static_cast<double>(count) / kDraws;
    EXPECT_GE(mean, 0.494);
    EXPECT_LE(mean, 0.506);
  }
}

TEST(SamplePath, PrefixIsKept) {
  TreeParams params;
  params.up_probs.assign(8, 0.5);
  RandomStream stream(3, 1, 0);
  for (int i = 0; i < 200; ++i) EXPECT_EQ(sample_with_prefix(params, 0b101, 3, stream).code() >> 5, 0b101U);
}

TEST(AllocateStrata, Examples) {
  TreeParams half;
  half.up_probs.assign(6, 0.5);
  EXPECT_EQ(allocate_strata(make_partition(6, 4), half, 1024),
            (std::vector<std::uint64_t>{256, 256, 256, 256}));

  TreeParams skewed;
  skewed.up_probs = {0.9, 0.5, 0.5};
  EXPECT_EQ(allocate_strata(make_partition(3, 2), skewed, 1024), (std::vector<std::uint64_t>{102, 922}));
}

TEST(AllocateStrata, ConservesTotalAndFloorsAtOne) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> prob(0.01, 0.99);
  std::uniform_int_distribution<int> log_m(0, 6);
  for (int trial = 0; trial < 100; ++trial) {
    TreeParams params;
    params.up_probs.resize(10);
    for (auto& p : params.up_probs) p = prob(rng);
    const std::uint64_t m = std::uint64_t{1} << log_m(rng);
    const std::uint64_t total = m + rng() % 5000;
    const auto alloc = allocate_strata(make_partition(10, m), params, total);
    EXPECT_EQ(std::accumulate(alloc.begin(), alloc.end(), std::uint64_t{0}), total);
    for (auto r : alloc) EXPECT_GE(r, 1U);
  }
}

TEST(AllocateStrata, InfeasibleWhenTooFewDraws) {
  TreeParams half;
  half.up_probs.assign(6, 0.5);
  try {
    allocate_strata(make_partition(6, 8), half, 7);
    FAIL();
  } catch (const ValuationError& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfeasibleAllocation);
  }
}

TEST(AllocateStrata, ZeroProbabilityStrataGetNothing) {
  TreeParams params;
  params.up_probs = {1.0, 0.5, 0.5, 0.5};
  const auto alloc = allocate_strata(make_partition(4, 4), params, 3);
  EXPECT_EQ(alloc, (std::vector<std::uint64_t>{0, 0, 2, 1}));
}

TEST(EstimateBasic, DegenerateDistribution) {
  ValuationRequest req = desk_request(PayoffKind::AsianPut, 6);
  req.params = with_overrides(req.params, std::nullopt, 1.0);
  const Estimate est = estimate_basic(req, config(64, 1));
  const double all_up = payoff(PayoffKind::AsianPut, req.params, 20.0, 100.0, BernoulliPath(63, 6));
  EXPECT_NEAR(est.value, std::exp(-0.06) * all_up, 1e-12);
  EXPECT_EQ(est.variance, 0.0);
}

TEST(EstimateBasic, CloseToExactAtDeskScale) {
  const ValuationRequest req = desk_request(PayoffKind::AsianPut, 12);
  const double exact = value_exact_serial(req);
  const Estimate est = estimate_basic(req, config(1 << 14, 1));
  EXPECT_EQ(est.samples_used, 1U << 14);
  EXPECT_LT(std::abs(est.value - exact), 4.0 * est.std_error);
  EXPECT_NEAR(est.variance, std::exp(-0.12) * est.theta_variance, 1e-15);
}

TEST(EstimateBasic, NeedsTwoSamples) {
  EXPECT_THROW(estimate_basic(desk_request(PayoffKind::AsianPut, 4), config(1, 1)), ValuationError);
}

TEST(SingleStratum, EveryStratifiedEstimatorReducesToBasic) {
  for (auto kind : kAllKinds) {
    const ValuationRequest req = desk_request(kind, 10);
    const Estimate basic = estimate_basic(req, config(1024, 1, 7));
    expect_same(estimate_partitioned(req, config(1024, 1, 7)), basic);
    expect_same(estimate_partitioned_equal(req, config(1024, 1, 7)), basic);
    expect_same(estimate_shared(req, config(1024, 1, 7)), basic);
  }
}

TEST(FullPrefix, StratifiedEstimatorsAreExact) {
  for (auto kind : kAllKinds) {
    const ValuationRequest req = desk_request(kind, 6);
    const double exact = value_exact_serial(req);
    const Estimate pmc = estimate_partitioned(req, config(64, 64));
    EXPECT_NEAR(pmc.value, exact, 1e-12 * exact);
    EXPECT_EQ(pmc.variance, 0.0);
    const Estimate smc = estimate_shared(req, config(16, 64));
    EXPECT_NEAR(smc.value, exact, 1e-12 * exact);
    EXPECT_NEAR(smc.variance, 0.0, 1e-20);
  }
}

TEST(EstimatePartitioned, PerStratumBookkeeping) {
  const ValuationRequest req = desk_request(PayoffKind::FixedLookbackPut, 10);
  const Estimate est = estimate_partitioned(req, config(1000, 8));
  ASSERT_EQ(est.per_stratum.size(), 8U);
  std::uint64_t used = 0;
  double weighted = 0.0;
  for (const auto& s : est.per_stratum) {
    used += s.samples;
    weighted += s.mean * s.probability;
  }
  EXPECT_EQ(used, 1000U);
  EXPECT_EQ(est.samples_used, 1000U);
  EXPECT_NEAR(weighted, est.theta, 1e-12 * est.theta);
  EXPECT_EQ(estimate_partitioned_equal(req, config(1000, 8)).samples_used, 8000U);
}

TEST(EstimatePartitioned, RejectsNonPowerOfTwoStrata) {
  const ValuationRequest req = desk_request(PayoffKind::AsianPut, 8);
  EXPECT_THROW(estimate_partitioned(req, config(1024, 3)), ValuationError);
  EXPECT_THROW(estimate_shared(req, config(1024, 6)), ValuationError);
  EXPECT_THROW(estimate_partitioned(req, config(4, 8)), ValuationError);
}

TEST(Determinism, SameSeedSameEstimateRegardlessOfThreads) {
  const ValuationRequest req = desk_request(PayoffKind::AsianPut, 12);
  for (auto method : {Method::Basic, Method::Partitioned, Method::PartitionedEqual, Method::Shared}) {
    McConfig cfg = config(2048, 16, 99);
    cfg.threads = 1;
    const Estimate one = estimate(method, req, cfg);
    cfg.threads = 4;
    expect_same(estimate(method, req, cfg), one);
    cfg.threads = 0;
    expect_same(estimate(method, req, cfg), one);
    cfg.seed = 100;
    EXPECT_NE(estimate(method, req, cfg).value, one.value);
  }
}

TEST(Study, RepetitionsAreIndependentOfThreads) {
  const ValuationRequest req = desk_request(PayoffKind::AsianPut, 10);
  McConfig cfg = config(256, 4, 5);
  cfg.threads = 1;
  const StudySummary serial = repeat_estimates(Method::Partitioned, req, cfg, 50);
  cfg.threads = 0;
  const StudySummary parallel = repeat_estimates(Method::Partitioned, req, cfg, 50);
  EXPECT_EQ(serial.mean_estimate, parallel.mean_estimate);
  EXPECT_EQ(serial.mean_variance_estimate, parallel.mean_variance_estimate);
  EXPECT_EQ(serial.empirical_variance, parallel.empirical_variance);
}

// Each estimator's mean over many repetitions must sit within 4 standard
// errors of the enumerated value.
TEST(Unbiasedness, AllEstimatorsAllPayoffs) {
  constexpr std::uint64_t kReps = 2000;
  for (auto kind : kAllKinds) {
    const ValuationRequest req = make_request({10.0, 11.0, 0.06, 0.6, 1.0, 12}, kind);
    const double exact = value_exact_serial(req);
    for (auto method : {Method::Basic, Method::Partitioned, Method::PartitionedEqual, Method::Shared}) {
      const StudySummary s = repeat_estimates(method, req, config(128, 8, 2024), kReps);
      const double se = std::sqrt(s.empirical_variance / kReps);
      EXPECT_LT(std::abs(s.mean_estimate - exact), 4.0 * se + 1e-12)
          << to_string(kind) << " " << to_string(method) << " exact " << exact << " mean "
          << s.mean_estimate;
    }
  }
}

TEST(VarianceEstimator, CalibratedAgainstRepetitions) {
  const ValuationRequest req = desk_request(PayoffKind::AsianPut, 12);
  for (auto [method, strata] : {std::pair{Method::Basic, 1}, std::pair{Method::Partitioned, 16}}) {
    const StudySummary s = repeat_estimates(method, req, config(4096, strata, 77), 2000);
    EXPECT_NEAR(s.mean_variance_estimate / s.empirical_variance, 1.0, 0.2) << to_string(method);
  }
}

TEST(VarianceReduction, StratificationDoesNotIncreaseVariance) {
  const ValuationRequest req = desk_request(PayoffKind::AsianPut, 12);
  constexpr std::uint64_t kReps = 1000;
  const StudySummary basic = repeat_estimates(Method::Basic, req, config(512, 1, 3), kReps);
  for (std::uint64_t m : {2, 4, 8, 16}) {
    const StudySummary pmc = repeat_estimates(Method::Partitioned, req, config(512, m, 3), kReps);
    const double slack = std::sqrt(2.0 / (kReps - 1)) * std::hypot(basic.empirical_variance, pmc.empirical_variance);
    EXPECT_LE(pmc.empirical_variance, basic.empirical_variance + slack) << m;
    EXPECT_LE(pmc.mean_variance_estimate, basic.mean_variance_estimate) << m;
  }
}

TEST(VarianceReduction, OrderingAtDeskScale) {
  const ValuationRequest req = desk_request(PayoffKind::AsianPut, 10);
  constexpr std::uint64_t kReps = 400;
  const StudySummary basic = repeat_estimates(Method::Basic, req, config(256, 1, 8), kReps);
  for (std::uint64_t m : {2, 4, 8, 16}) {
    const StudySummary equal = repeat_estimates(Method::PartitionedEqual, req, config(256, m, 8), kReps);
    const StudySummary shared = repeat_estimates(Method::Shared, req, config(256, m, 8), kReps);
    const double rel = std::sqrt(2.0 / (kReps - 1));
    EXPECT_LE(equal.empirical_variance,
              shared.empirical_variance + rel * std::hypot(equal.empirical_variance, shared.empirical_variance));
    EXPECT_LE(shared.empirical_variance,
              basic.empirical_variance + rel * std::hypot(shared.empirical_variance, basic.empirical_variance));
  }
}

}  // namespace
}  // namespace bintree
