#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "bintree/exact_engine.hpp"
#include "bintree/paths.hpp"
#include "bintree/rng.hpp"

namespace bintree {

enum class Method { Exact, Basic, Partitioned, PartitionedEqual, Shared };

std::string_view to_string(Method method) noexcept;

struct McConfig {
  std::uint64_t samples = 1024;  // R
  std::uint64_t strata = 1;      // M, a power of two for the stratified modes
  std::uint64_t seed = 0;
  std::uint64_t repetition = 0;  // selects the repetition's random streams
  int threads = 0;               // 0 lets OpenMP decide
};

struct StratumResult {
  std::uint64_t rank = 0;
  std::uint64_t samples = 0;  // R_m
  double mean = 0.0;          // theta-hat^(m), undiscounted
  double probability = 0.0;   // P(D_m)
};

/// Value-scale estimate: value = exp(-qT) theta_hat, variance =
/// exp(-2qT) Var_hat(theta_hat).
struct Estimate {
  double value = 0.0;
  double variance = 0.0;
  double std_error = 0.0;
  std::uint64_t samples_used = 0;
  Method method = Method::Basic;
  std::uint64_t seed = 0;
  double theta = 0.0;           // undiscounted estimate
  double theta_variance = 0.0;  // undiscounted variance estimate
  std::vector<StratumResult> per_stratum;
};

/// One path with bit t up with probability p_t, independently per step.
BernoulliPath sample_path(const TreeParams& params, RandomStream& stream);

/// Draws the moves after the first `prefix_bits` steps and prepends `prefix`.
BernoulliPath sample_with_prefix(const TreeParams& params, std::uint64_t prefix, int prefix_bits,
                                 RandomStream& stream);

/// Proportional allocation R_m = R P(D_m) rounded by largest remainder, with
/// at least one draw per stratum of positive probability. Sums to R exactly.
std::vector<std::uint64_t> allocate_strata(const PathPartition& partition,
                                           const TreeParams& params, std::uint64_t total);

/// Plain Monte Carlo over the whole path space.
Estimate estimate_basic(const ValuationRequest& req, const McConfig& cfg);

/// Stratified by r-bit prefix with proportional allocation.
Estimate estimate_partitioned(const ValuationRequest& req, const McConfig& cfg);

/// Stratified by r-bit prefix with R draws in every stratum (M R in total).
Estimate estimate_partitioned_equal(const ValuationRequest& req, const McConfig& cfg);

/// One sample of R suffixes reused under every prefix.
Estimate estimate_shared(const ValuationRequest& req, const McConfig& cfg);

/// Dispatches on `method`; Method::Exact runs value_exact_parallel with
/// zero variance.
Estimate estimate(Method method, const ValuationRequest& req, const McConfig& cfg);

}  // namespace bintree
