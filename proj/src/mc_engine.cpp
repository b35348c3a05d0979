#include "bintree/mc_engine.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bintree/errors.hpp"
#include "bintree/kahan.hpp"

namespace bintree {

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::Exact: return "exact";
    case Method::Basic: return "basic";
    case Method::Partitioned: return "partitioned";
    case Method::PartitionedEqual: return "partitioned-equal";
    case Method::Shared: return "shared";
  }
  return "unknown";
}

BernoulliPath sample_with_prefix(const TreeParams& params, std::uint64_t prefix, int prefix_bits,
                                 RandomStream& stream) {
  const int n = params.depth();
  std::uint64_t code = prefix;
  for (int t = prefix_bits + 1; t <= n; ++t) {
    const bool up = stream.uniform() < params.up_probs[static_cast<std::size_t>(t - 1)];
    code = (code << 1) | static_cast<std::uint64_t>(up);
  }
  return {code, n};
}

BernoulliPath sample_path(const TreeParams& params, RandomStream& stream) {
  return sample_with_prefix(params, 0, 0, stream);
}

namespace {

// Running mean and sum of squared deviations (Welford).
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double ss = 0.0;

  void add(double x) noexcept {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    ss += delta * (x - mean);
  }
};

void check_request(const ValuationRequest& req) {
  validate(req.inputs);
  if (req.params.depth() != req.inputs.N) {
    throw ValuationError(ErrorCode::LengthMismatch, "tree depth does not match N");
  }
}

PathPartition strata_partition(const ValuationRequest& req, const McConfig& cfg) {
  PathPartition partition = make_partition(req.inputs.N, cfg.strata);
  if (!partition.power_of_two()) {
    throw ValuationError(ErrorCode::InvalidWorkerCount,
                         "stratum count " + std::to_string(cfg.strata) + " is not a power of two");
  }
  return partition;
}

std::vector<double> stratum_probabilities(const TreeParams& params, const PathPartition& partition) {
  std::vector<double> probs(partition.workers());
  for (std::uint64_t m = 0; m < partition.workers(); ++m) {
    probs[m] = prefix_probability(params, m, partition.prefix_bits());
  }
  return probs;
}

Moments sample_stratum(const ValuationRequest& req, std::uint64_t prefix, int prefix_bits,
                       std::uint64_t draws, RandomStream& stream) {
  Moments moments;
  for (std::uint64_t i = 0; i < draws; ++i) {
    const BernoulliPath path = sample_with_prefix(req.params, prefix, prefix_bits, stream);
    moments.add(req.payoff(req.params, req.inputs.S0, req.inputs.K, path));
  }
  return moments;
}

Estimate finish(const ValuationRequest& req, const McConfig& cfg, Method method, double theta,
                double theta_variance, std::uint64_t used) {
  const double discount = discount_factor(req.inputs);
  Estimate est;
  est.method = method;
  est.seed = cfg.seed;
  est.samples_used = used;
  est.theta = theta;
  est.theta_variance = std::max(theta_variance, 0.0);
  est.value = discount * theta;
  est.variance = discount * discount * est.theta_variance;
  est.std_error = std::sqrt(est.variance);
  return est;
}

int omp_threads(int requested) { return requested > 0 ? requested : omp_get_max_threads(); }

enum class Allocation { Proportional, Equal };

Estimate stratified(const ValuationRequest& req, const McConfig& cfg, Allocation allocation) {
  check_request(req);
  const PathPartition partition = strata_partition(req, cfg);
  const int r = partition.prefix_bits();
  const std::vector<double> probs = stratum_probabilities(req.params, partition);

  std::vector<std::uint64_t> draws;
  if (allocation == Allocation::Proportional) {
    draws = allocate_strata(partition, req.params, cfg.samples);
  } else {
    if (cfg.samples < 1) throw ValuationError(ErrorCode::InvalidInput, "R must be positive");
    draws.resize(probs.size());
    std::transform(probs.begin(), probs.end(), draws.begin(),
                   [&](double p) { return p > 0.0 ? cfg.samples : std::uint64_t{0}; });
  }

  const auto strata = static_cast<std::int64_t>(partition.workers());
  std::vector<Moments> moments(partition.workers());
#pragma omp parallel for schedule(dynamic, 1) num_threads(omp_threads(cfg.threads))
  for (std::int64_t m = 0; m < strata; ++m) {
    const auto rank = static_cast<std::uint64_t>(m);
    RandomStream stream(cfg.seed, rank, cfg.repetition);
    moments[rank] = sample_stratum(req, rank, r, draws[rank], stream);
  }

  KahanSum<> theta;
  KahanSum<> variance;
  std::uint64_t used = 0;
  std::vector<StratumResult> per_stratum;
  per_stratum.reserve(moments.size());
  for (std::uint64_t m = 0; m < partition.workers(); ++m) {
    per_stratum.push_back({m, draws[m], moments[m].mean, probs[m]});
    used += draws[m];
    if (draws[m] == 0) continue;
    theta += moments[m].mean * probs[m];
    if (allocation == Allocation::Proportional) {
      variance += moments[m].ss;
    } else {
      const auto rm = static_cast<double>(draws[m]);
      variance += (probs[m] * probs[m]) * (moments[m].ss / (rm * rm));
    }
  }

  double theta_variance = variance.value();
  if (allocation == Allocation::Proportional) {
    const auto total = static_cast<double>(cfg.samples);
    theta_variance = theta_variance / (total * total);
  }
  Estimate est = finish(req, cfg,
                        allocation == Allocation::Proportional ? Method::Partitioned
                                                               : Method::PartitionedEqual,
                        theta.value(), theta_variance, used);
  est.per_stratum = std::move(per_stratum);
  return est;
}

}  // namespace

std::vector<std::uint64_t> allocate_strata(const PathPartition& partition, const TreeParams& params,
                                           std::uint64_t total) {
  const std::uint64_t strata = partition.workers();
  std::vector<double> probs(strata);
  for (std::uint64_t m = 0; m < strata; ++m) probs[m] = block_probability(params, partition, m);

  const auto positive =
      static_cast<std::uint64_t>(std::count_if(probs.begin(), probs.end(), [](double p) { return p > 0.0; }));
  if (total < positive) {
    throw ValuationError(ErrorCode::InfeasibleAllocation,
                         "R = " + std::to_string(total) + " cannot cover " +
                             std::to_string(positive) + " strata of positive probability");
  }

  std::vector<std::uint64_t> alloc(strata, 0);
  std::vector<double> remainder(strata, 0.0);
  std::uint64_t assigned = 0;
  for (std::uint64_t m = 0; m < strata; ++m) {
    const double share = static_cast<double>(total) * probs[m];
    const double whole = std::floor(share);
    alloc[m] = std::min(static_cast<std::uint64_t>(whole), total);
    remainder[m] = share - whole;
    assigned += alloc[m];
  }

  // Largest remainder, ties to the lower index, only among positive strata.
  std::vector<std::uint64_t> order;
  for (std::uint64_t m = 0; m < strata; ++m) {
    if (probs[m] > 0.0) order.push_back(m);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint64_t a, std::uint64_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; assigned < total; ++i) {
    ++alloc[order[i % order.size()]];
    ++assigned;
  }
  while (assigned > total) {  // only reachable through rounding when sum(P) > 1
    auto largest = std::max_element(alloc.begin(), alloc.end());
    --*largest;
    --assigned;
  }

  // Every positive stratum gets a draw, taken from the current largest one.
  for (std::uint64_t m = 0; m < strata; ++m) {
    if (probs[m] > 0.0 && alloc[m] == 0) {
      auto largest = std::max_element(alloc.begin(), alloc.end());
      --*largest;
      alloc[m] = 1;
    }
  }
  return alloc;
}

Estimate estimate_basic(const ValuationRequest& req, const McConfig& cfg) {
  check_request(req);
  if (cfg.samples < 2) throw ValuationError(ErrorCode::InvalidInput, "basic MC needs R >= 2");
  RandomStream stream(cfg.seed, 0, cfg.repetition);
  const Moments moments = sample_stratum(req, 0, 0, cfg.samples, stream);
  const auto total = static_cast<double>(cfg.samples);
  return finish(req, cfg, Method::Basic, moments.mean, moments.ss / (total * total), cfg.samples);
}

Estimate estimate_partitioned(const ValuationRequest& req, const McConfig& cfg) {
  return stratified(req, cfg, Allocation::Proportional);
}

Estimate estimate_partitioned_equal(const ValuationRequest& req, const McConfig& cfg) {
  return stratified(req, cfg, Allocation::Equal);
}

Estimate estimate_shared(const ValuationRequest& req, const McConfig& cfg) {
  check_request(req);
  if (cfg.samples < 2) throw ValuationError(ErrorCode::InvalidInput, "shared-sample MC needs R >= 2");
  const PathPartition partition = strata_partition(req, cfg);
  const int r = partition.prefix_bits();
  const int suffix_bits = req.inputs.N - r;
  const std::vector<double> probs = stratum_probabilities(req.params, partition);

  RandomStream stream(cfg.seed, 0, cfg.repetition);
  std::vector<std::uint64_t> suffixes(cfg.samples);
  for (auto& y : suffixes) y = sample_with_prefix(req.params, 0, r, stream).code();

  const auto draws = static_cast<std::int64_t>(cfg.samples);
  std::vector<double> inner(cfg.samples);
#pragma omp parallel for schedule(static) num_threads(omp_threads(cfg.threads))
  for (std::int64_t i = 0; i < draws; ++i) {
    const std::uint64_t y = suffixes[static_cast<std::size_t>(i)];
    KahanSum<> sum;
    for (std::uint64_t m = 0; m < partition.workers(); ++m) {
      if (probs[m] == 0.0) continue;
      const BernoulliPath path((m << suffix_bits) | y, req.inputs.N);
      sum += req.payoff(req.params, req.inputs.S0, req.inputs.K, path) * probs[m];
    }
    inner[static_cast<std::size_t>(i)] = sum.value();
  }

  Moments moments;
  for (double v : inner) moments.add(v);
  const auto total = static_cast<double>(cfg.samples);
  return finish(req, cfg, Method::Shared, moments.mean, moments.ss / (total * total), cfg.samples);
}

Estimate estimate(Method method, const ValuationRequest& req, const McConfig& cfg) {
  switch (method) {
    case Method::Exact: {
      McConfig none = cfg;
      none.samples = 0;
      Estimate est = finish(req, none, Method::Exact, 0.0, 0.0, 0);
      est.value = value_exact_parallel(req);
      est.theta = est.value / discount_factor(req.inputs);
      return est;
    }
    case Method::Basic: return estimate_basic(req, cfg);
    case Method::Partitioned: return estimate_partitioned(req, cfg);
    case Method::PartitionedEqual: return estimate_partitioned_equal(req, cfg);
    case Method::Shared: return estimate_shared(req, cfg);
  }
  throw ValuationError(ErrorCode::InvalidInput, "unknown method");
}

}  // namespace bintree
