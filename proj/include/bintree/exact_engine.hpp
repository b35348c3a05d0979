#pragma once

#include <cstdint>
#include <vector>

#include "bintree/model.hpp"
#include "bintree/payoffs.hpp"

namespace bintree {

/// Full enumeration beyond this depth must be confirmed with allow_large.
inline constexpr int kLargeEnumerationDepth = 28;

struct ValuationRequest {
  MarketInputs inputs;
  TreeParams params;
  Payoff payoff = PayoffKind::EuropeanPut;
  std::uint64_t workers = 1;  // partition parameter M, independent of cores
  int threads = 0;            // OpenMP threads; 0 picks min(M, available)
  bool allow_large = false;
};

/// Builds a request with CRR parameters derived from `inputs`.
ValuationRequest make_request(const MarketInputs& inputs, Payoff payoff, std::uint64_t workers = 1);

struct ExactBreakdown {
  double value = 0.0;
  std::vector<double> per_rank;  // discounted local values V_m
  std::uint64_t paths_visited = 0;
};

/// Reference: exp(-qT) * sum over all 2^N paths of V_N(x) p(x), one
/// compensated accumulator in ascending code order.
double value_exact_serial(const ValuationRequest& req);

/// Rank-prefix partitioned enumeration. Each rank accumulates its own
/// discounted local value; locals are reduced in ascending rank order so the
/// result is independent of thread scheduling. workers = 1 reproduces
/// value_exact_serial bit for bit.
double value_exact_parallel(const ValuationRequest& req);
ExactBreakdown value_exact_parallel_breakdown(const ValuationRequest& req);

/// exp(-qT) * sum_i C(N,i) p^i (1-p)^(N-i) V(S0 u^i d^(N-i)).
/// Only for terminal-price payoffs with a constant up-probability.
double value_leaf_formula(const ValuationRequest& req);

}  // namespace bintree
