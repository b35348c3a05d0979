#include <algorithm>
#include <cmath>
#include <utility>

#include "bintree/exact_engine.hpp"
#include "bintree/kahan.hpp"
#include "exact_common.hpp"

namespace bintree {

ValuationRequest make_request(const MarketInputs& inputs, Payoff payoff, std::uint64_t workers) {
  ValuationRequest req;
  req.inputs = inputs;
  req.params = derive_crr(inputs);
  req.payoff = std::move(payoff);
  req.workers = workers;
  return req;
}

double value_exact_serial(const ValuationRequest& req) {
  detail::check_enumerable(req);
  const int n = req.inputs.N;
  const std::uint64_t total = std::uint64_t{1} << n;
  KahanSum<> sum;
  for (std::uint64_t code = 0; code < total; ++code) {
    sum += detail::path_term(req, BernoulliPath(code, n));
  }
  return discount_factor(req.inputs) * sum.value();
}

double value_leaf_formula(const ValuationRequest& req) {
  validate(req.inputs);
  if (req.payoff.path_dependent()) {
    throw ValuationError(ErrorCode::PathDependentPayoff,
                         req.payoff.name() + " depends on the whole path");
  }
  if (req.params.depth() != req.inputs.N) {
    throw ValuationError(ErrorCode::LengthMismatch, "tree depth does not match N");
  }
  if (!req.params.constant_probs()) {
    throw ValuationError(ErrorCode::NonConstantProbs, "leaf formula needs one up-probability");
  }
  const int n = req.inputs.N;
  const double p = req.params.up_probs.front();
  const auto leaves = leaf_prices(req.params, req.inputs.S0);
  const double K = req.inputs.K;

  KahanSum<> sum;
  for (int i = 0; i <= n; ++i) {
    double weight = 0.0;
    if (p == 1.0) {
      weight = (i == n) ? 1.0 : 0.0;
    } else {
      const double log_choose = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0);
      weight = std::exp(log_choose + i * std::log(p) + (n - i) * std::log1p(-p));
    }
    if (weight == 0.0) continue;

    double value = 0.0;
    if (const auto kind = req.payoff.kind()) {
      const double s = leaves[static_cast<std::size_t>(i)];
      value = *kind == PayoffKind::EuropeanCall ? std::max(s - K, 0.0) : std::max(K - s, 0.0);
    } else {
      // Any path with i up-moves reaches leaf i.
      const auto ups = (std::uint64_t{1} << i) - 1;
      value = req.payoff(req.params, req.inputs.S0, K, BernoulliPath(ups, n));
    }
    sum += weight * value;
  }
  return discount_factor(req.inputs) * sum.value();
}

}  // namespace bintree
