#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bintree/bernoulli_path.hpp"

namespace bintree {

inline constexpr int kMaxDepth = 62;

/// Market and tree inputs. Validated by derive_crr().
struct MarketInputs {
  double S0 = 1.0;     // spot price, > 0
  double K = 0.0;      // strike, >= 0
  double q = 0.0;      // annual risk-free rate
  double sigma = 0.0;  // annual volatility, >= 0
  double T = 1.0;      // maturity in years, > 0
  int N = 1;           // tree depth, 1..62
};

/// Throws ValuationError(InvalidInput) when any field is out of its domain.
void validate(const MarketInputs& inputs);

/// Derived per-step constants of the recombining tree.
///
/// u and d stay constant across steps; only the up-probabilities may vary.
/// Every entry of up_probs lies in (0, 1]. The value 1 is only produced by the
/// zero-volatility limit (or explicit test overrides); user-supplied
/// probabilities must be strictly inside (0, 1).
struct TreeParams {
  double dt = 0.0;
  double u = 1.0;
  double d = 1.0;
  double beta = 1.0;
  std::vector<double> up_probs;

  int depth() const noexcept { return static_cast<int>(up_probs.size()); }

  /// True when every step uses the same up-probability.
  bool constant_probs() const noexcept;
};

/// Cox-Ross-Rubinstein style parameters with u*d = 1:
///   beta = (exp(-q dt) + exp((q + sigma^2) dt)) / 2
///   u    = beta + sqrt(beta^2 - 1),  d = 1/u
///   p    = (exp(q dt) - d) / (u - d)
///
/// sigma = 0 is the deterministic-drift limit: u = exp(q dt), p = 1, which is
/// only admissible for q > 0.
TreeParams derive_crr(const MarketInputs& inputs);

/// derive_crr() with per-step up-probabilities replaced by `probs`.
TreeParams with_custom_probs(const MarketInputs& inputs, std::span<const double> probs);

/// Replaces u (and d = 1/u) and/or sets a constant up-probability in (0, 1].
/// Used to express hand-derived lattices with round numbers.
TreeParams with_overrides(TreeParams params, std::optional<double> u, std::optional<double> p);

/// Prices S_1..S_N along `path`; S_0 is not included.
std::vector<double> asset_path(const TreeParams& params, double S0, BernoulliPath path);

/// Terminal row S0 * u^j * d^(N-j) for j = 0..N.
std::vector<double> leaf_prices(const TreeParams& params, double S0);

/// exp(-q T), the maturity-to-present discount factor.
double discount_factor(const MarketInputs& inputs) noexcept;

}  // namespace bintree
