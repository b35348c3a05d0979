#include "bintree/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "bintree/errors.hpp"

namespace bintree {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidWorkerCount: return "InvalidWorkerCount";
    case ErrorCode::RankOutOfRange: return "RankOutOfRange";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::PathDependentPayoff: return "PathDependentPayoff";
    case ErrorCode::NonConstantProbs: return "NonConstantProbs";
    case ErrorCode::InfeasibleAllocation: return "InfeasibleAllocation";
  }
  return "Unknown";
}

void validate(const MarketInputs& in) {
  auto fail = [](const std::string& msg) { throw ValuationError(ErrorCode::InvalidInput, msg); };
  if (!(std::isfinite(in.S0) && in.S0 > 0.0)) fail("S0 must be positive, got " + std::to_string(in.S0));
  if (!(std::isfinite(in.K) && in.K >= 0.0)) fail("K must be nonnegative, got " + std::to_string(in.K));
  if (!std::isfinite(in.q)) fail("q must be finite");
  if (!(std::isfinite(in.sigma) && in.sigma >= 0.0)) fail("sigma must be nonnegative");
  if (!(std::isfinite(in.T) && in.T > 0.0)) fail("T must be positive, got " + std::to_string(in.T));
  if (in.N < 1 || in.N > kMaxDepth) {
    fail("N must lie in [1, " + std::to_string(kMaxDepth) + "], got " + std::to_string(in.N));
  }
}

bool TreeParams::constant_probs() const noexcept {
  return std::adjacent_find(up_probs.begin(), up_probs.end(), std::not_equal_to<>()) == up_probs.end();
}

TreeParams derive_crr(const MarketInputs& in) {
  validate(in);
  TreeParams out;
  out.dt = in.T / in.N;
  const double dt = out.dt;

  double p = 1.0;
  if (in.sigma == 0.0) {
    // Deterministic drift: the risk-free move is always "up".
    if (!(in.q > 0.0)) {
      throw ValuationError(ErrorCode::ProbabilityOutOfRange,
                           "sigma = 0 requires q > 0 so that d < exp(q dt) <= u");
    }
    out.u = std::exp(in.q * dt);
    out.d = 1.0 / out.u;
    out.beta = std::cosh(in.q * dt);
  } else {
    // beta - 1 via expm1 keeps beta^2 - 1 accurate for small dt.
    const double beta_m1 = 0.5 * (std::expm1(-in.q * dt) + std::expm1((in.q + in.sigma * in.sigma) * dt));
    out.beta = 1.0 + beta_m1;
    out.u = out.beta + std::sqrt(beta_m1 * (out.beta + 1.0));
    out.d = 1.0 / out.u;
    p = (std::exp(in.q * dt) - out.d) / (out.u - out.d);
    if (!(p > 0.0 && p < 1.0)) {
      throw ValuationError(ErrorCode::ProbabilityOutOfRange,
                           "up-probability " + std::to_string(p) + " outside (0, 1)");
    }
  }
  out.up_probs.assign(static_cast<std::size_t>(in.N), p);
  return out;
}

TreeParams with_custom_probs(const MarketInputs& in, std::span<const double> probs) {
  if (probs.size() != static_cast<std::size_t>(in.N)) {
    throw ValuationError(ErrorCode::LengthMismatch, "expected " + std::to_string(in.N) +
                                                        " probabilities, got " +
                                                        std::to_string(probs.size()));
  }
  for (double p : probs) {
    if (!(p > 0.0 && p < 1.0)) {
      throw ValuationError(ErrorCode::ProbabilityOutOfRange,
                           "custom probability " + std::to_string(p) + " outside (0, 1)");
    }
  }
  TreeParams out = derive_crr(in);
  out.up_probs.assign(probs.begin(), probs.end());
  return out;
}

TreeParams with_overrides(TreeParams params, std::optional<double> u, std::optional<double> p) {
  if (u) {
    if (!(std::isfinite(*u) && *u > 1.0)) {
      throw ValuationError(ErrorCode::InvalidInput, "override u must exceed 1");
    }
    params.u = *u;
    params.d = 1.0 / *u;
  }
  if (p) {
    if (!(*p > 0.0 && *p <= 1.0)) {
      throw ValuationError(ErrorCode::ProbabilityOutOfRange, "override p must lie in (0, 1]");
    }
    std::fill(params.up_probs.begin(), params.up_probs.end(), *p);
  }
  return params;
}

std::vector<double> asset_path(const TreeParams& params, double S0, BernoulliPath path) {
  std::vector<double> prices(static_cast<std::size_t>(path.steps()));
  double s = S0;
  for (int t = 1; t <= path.steps(); ++t) {
    s *= path.up(t) ? params.u : params.d;
    prices[static_cast<std::size_t>(t - 1)] = s;
  }
  return prices;
}

std::vector<double> leaf_prices(const TreeParams& params, double S0) {
  const int n = params.depth();
  std::vector<double> row(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j) {
    row[static_cast<std::size_t>(j)] = S0 * std::pow(params.u, j) * std::pow(params.d, n - j);
  }
  return row;
}

double discount_factor(const MarketInputs& in) noexcept { return std::exp(-in.q * in.T); }

BernoulliPath BernoulliPath::from_bits(std::span<const int> bits) {
  if (bits.size() > static_cast<std::size_t>(kMaxDepth)) {
    throw ValuationError(ErrorCode::Overflow, "path longer than " + std::to_string(kMaxDepth));
  }
  std::uint64_t code = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw ValuationError(ErrorCode::InvalidInput, "path bits must be 0 or 1");
    code = (code << 1) | static_cast<std::uint64_t>(b);
  }
  return {code, static_cast<int>(bits.size())};
}

int BernoulliPath::up_count() const noexcept { return std::popcount(code_); }

std::vector<int> BernoulliPath::bits() const {
  std::vector<int> out(static_cast<std::size_t>(steps_));
  for (int t = 1; t <= steps_; ++t) out[static_cast<std::size_t>(t - 1)] = up(t) ? 1 : 0;
  return out;
}

}  // namespace bintree
