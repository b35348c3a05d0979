#include "bintree/payoffs.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <utility>

namespace bintree {

namespace {

constexpr std::array<std::pair<PayoffKind, std::string_view>, 4> kNames{{
    {PayoffKind::EuropeanCall, "euro-call"},
    {PayoffKind::EuropeanPut, "euro-put"},
    {PayoffKind::AsianPut, "asian-put"},
    {PayoffKind::FixedLookbackPut, "lookback-put"},
}};

}  // namespace

std::string_view to_string(PayoffKind kind) noexcept {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<PayoffKind> parse_payoff_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

double payoff(PayoffKind kind, const TreeParams& params, double S0, double K, BernoulliPath path) {
  // Walk the trajectory once; the lattice is never materialized.
  double s = S0;
  double sum = 0.0;
  double lowest = std::numeric_limits<double>::infinity();
  const int n = path.steps();
  for (int t = 1; t <= n; ++t) {
    s *= path.up(t) ? params.u : params.d;
    sum += s;
    lowest = std::min(lowest, s);
  }
  switch (kind) {
    case PayoffKind::EuropeanCall: return std::max(s - K, 0.0);
    case PayoffKind::EuropeanPut: return std::max(K - s, 0.0);
    case PayoffKind::AsianPut: return std::max(K - sum / n, 0.0);
    case PayoffKind::FixedLookbackPut: return std::max(K - lowest, 0.0);
  }
  return 0.0;
}

}  // namespace bintree
