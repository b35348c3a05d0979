#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "bintree/bernoulli_path.hpp"
#include "bintree/model.hpp"

namespace bintree {

enum class PayoffKind { EuropeanCall, EuropeanPut, AsianPut, FixedLookbackPut };

/// CLI spelling: "euro-call", "euro-put", "asian-put", "lookback-put".
std::string_view to_string(PayoffKind kind) noexcept;
std::optional<PayoffKind> parse_payoff_kind(std::string_view name) noexcept;

/// True for payoffs that depend only on the terminal price.
constexpr bool path_independent(PayoffKind kind) noexcept {
  return kind == PayoffKind::EuropeanCall || kind == PayoffKind::EuropeanPut;
}

/// Terminal payoff V_N(x). Averages and minima run over S_1..S_N.
double payoff(PayoffKind kind, const TreeParams& params, double S0, double K, BernoulliPath path);

/// A built-in payoff kind or a user-supplied function of (params, S0, K, path).
class Payoff {
 public:
  using Function = std::function<double(const TreeParams&, double, double, BernoulliPath)>;

  Payoff(PayoffKind kind) : kind_(kind) {}  // NOLINT(google-explicit-constructor)
  Payoff(std::string name, Function fn, bool path_dependent = true)
      : name_(std::move(name)), fn_(std::move(fn)), path_dependent_(path_dependent) {}

  double operator()(const TreeParams& params, double S0, double K, BernoulliPath path) const {
    return fn_ ? fn_(params, S0, K, path) : payoff(*kind_, params, S0, K, path);
  }

  std::optional<PayoffKind> kind() const noexcept { return kind_; }
  bool path_dependent() const noexcept { return kind_ ? !path_independent(*kind_) : path_dependent_; }
  std::string name() const { return kind_ ? std::string(to_string(*kind_)) : name_; }

 private:
  std::optional<PayoffKind> kind_;
  std::string name_;
  Function fn_;
  bool path_dependent_ = true;
};

}  // namespace bintree
