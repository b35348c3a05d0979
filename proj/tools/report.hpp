#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "bintree/model.hpp"

namespace bintree::cli {

/// Result of one `price` invocation.
struct RunReport {
  std::string method;
  std::string payoff;
  MarketInputs inputs;
  std::uint64_t M = 1;
  std::uint64_t R = 0;
  std::uint64_t seed = 0;
  std::uint64_t reps = 1;
  double value = 0.0;
  double variance = 0.0;
  double std_error = 0.0;
  double wall_seconds = 0.0;
  std::optional<double> empirical_variance;  // only for reps > 1
};

enum class Format { Json, Csv, Plain };

std::string to_json(const RunReport& report);
void write_report(std::ostream& os, const RunReport& report, Format format);

}  // namespace bintree::cli
