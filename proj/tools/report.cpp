#include "report.hpp"

#include <iomanip>
#include <ostream>
#include <utility>
#include <vector>

#include "json.hpp"

namespace bintree::cli {

namespace {

using Json = nlohmann::ordered_json;

Json as_json(const RunReport& r) {
  Json j;
  j["method"] = r.method;
  j["payoff"] = r.payoff;
  j["S0"] = r.inputs.S0;
  j["K"] = r.inputs.K;
  j["q"] = r.inputs.q;
  j["sigma"] = r.inputs.sigma;
  j["T"] = r.inputs.T;
  j["N"] = r.inputs.N;
  j["M"] = r.M;
  j["R"] = r.R;
  j["seed"] = r.seed;
  j["reps"] = r.reps;
  j["value"] = r.value;
  j["variance"] = r.variance;
  j["std_error"] = r.std_error;
  j["wall_seconds"] = r.wall_seconds;
  if (r.empirical_variance) j["empirical_variance"] = *r.empirical_variance;
  return j;
}

}  // namespace

std::string to_json(const RunReport& report) { return as_json(report).dump(); }

void write_report(std::ostream& os, const RunReport& report, Format format) {
  const Json j = as_json(report);
  switch (format) {
    case Format::Json:
      os << j.dump() << '\n';
      break;
    case Format::Csv: {
      bool first = true;
      for (const auto& [key, _] : j.items()) {
        os << (first ? "" : ",") << key;
        first = false;
      }
      os << '\n';
      first = true;
      for (const auto& [_, value] : j.items()) {
        os << (first ? "" : ",") << (value.is_string() ? value.get<std::string>() : value.dump());
        first = false;
      }
      os << '\n';
      break;
    }
    case Format::Plain:
      for (const auto& [key, value] : j.items()) {
        os << std::left << std::setw(20) << key
           << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
      }
      break;
  }
}

}  // namespace bintree::cli
