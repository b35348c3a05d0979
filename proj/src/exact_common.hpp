#pragma once

#include <string>

#include "bintree/errors.hpp"
#include "bintree/exact_engine.hpp"
#include "bintree/paths.hpp"

namespace bintree::detail {

inline void check_enumerable(const ValuationRequest& req) {
  validate(req.inputs);
  if (req.params.depth() != req.inputs.N) {
    throw ValuationError(ErrorCode::LengthMismatch,
                         "tree has " + std::to_string(req.params.depth()) + " steps, inputs say N = " +
                             std::to_string(req.inputs.N));
  }
  if (req.inputs.N > kLargeEnumerationDepth && !req.allow_large) {
    throw ValuationError(ErrorCode::EnumerationTooLarge,
                         "enumerating 2^" + std::to_string(req.inputs.N) +
                             " paths requires allow_large above N = " +
                             std::to_string(kLargeEnumerationDepth));
  }
}

/// p(x) V_N(x) for one path.
inline double path_term(const ValuationRequest& req, BernoulliPath path) {
  const double prob = path_probability(req.params, path);
  if (prob == 0.0) return 0.0;
  return prob * req.payoff(req.params, req.inputs.S0, req.inputs.K, path);
}

}  // namespace bintree::detail
