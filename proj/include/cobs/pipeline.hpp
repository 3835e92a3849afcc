// End-to-end driver: parse the input model, pick or validate the prime, run
// the Frobenius / lifting / splitting / obstruction stages in order, and emit
// the JSON report with provenance.
#pragma once

#include <json.hpp>

#include "cobs/frobenius.hpp"
#include "cobs/obstruction.hpp"
#include "cobs/tensor.hpp"

namespace cobs {

struct RunConfig {
  // Exactly one input source.
  std::string poly;            // inline polynomial text
  std::string poly_file;       // file containing the polynomial text
  std::string frobenius_file;  // imported Frobenius JSON

  std::string mode = "auto";   // auto | surface | jacobian | tensor
  long p = 0;                  // 0 = pick the first good prime
  int precision = 3;           // requested digits; raised if lifting needs more
  int char_bound = 3;          // primes <= char_bound are never picked
  bool vanilla = false;        // skip the per-factor refinement of the bound
  bool recheck = false;        // recompute at truncation+1 / precision+1
  std::string emit_frobenius;  // write the computed Frobenius JSON here
  FrobeniusOptions frobenius;
};

// Config from a JSON object (batch mode); unknown keys are rejected.
RunConfig run_config_from_json(const nlohmann::json& j);

// Smallest prime >= max(lower, 2r+7, n+2) passing good_prime_check;
// deterministic.  BadInput past the search ceiling.
Int next_good_prime(const HypersurfaceInput& input, const Int& lower,
                    int char_bound, long ceiling = 100000);

// The full pipeline.  The returned JSON is the obstruction report plus a
// "provenance" object (backend, precisions, truncation, functional-equation
// sign, the lifted polynomial, stability-recheck status).
nlohmann::json run(const RunConfig& cfg);

}  // namespace cobs
