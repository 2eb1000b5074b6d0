#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tropflag/cells.hpp"
#include "tropflag/repdata.hpp"

namespace tropflag {

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string error;   // error code name on failure
  std::string detail;  // summary on success, message on failure
  double seconds = 0;  // not serialized, so reports stay reproducible

  nlohmann::json to_json() const;
};

struct SuiteReport {
  std::vector<PropertyResult> results;

  bool all_passed() const;
  const PropertyResult* first_failure() const;
  nlohmann::json to_json() const;
};

// Runs body, timing it; an Error becomes a failed result.
PropertyResult run_property(std::string name, const std::function<std::string()>& body);

// Each property throws an Error on the first violation and otherwise returns
// a one-line summary.
namespace props {

std::string semifield_axioms(std::uint64_t seed, int samples);
// Dimension, natural-number constants, sl2 and Serre relations, divided powers.
std::string rep_identities(const RepresentationData& rep);
std::string relations(const RepPtr& rep, int samples, std::uint64_t seed);
// Distinct supports, dimensions, b_w, support bound, reduced-word independence.
std::string census_invariants(const Census& c);
// classify(theta(h)) on the tropical grid and on random rational-function points.
std::string roundtrip(const Census& c, int radius, int samples, std::uint64_t seed);
std::string oracle(const Census& c, int samples, std::uint64_t seed);
std::string tropicalization(const Census& c, int points, std::uint64_t seed);
std::string phi_on_pieces(const Census& c, int radius);
// Gamma, H, gamma and its cocycle law over every pair and triple of weights.
std::string lambda_independence(const CartanDatum& cartan, const std::vector<Weight>& lambdas, int radius, int words,
                                std::uint64_t seed);
// A1xA1 with weight (a, a) under the swap against A1 with weight a.
std::string fold_to_a1(int a, int radius, int samples, std::uint64_t seed);
std::string stability(const Census& c, int words, std::uint64_t seed);

}  // namespace props

struct VerifyOptions {
  std::uint64_t seed = 0;
  int radius = 2;
  int samples = 20;
  int words = 200;
};

// The full property suite on one representation. Throws LambdaNotVeryDominant
// when the weight is unsuitable for the flag-manifold properties.
SuiteReport verify(const RepPtr& rep, const VerifyOptions& opt);

}  // namespace tropflag
