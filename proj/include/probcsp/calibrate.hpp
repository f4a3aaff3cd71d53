#ifndef PROBCSP_CALIBRATE_HPP
#define PROBCSP_CALIBRATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "probcsp/generator.hpp"
#include "probcsp/oracle.hpp"
#include "probcsp/rational.hpp"

namespace probcsp {

// Prediction-vs-reality experiment: per trial, generate a network, remove k
// values from every domain, and compare the predicted expectation against
// what actually became arc-inconsistent.
//
// The hypothesized removal count is the single uniform k below; there is no
// principled default, so the harness takes it as input and the caller
// sweeps it.
struct calibration_config {
  generator_config gen;    // gen.seed is the base; trial t reuses seed + t
  int k = 0;               // uniform removal count, 0 <= k <= gen.dom
  long long trials = 1;
  bool exhaustive = false;  // average over every joint removal outcome
  enumeration_budget budget;
};

// One CSV row. "First round" counts values whose support set on some
// constraint was wiped out by the removal event itself; "fixpoint" counts
// them against the domains AC-3 leaves behind, so cascading is visible in
// the gap between the columns. Both tallies run over the original domains,
// matching the prediction's event model (a removed value still counts, and
// a value with no supports to begin with counts under every outcome).
// In sampled mode the actual columns hold one realization; in exhaustive
// mode they hold exact means over all outcomes.
struct calibration_row {
  long long trial;
  std::uint64_t seed;
  double e_pred;
  double e_lower;
  double actual_first_round;
  double actual_fixpoint;
};

struct calibration_result {
  std::vector<calibration_row> rows;
  bool exhaustive = false;
  // exhaustive mode only, parallel to rows: the exact rational means
  std::vector<bigrat> exact_first_round;
  std::vector<bigrat> exact_fixpoint;
};

calibration_result run_calibrate(const calibration_config& config);

// "trial,seed,e_pred,e_lower,actual_first_round,actual_fixpoint" plus one
// line per row, reals at 9 significant digits.
std::string calibration_to_csv(const calibration_result& result);

}  // namespace probcsp

#endif
