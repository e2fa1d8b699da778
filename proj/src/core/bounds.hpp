#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "allocation.hpp"
#include "estimators.hpp"
#include "game.hpp"

namespace shapval {

// Accuracy target: every player's estimate within epsilon of its true value
// with probability at least 1 - delta.
struct ApproximationSpec {
  double epsilon = 0.1;
  double delta = 0.05;
  double range = 1.0;   // marginal-contribution range, permutation bound only
  int32_t players = 0;  // stratified bounds only
};

// Permutations sufficient under Hoeffding: ceil(r^2 ln(2/delta) / (2 eps^2)).
int64_t permutation_sample_bound(const ApproximationSpec& spec);

// Per-player sample budget sufficient for the stratified estimator under an
// f(k)-proportional allocation, for marginals in [-1, 1].
int64_t stratified_sample_bound(const ApproximationSpec& spec, const FFamily& f);

// Closed-form specialization for the harmonic family:
// ceil(2 ln(2/delta) (ln n + 1)^2 / eps^2).
int64_t stratified_sample_bound_harmonic(const ApproximationSpec& spec);

struct EmpiricalCheckResult {
  int64_t budget = 0;               // prescribed by the matching bound
  std::vector<double> exceedance;   // per player: fraction of trials with
                                    // |estimate - exact| > epsilon
  int32_t trials = 0;
};

// Runs the estimator at its prescribed budget many times and reports how
// often each player's error exceeded epsilon; sound when every fraction
// stays near or below delta.
EmpiricalCheckResult empirical_epsilon_delta_check(const MethodSpec& method, const Game& g,
                                                   std::span<const double> exact_phi,
                                                   const ApproximationSpec& spec,
                                                   int32_t trials, uint64_t seed,
                                                   const EstimatorOptions& opts = {});

}  // namespace shapval
