#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "estimators.hpp"
#include "exact.hpp"
#include "game.hpp"
#include "learners.hpp"

namespace shapval {

// Exact values side by side with repeated estimates of each method.
struct ExactVsEstimateResult {
  std::vector<double> exact;
  struct Entry {
    MethodSpec method;
    RepeatedRunSummary summary;
  };
  std::vector<Entry> entries;
};

ExactVsEstimateResult exact_vs_estimate(const Game& g, std::span<const MethodSpec> methods,
                                        int32_t repeats, uint64_t seed, int32_t cap = 20,
                                        const EstimatorOptions& opts = {});

// Variance sweep over stratified exponents and budgets, with an optional
// permutation baseline at the same budgets.
struct SweepGrid {
  std::vector<double> a_values;  // power-family exponents
  std::vector<int64_t> m_values;
  bool include_permutation = true;
  int32_t repeats = 5;
  uint64_t seed = 1;

  void validate() const;
};

struct SweepCell {
  std::string method;
  std::optional<double> a;  // empty for the permutation baseline
  int64_t m = 0;
  double mean_variance = 0.0;  // across-run variance, averaged over players
  double mean_evals = 0.0;
  std::vector<double> mean_phi;
  std::vector<double> var_phi;
};

std::vector<SweepCell> variance_study(const Game& g, const SweepGrid& grid,
                                      const EstimatorOptions& opts = {});

// Game over groups of a base game's players: a coalition of groups plays as
// the union of their members.
Game group_game(const Game& base, const GroupAssignment& assignment);

RepeatedRunSummary group_shapley(const Game& base, const GroupAssignment& assignment,
                                 const MethodSpec& method, int32_t repeats, uint64_t seed,
                                 const EstimatorOptions& opts = {});

enum class RankingRule { ValueDesc, ValueMinusCVarianceDesc, Random };

RankingRule ranking_rule_from_string(const std::string& name);
std::string ranking_rule_label(RankingRule rule);

struct RemovalCurve {
  std::string ranking;
  std::vector<int32_t> order;       // groups in removal order
  std::vector<double> accuracies;   // length groups + 1, starts at the full
                                    // set, ends at the empty set
};

// Removes groups one at a time in the given ranking and re-evaluates the
// base utility on the remaining rows after each step.
RemovalCurve group_removal(const Game& base, const GroupAssignment& assignment,
                           RankingRule rule, double c, const RepeatedRunSummary& values,
                           uint64_t seed);

// Trapezoidal area under a removal curve, unit steps.
double curve_auc(const RemovalCurve& curve);

// Blobs train/test pair with round-robin groups, one of which gets its
// labels shuffled so it carries noise instead of signal.
struct JunkFixture {
  TrainTestSplit split;
  GroupAssignment groups;
  int32_t junk_group = 0;
};

struct JunkFixtureSpec {
  int32_t groups = 10;
  int32_t per_group = 10;
  int32_t junk_group = 0;  // negative: corrupt nothing
  int32_t test_per_class = 30;
  int32_t dims = 2;
  double separation = 4.0;
  double noise = 1.0;
};

JunkFixture blobs_with_junk(const JunkFixtureSpec& spec, uint64_t seed);

}  // namespace shapval
