#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "allocation.hpp"
#include "game.hpp"

namespace shapval {

struct EstimatorOptions {
  int workers = 1;
  bool cache = false;  // memoize utilities for the duration of one estimate
};

struct ShapleyEstimate {
  std::vector<double> phi_hat;
  std::vector<std::vector<double>> per_stratum;  // [player][k], stratified only
  std::vector<AllocationPlan> plans;             // one per player, stratified only
  int64_t utility_evals = 0;  // nominal count, before any caching
  int64_t budget = 0;         // permutations, or per-player sample budget
  uint64_t seed = 0;
  std::string method;
};

// Permutation sampling: for each of m random orderings, walk the ordering
// and credit each player with its marginal contribution when it joins. Every
// player sees exactly m marginals; utility_evals = m * (n + 1).
ShapleyEstimate permutation_shapley(const Game& g, int64_t permutations, uint64_t seed,
                                    const EstimatorOptions& opts = {});

// Sources for per-player stratum allocations.
struct FSource {
  FFamily f;
  int64_t budget = 0;  // per player
};
struct NeymanSource {
  // One row of per-stratum deviations per player, or a single shared row.
  std::vector<std::vector<double>> sigma;
  int64_t budget = 0;  // per player
};
using PlanSource = std::variant<FSource, NeymanSource, std::vector<AllocationPlan>>;

// Stratified sampling: per player i and stratum size k, average the marginal
// over m_k size-k coalitions of the others, drawn with replacement; when a
// stratum has no more than m_k coalitions, enumerate it instead. The
// estimate is the mean of the per-stratum means.
ShapleyEstimate stratified_shapley(const Game& g, const PlanSource& source, uint64_t seed,
                                   const EstimatorOptions& opts = {});

struct MethodSpec {
  enum class Kind { Permutation, Stratified };

  Kind kind = Kind::Permutation;
  int64_t budget = 100;
  FFamily f = FFamily::harmonic();  // stratified only
  std::optional<std::vector<std::vector<double>>> neyman_sigma;

  std::string label() const;

  static MethodSpec permutation(int64_t budget);
  static MethodSpec stratified(FFamily f, int64_t budget);
  static MethodSpec stratified_neyman(std::vector<std::vector<double>> sigma, int64_t budget);
};

ShapleyEstimate run_method(const MethodSpec& method, const Game& g, uint64_t seed,
                           const EstimatorOptions& opts = {});

struct RepeatedRunSummary {
  std::vector<double> mean_phi;
  std::vector<double> var_phi;  // across runs, divisor R-1
  std::vector<std::vector<double>> per_run;
  std::vector<int64_t> evals_per_run;
  int32_t runs = 0;
};

// Independent re-runs of one method under per-run derived seeds.
RepeatedRunSummary repeated_runs(const MethodSpec& method, const Game& g, int32_t runs,
                                 uint64_t master_seed, const EstimatorOptions& opts = {});

}  // namespace shapval
