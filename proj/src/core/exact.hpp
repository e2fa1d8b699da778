#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "game.hpp"

namespace shapval {

// Exhaustive Shapley values plus per-stratum statistics. Stratum k of player
// i holds the marginal contributions U(S+i) - U(S) over all size-k subsets S
// of the other players; phi[i] is the mean of the stratum means.
struct ExactShapleyResult {
  std::vector<double> phi;
  std::vector<std::vector<double>> stratum_means;      // [player][k]
  std::vector<std::vector<double>> stratum_variances;  // population, [player][k]
  std::vector<std::vector<double>> stratum_ranges;     // max - min marginal, [player][k]
};

struct ExactOptions {
  int32_t cap = 20;  // refuse games with more players than this
  int workers = 1;
};

ExactShapleyResult exact_shapley(const Game& g, const ExactOptions& opts = {});

// Stratum means and population variances for a single player.
std::pair<std::vector<double>, std::vector<double>> exact_stratum_stats(
    const Game& g, int32_t player, const ExactOptions& opts = {});

struct AxiomCheck {
  bool pass = true;
  double residual = 0.0;
};

struct AxiomReport {
  AxiomCheck efficiency;
  AxiomCheck symmetry;
  AxiomCheck dummy;
  std::optional<AxiomCheck> additivity;
  std::vector<std::pair<int32_t, int32_t>> symmetric_pairs;
  std::vector<int32_t> dummy_players;
  bool all_pass() const {
    return efficiency.pass && symmetry.pass && dummy.pass &&
           (!additivity || additivity->pass);
  }
};

struct AxiomOptions {
  double tolerance = 1e-9;        // residuals at or below this pass
  double match_tolerance = 1e-12; // classifying symmetric pairs / dummies
  int32_t cap = 20;
  int workers = 1;
};

// Verifies efficiency, symmetry and dummy for the supplied values; when a
// second game is given, also additivity of the two games' exact values.
AxiomReport check_axioms(const Game& g, std::span<const double> phi,
                         const AxiomOptions& opts = {},
                         const Game* additivity_partner = nullptr);

}  // namespace shapval
