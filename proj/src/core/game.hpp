#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "coalition.hpp"

namespace shapval {

struct UtilityRange {
  double lo = 0.0;
  double hi = 1.0;
  double width() const { return hi - lo; }
};

// A cooperative game: a fixed player count plus a pure utility on coalitions.
// The utility callable must be deterministic; everything downstream (exact
// values, estimators, reproducibility checks) leans on that.
class Game {
 public:
  Game(int32_t players, UtilityRange range,
       std::function<double(const Coalition&)> utility, std::string label);

  int32_t players() const { return players_; }
  const UtilityRange& range() const { return range_; }
  const std::string& label() const { return label_; }

  double utility(const Coalition& s) const;

  // U(S + i) - U(S); pre: i valid and not in S.
  double marginal(int32_t player, const Coalition& s) const;

 private:
  int32_t players_;
  UtilityRange range_;
  std::function<double(const Coalition&)> utility_;
  std::string label_;
};

// Same game with U(S) - U(empty); shifts the empty coalition to zero.
Game normalize_utility(const Game& g);

// Memoizes utilities by coalition. Worth it only when the same coalitions
// recur (grouped games, removal curves); estimators draw mostly fresh ones.
Game with_utility_cache(const Game& g);

struct SyntheticGameSpec {
  enum class Kind {
    Additive,           // U(S) = sum of member weights
    Glove,              // left/right gloves, U = matched pairs
    WeightedVoting,     // U(S) = 1 iff member weight total meets the quota
    SymmetricMajority,  // U(S) = 1 iff |S| > n/2
    RandomBounded,      // seeded uniform draw in [lo, hi] per coalition
  };

  Kind kind = Kind::Additive;
  std::vector<double> weights;  // additive, weighted-voting
  double quota = 0.0;           // weighted-voting
  int32_t players = 0;          // symmetric-majority, random-bounded
  int32_t left_gloves = 1;      // glove
  int32_t right_gloves = 2;     // glove
  double lo = 0.0;              // random-bounded
  double hi = 1.0;              // random-bounded
  uint64_t seed = 0;            // random-bounded

  static SyntheticGameSpec additive(std::vector<double> weights);
  static SyntheticGameSpec glove(int32_t left, int32_t right);
  static SyntheticGameSpec weighted_voting(std::vector<double> weights, double quota);
  static SyntheticGameSpec symmetric_majority(int32_t players);
  static SyntheticGameSpec random_bounded(int32_t players, double lo, double hi, uint64_t seed);
};

Game make_synthetic_game(const SyntheticGameSpec& spec);

}  // namespace shapval
