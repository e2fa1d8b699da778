#include "game.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "error.hpp"
#include "rng.hpp"

namespace shapval {

Game::Game(int32_t players, UtilityRange range,
           std::function<double(const Coalition&)> utility, std::string label)
    : players_(players), range_(range), utility_(std::move(utility)), label_(std::move(label)) {
  require(players_ >= 1, ErrorCode::InvalidArgument, "game needs at least one player");
  require(range_.hi >= range_.lo, ErrorCode::InvalidArgument, "utility range is inverted");
  require(static_cast<bool>(utility_), ErrorCode::InvalidArgument, "utility callable is empty");
}

double Game::utility(const Coalition& s) const {
  if (!s.empty()) {
    require(s.members().back() < players_, ErrorCode::InvalidArgument,
            "coalition member outside the game");
  }
  return utility_(s);
}

double Game::marginal(int32_t player, const Coalition& s) const {
  require(player >= 0 && player < players_, ErrorCode::InvalidArgument,
          "player index outside the game");
  return utility(s.with(player)) - utility(s);
}

Game normalize_utility(const Game& g) {
  double base = g.utility(Coalition{});
  UtilityRange r{g.range().lo - base, g.range().hi - base};
  return Game(
      g.players(), r,
      [g, base](const Coalition& s) { return g.utility(s) - base; },
      g.label() + "+normalized");
}

namespace {

struct CoalitionKeyHash {
  size_t operator()(const std::vector<int32_t>& members) const {
    uint64_t h = 0x5ca1ab1e;
    for (int32_t m : members) h = mix64(h ^ mix64(static_cast<uint64_t>(m) + 1));
    return static_cast<size_t>(h);
  }
};

}  // namespace

Game with_utility_cache(const Game& g) {
  struct Cache {
    std::mutex mutex;
    std::unordered_map<std::vector<int32_t>, double, CoalitionKeyHash> values;
  };
  auto cache = std::make_shared<Cache>();
  return Game(
      g.players(), g.range(),
      [g, cache](const Coalition& s) {
        {
          std::lock_guard<std::mutex> lock(cache->mutex);
          auto it = cache->values.find(s.members());
          if (it != cache->values.end()) return it->second;
        }
        double u = g.utility(s);
        std::lock_guard<std::mutex> lock(cache->mutex);
        cache->values.emplace(s.members(), u);
        return u;
      },
      g.label());
}

SyntheticGameSpec SyntheticGameSpec::additive(std::vector<double> weights) {
  SyntheticGameSpec s;
  s.kind = Kind::Additive;
  s.weights = std::move(weights);
  return s;
}

SyntheticGameSpec SyntheticGameSpec::glove(int32_t left, int32_t right) {
  SyntheticGameSpec s;
  s.kind = Kind::Glove;
  s.left_gloves = left;
  s.right_gloves = right;
  return s;
}

SyntheticGameSpec SyntheticGameSpec::weighted_voting(std::vector<double> weights, double quota) {
  SyntheticGameSpec s;
  s.kind = Kind::WeightedVoting;
  s.weights = std::move(weights);
  s.quota = quota;
  return s;
}

SyntheticGameSpec SyntheticGameSpec::symmetric_majority(int32_t players) {
  SyntheticGameSpec s;
  s.kind = Kind::SymmetricMajority;
  s.players = players;
  return s;
}

SyntheticGameSpec SyntheticGameSpec::random_bounded(int32_t players, double lo, double hi,
                                                    uint64_t seed) {
  SyntheticGameSpec s;
  s.kind = Kind::RandomBounded;
  s.players = players;
  s.lo = lo;
  s.hi = hi;
  s.seed = seed;
  return s;
}

namespace {

Game make_additive(const SyntheticGameSpec& spec) {
  require(!spec.weights.empty(), ErrorCode::InvalidArgument, "additive game needs weights");
  auto weights = spec.weights;
  double lo = 0.0, hi = 0.0;
  for (double w : weights) (w < 0 ? lo : hi) += w;
  return Game(
      static_cast<int32_t>(weights.size()), UtilityRange{lo, hi},
      [weights](const Coalition& s) {
        double total = 0.0;
        for (int32_t m : s.members()) total += weights[static_cast<size_t>(m)];
        return total;
      },
      "additive(n=" + std::to_string(weights.size()) + ")");
}

Game make_glove(const SyntheticGameSpec& spec) {
  require(spec.left_gloves >= 1 && spec.right_gloves >= 1, ErrorCode::InvalidArgument,
          "glove game needs at least one glove per side");
  int32_t left = spec.left_gloves;
  int32_t n = spec.left_gloves + spec.right_gloves;
  double top = static_cast<double>(std::min(spec.left_gloves, spec.right_gloves));
  return Game(
      n, UtilityRange{0.0, top},
      [left](const Coalition& s) {
        int32_t l = 0, r = 0;
        for (int32_t m : s.members()) (m < left ? l : r) += 1;
        return static_cast<double>(std::min(l, r));
      },
      "glove(" + std::to_string(spec.left_gloves) + "," + std::to_string(spec.right_gloves) + ")");
}

Game make_weighted_voting(const SyntheticGameSpec& spec) {
  require(!spec.weights.empty(), ErrorCode::InvalidArgument, "voting game needs weights");
  for (double w : spec.weights) {
    require(w >= 0.0, ErrorCode::InvalidArgument, "voting weights must be non-negative");
  }
  require(spec.quota > 0.0, ErrorCode::InvalidArgument, "voting quota must be positive");
  auto weights = spec.weights;
  double quota = spec.quota;
  return Game(
      static_cast<int32_t>(weights.size()), UtilityRange{0.0, 1.0},
      [weights, quota](const Coalition& s) {
        double total = 0.0;
        for (int32_t m : s.members()) total += weights[static_cast<size_t>(m)];
        return total >= quota ? 1.0 : 0.0;
      },
      "weighted-voting(n=" + std::to_string(weights.size()) + ")");
}

Game make_symmetric_majority(const SyntheticGameSpec& spec) {
  require(spec.players >= 1, ErrorCode::InvalidArgument, "majority game needs players");
  int32_t n = spec.players;
  return Game(
      n, UtilityRange{0.0, 1.0},
      [n](const Coalition& s) { return 2 * static_cast<int32_t>(s.size()) > n ? 1.0 : 0.0; },
      "symmetric-majority(n=" + std::to_string(n) + ")");
}

// Utility of each coalition is an independent-looking uniform draw fixed by
// (seed, membership). Deriving it by hashing keeps the game pure without any
// shared mutable state.
Game make_random_bounded(const SyntheticGameSpec& spec) {
  require(spec.players >= 1, ErrorCode::InvalidArgument, "random game needs players");
  require(spec.hi >= spec.lo, ErrorCode::InvalidArgument, "random game range is inverted");
  double lo = spec.lo, hi = spec.hi;
  uint64_t seed = derive_seed(spec.seed, {stream::kRandomGame});
  return Game(
      spec.players, UtilityRange{lo, hi},
      [lo, hi, seed](const Coalition& s) {
        uint64_t h = seed;
        for (int32_t m : s.members()) h = mix64(h ^ mix64(static_cast<uint64_t>(m) + 1));
        double u = static_cast<double>(mix64(h) >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
      },
      "random-bounded(n=" + std::to_string(spec.players) + ",seed=" + std::to_string(spec.seed) +
          ")");
}

}  // namespace

Game make_synthetic_game(const SyntheticGameSpec& spec) {
  switch (spec.kind) {
    case SyntheticGameSpec::Kind::Additive:
      return make_additive(spec);
    case SyntheticGameSpec::Kind::Glove:
      return make_glove(spec);
    case SyntheticGameSpec::Kind::WeightedVoting:
      return make_weighted_voting(spec);
    case SyntheticGameSpec::Kind::SymmetricMajority:
      return make_symmetric_majority(spec);
    case SyntheticGameSpec::Kind::RandomBounded:
      return make_random_bounded(spec);
  }
  fail(ErrorCode::InvalidArgument, "unknown synthetic game kind");
}

}  // namespace shapval
