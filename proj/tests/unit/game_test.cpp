#include <doctest.h>

#include <atomic>
#include <cmath>
#include <memory>

#include "core/error.hpp"
#include "core/game.hpp"

using namespace shapval;

TEST_CASE("additive utility sums member weights") {
  Game g = make_synthetic_game(SyntheticGameSpec::additive({1.0, 2.0, 3.0}));
  CHECK(g.players() == 3);
  CHECK(g.utility(Coalition{}) == doctest::Approx(0.0));
  CHECK(g.utility(Coalition({0, 2})) == doctest::Approx(4.0));
  CHECK(g.utility(Coalition::full(3)) == doctest::Approx(6.0));
  CHECK(g.marginal(1, Coalition({0})) == doctest::Approx(2.0));
}

TEST_CASE("glove utility counts matched pairs") {
  Game g = make_synthetic_game(SyntheticGameSpec::glove(1, 2));
  CHECK(g.players() == 3);
  // player 0 holds the left glove, players 1 and 2 the rights
  CHECK(g.utility(Coalition({0})) == doctest::Approx(0.0));
  CHECK(g.utility(Coalition({1, 2})) == doctest::Approx(0.0));
  CHECK(g.utility(Coalition({0, 1})) == doctest::Approx(1.0));
  CHECK(g.utility(Coalition::full(3)) == doctest::Approx(1.0));
  CHECK(g.label() == "glove(1,2)");
}

TEST_CASE("weighted voting thresholds at the quota") {
  Game g = make_synthetic_game(SyntheticGameSpec::weighted_voting({3, 2, 1, 1}, 4.0));
  CHECK(g.utility(Coalition({0})) == doctest::Approx(0.0));
  CHECK(g.utility(Coalition({0, 1})) == doctest::Approx(1.0));
  CHECK(g.utility(Coalition({1, 2, 3})) == doctest::Approx(1.0));
  CHECK(g.utility(Coalition({2, 3})) == doctest::Approx(0.0));
}

TEST_CASE("symmetric majority needs a strict majority") {
  Game g = make_synthetic_game(SyntheticGameSpec::symmetric_majority(4));
  CHECK(g.utility(Coalition({0, 1})) == doctest::Approx(0.0));
  CHECK(g.utility(Coalition({0, 1, 2})) == doctest::Approx(1.0));
}

TEST_CASE("random bounded utility is pure and in range") {
  SyntheticGameSpec spec = SyntheticGameSpec::random_bounded(6, -2.0, 3.0, 11);
  Game a = make_synthetic_game(spec);
  Game b = make_synthetic_game(spec);
  for (uint64_t mask = 0; mask < 64; ++mask) {
    Coalition s = Coalition::from_mask(mask);
    double u = a.utility(s);
    CHECK(u >= -2.0);
    CHECK(u <= 3.0);
    CHECK(a.utility(s) == u);   // repeated call
    CHECK(b.utility(s) == u);   // fresh instance
  }
  Game c = make_synthetic_game(SyntheticGameSpec::random_bounded(6, -2.0, 3.0, 12));
  int diffs = 0;
  for (uint64_t mask = 0; mask < 64; ++mask) {
    if (a.utility(Coalition::from_mask(mask)) != c.utility(Coalition::from_mask(mask))) ++diffs;
  }
  CHECK(diffs > 32);
}

TEST_CASE("utility validates membership against the player count") {
  Game g = make_synthetic_game(SyntheticGameSpec::glove(1, 1));
  CHECK_THROWS_AS(g.utility(Coalition({2})), Error);
  CHECK_THROWS_AS(g.marginal(0, Coalition({0})), Error);
  CHECK_THROWS_AS(g.marginal(3, Coalition{}), Error);
}

TEST_CASE("normalize_utility zeroes the empty coalition") {
  Game g(2, UtilityRange{0.0, 5.0},
         [](const Coalition& s) { return 2.0 + static_cast<double>(s.size()); }, "offset");
  Game n = normalize_utility(g);
  CHECK(n.utility(Coalition{}) == doctest::Approx(0.0));
  CHECK(n.utility(Coalition({0, 1})) == doctest::Approx(2.0));
  CHECK(g.utility(Coalition{}) == doctest::Approx(2.0));
}

TEST_CASE("utility cache stops repeat evaluations") {
  auto calls = std::make_shared<std::atomic<int>>(0);
  Game g(3, UtilityRange{0.0, 3.0},
         [calls](const Coalition& s) {
           ++*calls;
           return static_cast<double>(s.size());
         },
         "counted");
  Game cached = with_utility_cache(g);
  Coalition s({0, 2});
  double u1 = cached.utility(s);
  double u2 = cached.utility(s);
  CHECK(u1 == u2);
  CHECK(calls->load() == 1);
  cached.utility(Coalition({1}));
  CHECK(calls->load() == 2);
}

TEST_CASE("spec validation rejects bad parameters") {
  CHECK_THROWS_AS(make_synthetic_game(SyntheticGameSpec::additive({})), Error);
  CHECK_THROWS_AS(make_synthetic_game(SyntheticGameSpec::glove(0, 2)), Error);
  CHECK_THROWS_AS(make_synthetic_game(SyntheticGameSpec::random_bounded(3, 2.0, 1.0, 1)), Error);
  CHECK_THROWS_AS(make_synthetic_game(SyntheticGameSpec::symmetric_majority(0)), Error);
}
