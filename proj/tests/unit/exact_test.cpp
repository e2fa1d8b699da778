#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.hpp"
#include "core/exact.hpp"
#include "core/game.hpp"
#include "core/stats.hpp"

using namespace shapval;

TEST_CASE("glove values split two thirds, one sixth, one sixth") {
  Game g = make_synthetic_game(SyntheticGameSpec::glove(1, 2));
  ExactShapleyResult r = exact_shapley(g);
  CHECK(r.phi[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(r.phi[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(r.phi[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("additive values equal the weights") {
  Game g = make_synthetic_game(SyntheticGameSpec::additive({1.0, 2.0, 3.0}));
  ExactShapleyResult r = exact_shapley(g);
  CHECK(std::abs(r.phi[0] - 1.0) < 1e-12);
  CHECK(std::abs(r.phi[1] - 2.0) < 1e-12);
  CHECK(std::abs(r.phi[2] - 3.0) < 1e-12);
  for (const auto& row : r.stratum_variances) {
    for (double v : row) CHECK(v == doctest::Approx(0.0));
  }
}

TEST_CASE("glove stratum statistics match hand enumeration") {
  Game g = make_synthetic_game(SyntheticGameSpec::glove(1, 2));
  ExactShapleyResult r = exact_shapley(g);
  // left-glove player: marginal 0 at k=0, then 1 against either right holder
  CHECK(r.stratum_means[0][0] == doctest::Approx(0.0));
  CHECK(r.stratum_means[0][1] == doctest::Approx(1.0));
  CHECK(r.stratum_means[0][2] == doctest::Approx(1.0));
  // a right-glove player pairs with the left in one of the two k=1 coalitions
  CHECK(r.stratum_means[1][1] == doctest::Approx(0.5));
  CHECK(r.stratum_variances[1][1] == doctest::Approx(0.25));
  CHECK(r.stratum_ranges[1][1] == doctest::Approx(1.0));
  CHECK(r.stratum_variances[1][0] == doctest::Approx(0.0));
  CHECK(r.stratum_variances[1][2] == doctest::Approx(0.0));

  auto [means, vars] = exact_stratum_stats(g, 1);
  CHECK(means == r.stratum_means[1]);
  CHECK(vars == r.stratum_variances[1]);
}

TEST_CASE("phi is the mean of stratum means") {
  Game g = make_synthetic_game(SyntheticGameSpec::random_bounded(6, 0.0, 1.0, 3));
  ExactShapleyResult r = exact_shapley(g);
  for (int32_t i = 0; i < 6; ++i) {
    KahanSum s;
    for (double m : r.stratum_means[static_cast<size_t>(i)]) s.add(m);
    CHECK(r.phi[static_cast<size_t>(i)] == doctest::Approx(s.value() / 6.0).epsilon(1e-12));
  }
}

TEST_CASE("worker count does not change exact results") {
  Game g = make_synthetic_game(SyntheticGameSpec::random_bounded(8, -1.0, 1.0, 9));
  ExactShapleyResult a = exact_shapley(g, {20, 1});
  ExactShapleyResult b = exact_shapley(g, {20, 4});
  CHECK(a.phi == b.phi);
  CHECK(a.stratum_means == b.stratum_means);
  CHECK(a.stratum_variances == b.stratum_variances);
}

TEST_CASE("player caps are enforced") {
  Game small = make_synthetic_game(SyntheticGameSpec::symmetric_majority(4));
  CHECK_THROWS_AS(exact_shapley(small, {3, 1}), Error);
  Game big = make_synthetic_game(SyntheticGameSpec::symmetric_majority(25));
  CHECK_THROWS_AS(exact_shapley(big, {30, 1}), Error);
}

TEST_CASE("axiom checks pass on exact values") {
  Game g = make_synthetic_game(SyntheticGameSpec::glove(1, 2));
  ExactShapleyResult r = exact_shapley(g);
  Game partner = make_synthetic_game(SyntheticGameSpec::additive({0.5, 0.25, 0.25}));
  AxiomReport report = check_axioms(g, r.phi, {}, &partner);
  CHECK(report.all_pass());
  CHECK(report.efficiency.residual <= 1e-12);
  REQUIRE(report.additivity.has_value());
  CHECK(report.additivity->pass);
  REQUIRE(report.symmetric_pairs.size() == 1);
  CHECK(report.symmetric_pairs[0] == std::pair<int32_t, int32_t>{1, 2});
  CHECK(report.dummy_players.empty());
}

TEST_CASE("axiom checks flag violations and dummies") {
  Game g = make_synthetic_game(SyntheticGameSpec::additive({1.0, 0.0, 2.0}));
  ExactShapleyResult r = exact_shapley(g);
  AxiomReport ok = check_axioms(g, r.phi);
  CHECK(ok.all_pass());
  REQUIRE(ok.dummy_players.size() == 1);
  CHECK(ok.dummy_players[0] == 1);

  std::vector<double> wrong = r.phi;
  wrong[0] += 0.1;
  AxiomReport bad = check_axioms(g, wrong);
  CHECK_FALSE(bad.efficiency.pass);
  CHECK_FALSE(bad.all_pass());
}

TEST_CASE("efficiency holds on random games") {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    Game g = make_synthetic_game(SyntheticGameSpec::random_bounded(7, -1.0, 2.0, seed));
    ExactShapleyResult r = exact_shapley(g);
    double total = std::accumulate(r.phi.begin(), r.phi.end(), 0.0);
    double span = g.utility(Coalition::full(7)) - g.utility(Coalition{});
    CHECK(total == doctest::Approx(span).epsilon(1e-10));
  }
}
