#include <doctest.h>

#include <cmath>

#include "core/bounds.hpp"
#include "core/error.hpp"
#include "core/exact.hpp"
#include "core/game.hpp"

using namespace shapval;

TEST_CASE("permutation bound matches the closed form") {
  CHECK(permutation_sample_bound({0.1, 0.05, 1.0, 0}) == 185);
  CHECK(permutation_sample_bound({0.1, 0.05, 2.0, 0}) == 738);
  CHECK(permutation_sample_bound({0.1, 0.05, 0.0, 0}) == 1);
}

TEST_CASE("stratified bound with a constant family") {
  // both formula terms collapse; the larger is 2 ln(2/delta) / eps^2
  for (int32_t n : {1, 5, 100}) {
    CHECK(stratified_sample_bound({0.1, 0.05, 1.0, n}, FFamily::constant()) == 738);
  }
}

TEST_CASE("stratified bound with the harmonic family at n=100") {
  CHECK(stratified_sample_bound({0.1, 0.05, 1.0, 100}, FFamily::harmonic()) == 19853);
}

TEST_CASE("harmonic closed form") {
  CHECK(stratified_sample_bound_harmonic({0.1, 0.05, 1.0, 100}) == 23180);
  CHECK(stratified_sample_bound_harmonic({0.1, 0.05, 1.0, 1}) == 738);
}

TEST_CASE("bounds are monotone in the targets") {
  int64_t base = permutation_sample_bound({0.1, 0.05, 1.0, 0});
  CHECK(permutation_sample_bound({0.05, 0.05, 1.0, 0}) >= base);
  CHECK(permutation_sample_bound({0.1, 0.01, 1.0, 0}) >= base);
  CHECK(permutation_sample_bound({0.1, 0.05, 2.0, 0}) >= base);
  CHECK(permutation_sample_bound({0.2, 0.05, 1.0, 0}) <= base);

  int64_t sbase = stratified_sample_bound_harmonic({0.1, 0.05, 1.0, 50});
  CHECK(stratified_sample_bound_harmonic({0.05, 0.05, 1.0, 50}) >= sbase);
  CHECK(stratified_sample_bound_harmonic({0.1, 0.01, 1.0, 50}) >= sbase);
  CHECK(stratified_sample_bound_harmonic({0.1, 0.05, 1.0, 100}) >= sbase);
}

TEST_CASE("invalid approximation specs are rejected") {
  CHECK_THROWS_AS(permutation_sample_bound({0.0, 0.05, 1.0, 0}), Error);
  CHECK_THROWS_AS(permutation_sample_bound({0.1, 2.0, 1.0, 0}), Error);
  CHECK_THROWS_AS(permutation_sample_bound({0.1, 0.05, -1.0, 0}), Error);
  CHECK_THROWS_AS(stratified_sample_bound({0.1, 0.05, 1.0, 0}, FFamily::harmonic()), Error);
  CHECK_THROWS_AS(stratified_sample_bound_harmonic({0.1, 0.05, 1.0, 0}), Error);
}

TEST_CASE("additive games never exceed epsilon") {
  Game g = make_synthetic_game(SyntheticGameSpec::additive({1.0, 2.0}));
  ExactShapleyResult exact = exact_shapley(g);
  ApproximationSpec spec{0.1, 0.05, 1.0, 2};
  EmpiricalCheckResult r = empirical_epsilon_delta_check(
      MethodSpec::permutation(0), g, exact.phi, spec, 100, 3);
  CHECK(r.budget == permutation_sample_bound(spec));
  CHECK(r.trials == 100);
  for (double e : r.exceedance) CHECK(e == doctest::Approx(0.0));
}

TEST_CASE("single-sample estimates often miss for the glove left player") {
  Game g = make_synthetic_game(SyntheticGameSpec::glove(1, 2));
  ExactShapleyResult exact = exact_shapley(g);
  // understating the range collapses the prescribed budget to one permutation
  ApproximationSpec spec{0.43, 0.05, 0.25, 3};
  EmpiricalCheckResult r = empirical_epsilon_delta_check(
      MethodSpec::permutation(0), g, exact.phi, spec, 300, 3);
  CHECK(r.budget == 1);
  // the left player's single 0/1 marginal lands 2/3 away about a third of the time
  CHECK(r.exceedance[0] > 0.15);
  CHECK(r.exceedance[0] < 0.55);
}

TEST_CASE("empirical check requires enough trials") {
  Game g = make_synthetic_game(SyntheticGameSpec::glove(1, 1));
  ExactShapleyResult exact = exact_shapley(g);
  CHECK_THROWS_AS(empirical_epsilon_delta_check(MethodSpec::permutation(0), g, exact.phi,
                                                {0.1, 0.05, 1.0, 2}, 50, 1),
                  Error);
}
