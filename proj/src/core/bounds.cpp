#include "bounds.hpp"

#include <cmath>

#include "error.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "stats.hpp"

namespace shapval {

namespace {

void check_spec(const ApproximationSpec& spec, bool need_players) {
  require(std::isfinite(spec.epsilon) && spec.epsilon > 0.0, ErrorCode::InvalidArgument,
          "epsilon must be positive");
  require(std::isfinite(spec.delta) && spec.delta > 0.0 && spec.delta < 1.0,
          ErrorCode::InvalidArgument, "delta must be inside (0, 1)");
  if (need_players) {
    require(spec.players >= 1, ErrorCode::InvalidArgument, "player count must be at least 1");
  }
}

int64_t ceil_to_count(double value) {
  require(std::isfinite(value), ErrorCode::InvalidArgument, "bound is not finite");
  require(value < 9.0e18, ErrorCode::InvalidArgument, "bound exceeds representable counts");
  double c = std::ceil(value);
  int64_t m = static_cast<int64_t>(c);
  return m < 1 ? 1 : m;
}

}  // namespace

int64_t permutation_sample_bound(const ApproximationSpec& spec) {
  check_spec(spec, false);
  require(std::isfinite(spec.range) && spec.range >= 0.0, ErrorCode::InvalidArgument,
          "marginal range must be nonnegative");
  double r = spec.range;
  return ceil_to_count(r * r * std::log(2.0 / spec.delta) /
                       (2.0 * spec.epsilon * spec.epsilon));
}

int64_t stratified_sample_bound(const ApproximationSpec& spec, const FFamily& f) {
  check_spec(spec, true);
  int32_t n = spec.players;
  KahanSum weight_sum, inverse_sum;
  double last = 0.0;
  for (int32_t k = 0; k < n; ++k) {
    double w = f(k);
    require(std::isfinite(w) && w > 0.0, ErrorCode::InvalidArgument,
            "weighting family must be positive on every stratum");
    weight_sum.add(w);
    inverse_sum.add(1.0 / w);
    if (k == n - 1) last = w;
  }
  double ln_term = std::log(2.0 / spec.delta);
  double eps2 = spec.epsilon * spec.epsilon;
  double nn = static_cast<double>(n) * static_cast<double>(n);
  double total = weight_sum.value();
  double variance_term = 16.0 * ln_term / (17.0 * eps2 * nn) * inverse_sum.value() * total;
  double tail_term = 2.0 * ln_term / (eps2 * nn * last * last) * total * total;
  return ceil_to_count(variance_term > tail_term ? variance_term : tail_term);
}

int64_t stratified_sample_bound_harmonic(const ApproximationSpec& spec) {
  check_spec(spec, true);
  double logn = std::log(static_cast<double>(spec.players)) + 1.0;
  return ceil_to_count(2.0 * std::log(2.0 / spec.delta) * logn * logn /
                       (spec.epsilon * spec.epsilon));
}

EmpiricalCheckResult empirical_epsilon_delta_check(const MethodSpec& method, const Game& g,
                                                   std::span<const double> exact_phi,
                                                   const ApproximationSpec& spec,
                                                   int32_t trials, uint64_t seed,
                                                   const EstimatorOptions& opts) {
  require(trials >= 100, ErrorCode::InvalidArgument,
          "too few trials to resolve the failure rate");
  int32_t n = g.players();
  require(static_cast<int32_t>(exact_phi.size()) == n, ErrorCode::InvalidArgument,
          "exact value vector length does not match player count");

  EmpiricalCheckResult result;
  result.trials = trials;
  if (method.kind == MethodSpec::Kind::Permutation) {
    result.budget = permutation_sample_bound(spec);
  } else {
    ApproximationSpec with_n = spec;
    with_n.players = n;
    result.budget = stratified_sample_bound(with_n, method.f);
  }

  MethodSpec at_bound = method;
  at_bound.budget = result.budget;

  size_t nn = static_cast<size_t>(n);
  std::vector<int32_t> misses(static_cast<size_t>(trials) * nn, 0);
  EstimatorOptions inner = opts;
  inner.workers = 1;
  parallel_for(static_cast<size_t>(trials), opts.workers, [&](size_t t) {
    uint64_t trial_seed = derive_seed(seed, {stream::kTrial, static_cast<uint64_t>(t)});
    ShapleyEstimate est = run_method(at_bound, g, trial_seed, inner);
    for (size_t i = 0; i < nn; ++i) {
      if (std::abs(est.phi_hat[i] - exact_phi[i]) > spec.epsilon) misses[t * nn + i] = 1;
    }
  });

  result.exceedance.assign(nn, 0.0);
  for (size_t i = 0; i < nn; ++i) {
    int64_t count = 0;
    for (size_t t = 0; t < static_cast<size_t>(trials); ++t) count += misses[t * nn + i];
    result.exceedance[i] = static_cast<double>(count) / static_cast<double>(trials);
  }
  return result;
}

}  // namespace shapval
