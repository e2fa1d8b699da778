#include "estimators.hpp"

#include <algorithm>
#include <cmath>

#include "combinatorics.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "stats.hpp"

namespace shapval {

ShapleyEstimate permutation_shapley(const Game& g, int64_t permutations, uint64_t seed,
                                    const EstimatorOptions& opts) {
  require(permutations >= 1, ErrorCode::InvalidArgument, "need at least one permutation");
  const Game game = opts.cache ? with_utility_cache(g) : g;
  int32_t n = game.players();
  size_t nn = static_cast<size_t>(n);
  size_t m = static_cast<size_t>(permutations);

  // marginals[t * n + i] = marginal of player i in ordering t.
  std::vector<double> marginals(m * nn);
  parallel_for(m, opts.workers, [&](size_t t) {
    Rng rng(derive_seed(seed, {stream::kPermutationTask, static_cast<uint64_t>(t)}));
    std::vector<int32_t> order(nn);
    for (int32_t i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    rng.shuffle(order);

    Coalition prefix;
    double prev = game.utility(prefix);
    for (int32_t player : order) {
      prefix = prefix.with(player);
      double cur = game.utility(prefix);
      marginals[t * nn + static_cast<size_t>(player)] = cur - prev;
      prev = cur;
    }
  });

  // Incremental running mean, ordering index t going 1..m.
  ShapleyEstimate est;
  est.phi_hat.assign(nn, 0.0);
  for (size_t t = 0; t < m; ++t) {
    double tt = static_cast<double>(t + 1);
    for (size_t i = 0; i < nn; ++i) {
      est.phi_hat[i] = est.phi_hat[i] * (tt - 1.0) / tt + marginals[t * nn + i] / tt;
    }
  }
  est.utility_evals = permutations * (static_cast<int64_t>(n) + 1);
  est.budget = permutations;
  est.seed = seed;
  est.method = "permutation";
  return est;
}

namespace {

std::vector<AllocationPlan> resolve_plans(int32_t n, const PlanSource& source) {
  size_t nn = static_cast<size_t>(n);
  std::vector<AllocationPlan> plans;

  if (const auto* fs = std::get_if<FSource>(&source)) {
    AllocationPlan plan = integerize_allocation(allocate_f(n, fs->budget, fs->f), fs->budget);
    plans.assign(nn, plan);
    return plans;
  }

  if (const auto* ns = std::get_if<NeymanSource>(&source)) {
    require(ns->sigma.size() == 1 || ns->sigma.size() == nn, ErrorCode::InvalidArgument,
            "deviation matrix needs one row, or one per player");
    plans.reserve(nn);
    for (size_t i = 0; i < nn; ++i) {
      const auto& row = ns->sigma.size() == 1 ? ns->sigma[0] : ns->sigma[i];
      require(row.size() == nn, ErrorCode::InvalidArgument,
              "deviation row length must equal the player count");
      plans.push_back(integerize_allocation(allocate_neyman(row, ns->budget), ns->budget));
    }
    return plans;
  }

  const auto& given = std::get<std::vector<AllocationPlan>>(source);
  require(given.size() == 1 || given.size() == nn, ErrorCode::InvalidArgument,
          "need one plan, or one per player");
  for (const auto& plan : given) {
    require(plan.counts.size() == nn, ErrorCode::InvalidArgument,
            "plan must cover strata 0..n-1");
    for (int64_t c : plan.counts) {
      require(c >= 1, ErrorCode::InvalidArgument, "plan counts must be at least 1");
    }
  }
  if (given.size() == 1) {
    plans.assign(nn, given[0]);
  } else {
    plans = given;
  }
  return plans;
}

}  // namespace

ShapleyEstimate stratified_shapley(const Game& g, const PlanSource& source, uint64_t seed,
                                   const EstimatorOptions& opts) {
  const Game game = opts.cache ? with_utility_cache(g) : g;
  int32_t n = game.players();
  size_t nn = static_cast<size_t>(n);
  std::vector<AllocationPlan> plans = resolve_plans(n, source);

  std::vector<std::vector<double>> per_stratum(nn, std::vector<double>(nn, 0.0));
  std::vector<int64_t> task_evals(nn * nn, 0);

  parallel_for(nn * nn, opts.workers, [&](size_t task) {
    int32_t i = static_cast<int32_t>(task / nn);
    int32_t k = static_cast<int32_t>(task % nn);
    size_t ii = static_cast<size_t>(i), kk = static_cast<size_t>(k);
    int64_t m_k = plans[ii].counts[kk];

    // Player ids of everyone but i, in index order.
    std::vector<int32_t> others(nn - 1);
    for (int32_t t = 0; t < n - 1; ++t) {
      others[static_cast<size_t>(t)] = t < i ? t : t + 1;
    }

    KahanSum sum;
    uint64_t stratum_size = binomial_capped(n - 1, k, static_cast<uint64_t>(m_k) + 1);
    if (stratum_size <= static_cast<uint64_t>(m_k)) {
      // Small stratum: enumerate every coalition once.
      std::vector<int32_t> idx(kk);
      for (size_t t = 0; t < kk; ++t) idx[t] = static_cast<int32_t>(t);
      do {
        std::vector<int32_t> members(kk);
        for (size_t t = 0; t < kk; ++t) members[t] = others[static_cast<size_t>(idx[t])];
        Coalition s(std::move(members));
        sum.add(game.utility(s.with(i)) - game.utility(s));
      } while (next_combination(idx, n - 1));
      per_stratum[ii][kk] = sum.value() / static_cast<double>(stratum_size);
      task_evals[task] = 2 * static_cast<int64_t>(stratum_size);
      return;
    }

    // Sampled stratum: each draw seeds its own stream from (i, k, j), so the
    // result is independent of scheduling.
    std::vector<int32_t> scratch(nn - 1);
    for (int64_t j = 0; j < m_k; ++j) {
      Rng rng(derive_seed(seed, {stream::kStratumSample, static_cast<uint64_t>(i),
                                 static_cast<uint64_t>(k), static_cast<uint64_t>(j)}));
      std::copy(others.begin(), others.end(), scratch.begin());
      std::vector<int32_t> members(kk);
      for (size_t t = 0; t < kk; ++t) {
        size_t pick = t + static_cast<size_t>(rng.below(static_cast<uint64_t>(nn - 1 - t)));
        std::swap(scratch[t], scratch[pick]);
        members[t] = scratch[t];
      }
      Coalition s(std::move(members));
      sum.add(game.utility(s.with(i)) - game.utility(s));
    }
    per_stratum[ii][kk] = sum.value() / static_cast<double>(m_k);
    task_evals[task] = 2 * m_k;
  });

  ShapleyEstimate est;
  est.phi_hat.resize(nn);
  for (size_t i = 0; i < nn; ++i) {
    KahanSum s;
    for (size_t k = 0; k < nn; ++k) s.add(per_stratum[i][k]);
    est.phi_hat[i] = s.value() / static_cast<double>(n);
  }
  est.per_stratum = std::move(per_stratum);
  est.utility_evals = 0;
  for (int64_t e : task_evals) est.utility_evals += e;
  est.budget = plans[0].budget;
  est.plans = std::move(plans);
  est.seed = seed;
  est.method = "stratified";
  return est;
}

std::string MethodSpec::label() const {
  if (kind == Kind::Permutation) return "permutation";
  if (neyman_sigma) return "stratified-neyman";
  return "stratified-" + f.label();
}

MethodSpec MethodSpec::permutation(int64_t budget) {
  MethodSpec m;
  m.kind = Kind::Permutation;
  m.budget = budget;
  return m;
}

MethodSpec MethodSpec::stratified(FFamily f, int64_t budget) {
  MethodSpec m;
  m.kind = Kind::Stratified;
  m.f = f;
  m.budget = budget;
  return m;
}

MethodSpec MethodSpec::stratified_neyman(std::vector<std::vector<double>> sigma, int64_t budget) {
  MethodSpec m;
  m.kind = Kind::Stratified;
  m.budget = budget;
  m.neyman_sigma = std::move(sigma);
  return m;
}

ShapleyEstimate run_method(const MethodSpec& method, const Game& g, uint64_t seed,
                           const EstimatorOptions& opts) {
  if (method.kind == MethodSpec::Kind::Permutation) {
    return permutation_shapley(g, method.budget, seed, opts);
  }
  PlanSource source = method.neyman_sigma
                          ? PlanSource(NeymanSource{*method.neyman_sigma, method.budget})
                          : PlanSource(FSource{method.f, method.budget});
  ShapleyEstimate est = stratified_shapley(g, source, seed, opts);
  est.method = method.label();
  return est;
}

RepeatedRunSummary repeated_runs(const MethodSpec& method, const Game& g, int32_t runs,
                                 uint64_t master_seed, const EstimatorOptions& opts) {
  require(runs >= 1, ErrorCode::InvalidArgument, "need at least one run");
  size_t nn = static_cast<size_t>(g.players());
  RepeatedRunSummary summary;
  summary.runs = runs;
  summary.per_run.assign(static_cast<size_t>(runs), {});
  summary.evals_per_run.assign(static_cast<size_t>(runs), 0);

  // Parallelize across runs; each run then works sequentially.
  EstimatorOptions inner = opts;
  if (runs > 1) inner.workers = 1;
  parallel_for(static_cast<size_t>(runs), opts.workers, [&](size_t r) {
    uint64_t run_seed = derive_seed(master_seed, {stream::kRun, static_cast<uint64_t>(r)});
    ShapleyEstimate est = run_method(method, g, run_seed, inner);
    summary.per_run[r] = std::move(est.phi_hat);
    summary.evals_per_run[r] = est.utility_evals;
  });

  summary.mean_phi.resize(nn);
  summary.var_phi.resize(nn);
  std::vector<double> column(static_cast<size_t>(runs));
  for (size_t i = 0; i < nn; ++i) {
    for (size_t r = 0; r < static_cast<size_t>(runs); ++r) column[r] = summary.per_run[r][i];
    summary.mean_phi[i] = mean_of(column);
    summary.var_phi[i] = sample_variance(column);
  }
  return summary;
}

}  // namespace shapval
