#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"
#include "rng.hpp"
#include "stats.hpp"

namespace shapval {

ExactVsEstimateResult exact_vs_estimate(const Game& g, std::span<const MethodSpec> methods,
                                        int32_t repeats, uint64_t seed, int32_t cap,
                                        const EstimatorOptions& opts) {
  require(!methods.empty(), ErrorCode::InvalidArgument, "no methods to compare");
  require(repeats >= 2, ErrorCode::InvalidArgument,
          "need at least two repeats for across-run variance");
  ExactVsEstimateResult result;
  result.exact = exact_shapley(g, ExactOptions{cap, opts.workers}).phi;
  for (size_t mi = 0; mi < methods.size(); ++mi) {
    uint64_t method_seed = derive_seed(seed, {stream::kMethod, static_cast<uint64_t>(mi)});
    result.entries.push_back(
        {methods[mi], repeated_runs(methods[mi], g, repeats, method_seed, opts)});
  }
  return result;
}

void SweepGrid::validate() const {
  require(!m_values.empty(), ErrorCode::InvalidArgument, "sweep needs budgets");
  for (int64_t m : m_values) {
    require(m >= 1, ErrorCode::InvalidArgument, "sweep budgets must be at least 1");
  }
  require(include_permutation || !a_values.empty(), ErrorCode::InvalidArgument,
          "sweep needs at least one method");
  require(repeats >= 2, ErrorCode::InvalidArgument,
          "need at least two repeats for across-run variance");
}

std::vector<SweepCell> variance_study(const Game& g, const SweepGrid& grid,
                                      const EstimatorOptions& opts) {
  grid.validate();
  struct CellSpec {
    MethodSpec method;
    std::optional<double> a;
  };
  std::vector<CellSpec> cell_specs;
  if (grid.include_permutation) {
    cell_specs.push_back({MethodSpec::permutation(0), std::nullopt});
  }
  for (double a : grid.a_values) {
    cell_specs.push_back({MethodSpec::stratified(FFamily::power(a), 0), a});
  }

  std::vector<SweepCell> cells;
  size_t cell_index = 0;
  for (const CellSpec& spec : cell_specs) {
    for (int64_t m : grid.m_values) {
      MethodSpec method = spec.method;
      method.budget = m;
      uint64_t cell_seed =
          derive_seed(grid.seed, {stream::kSweepCell, static_cast<uint64_t>(cell_index)});
      RepeatedRunSummary summary = repeated_runs(method, g, grid.repeats, cell_seed, opts);

      SweepCell cell;
      cell.method = method.label();
      cell.a = spec.a;
      cell.m = m;
      cell.mean_phi = summary.mean_phi;
      cell.var_phi = summary.var_phi;
      cell.mean_variance = mean_of(summary.var_phi);
      KahanSum evals;
      for (int64_t e : summary.evals_per_run) evals.add(static_cast<double>(e));
      cell.mean_evals = evals.value() / static_cast<double>(summary.runs);
      cells.push_back(std::move(cell));
      ++cell_index;
    }
  }
  return cells;
}

Game group_game(const Game& base, const GroupAssignment& assignment) {
  assignment.validate(base.players());
  auto members = assignment.members();
  return Game(
      assignment.groups, base.range(),
      [base, members](const Coalition& groups) {
        std::vector<int32_t> rows;
        for (int32_t g : groups.members()) {
          const auto& m = members[static_cast<size_t>(g)];
          rows.insert(rows.end(), m.begin(), m.end());
        }
        return base.utility(Coalition(std::move(rows)));
      },
      "grouped(G=" + std::to_string(assignment.groups) + ") " + base.label());
}

RepeatedRunSummary group_shapley(const Game& base, const GroupAssignment& assignment,
                                 const MethodSpec& method, int32_t repeats, uint64_t seed,
                                 const EstimatorOptions& opts) {
  return repeated_runs(method, group_game(base, assignment), repeats, seed, opts);
}

RankingRule ranking_rule_from_string(const std::string& name) {
  if (name == "value-desc") return RankingRule::ValueDesc;
  if (name == "value-minus-c-variance-desc") return RankingRule::ValueMinusCVarianceDesc;
  if (name == "random") return RankingRule::Random;
  fail(ErrorCode::InvalidArgument, "unknown ranking rule '" + name + "'");
}

std::string ranking_rule_label(RankingRule rule) {
  switch (rule) {
    case RankingRule::ValueDesc:
      return "value-desc";
    case RankingRule::ValueMinusCVarianceDesc:
      return "value-minus-c-variance-desc";
    case RankingRule::Random:
      return "random";
  }
  return "unknown";
}

RemovalCurve group_removal(const Game& base, const GroupAssignment& assignment,
                           RankingRule rule, double c, const RepeatedRunSummary& values,
                           uint64_t seed) {
  assignment.validate(base.players());
  size_t groups = static_cast<size_t>(assignment.groups);

  std::vector<int32_t> order(groups);
  std::iota(order.begin(), order.end(), 0);
  if (rule == RankingRule::Random) {
    Rng rng(derive_seed(seed, {stream::kRemovalOrder}));
    rng.shuffle(order);
  } else {
    require(values.mean_phi.size() == groups, ErrorCode::InvalidArgument,
            "group values do not match the group count");
    std::vector<double> score(groups);
    for (size_t g = 0; g < groups; ++g) {
      score[g] = values.mean_phi[g];
      if (rule == RankingRule::ValueMinusCVarianceDesc) {
        require(values.var_phi.size() == groups, ErrorCode::InvalidArgument,
                "group variances do not match the group count");
        score[g] -= c * values.var_phi[g];
      }
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](int32_t x, int32_t y) { return score[static_cast<size_t>(x)] >
                                                        score[static_cast<size_t>(y)]; });
  }

  auto members = assignment.members();
  std::vector<bool> removed(groups, false);
  RemovalCurve curve;
  curve.ranking = ranking_rule_label(rule);
  curve.order = order;
  curve.accuracies.reserve(groups + 1);
  for (size_t step = 0; step <= groups; ++step) {
    if (step > 0) removed[static_cast<size_t>(order[step - 1])] = true;
    std::vector<int32_t> rows;
    for (size_t g = 0; g < groups; ++g) {
      if (!removed[g]) rows.insert(rows.end(), members[g].begin(), members[g].end());
    }
    curve.accuracies.push_back(base.utility(Coalition(std::move(rows))));
  }
  return curve;
}

double curve_auc(const RemovalCurve& curve) {
  require(curve.accuracies.size() >= 2, ErrorCode::InvalidArgument, "curve too short");
  KahanSum area;
  for (size_t i = 0; i + 1 < curve.accuracies.size(); ++i) {
    area.add(0.5 * (curve.accuracies[i] + curve.accuracies[i + 1]));
  }
  return area.value();
}

JunkFixture blobs_with_junk(const JunkFixtureSpec& spec, uint64_t seed) {
  require(spec.groups >= 1 && spec.per_group >= 1, ErrorCode::InvalidArgument,
          "fixture needs positive group sizes");
  int64_t train_rows = static_cast<int64_t>(spec.groups) * spec.per_group;
  require(train_rows % 2 == 0, ErrorCode::InvalidArgument,
          "fixture needs an even training size for two balanced classes");
  require(spec.test_per_class >= 1, ErrorCode::InvalidArgument, "fixture needs test rows");

  JunkFixture fixture;
  fixture.split.train =
      generate_blobs(static_cast<int32_t>(train_rows / 2), 2, spec.dims, spec.separation,
                     spec.noise, derive_seed(seed, {1}));
  fixture.split.test = generate_blobs(spec.test_per_class, 2, spec.dims, spec.separation,
                                      spec.noise, derive_seed(seed, {2}));
  fixture.groups = round_robin_groups(train_rows, spec.groups);
  fixture.junk_group = spec.junk_group;

  if (spec.junk_group >= 0) {
    require(spec.junk_group < spec.groups, ErrorCode::InvalidArgument,
            "junk group index outside the group count");
    auto members = fixture.groups.members()[static_cast<size_t>(spec.junk_group)];
    std::vector<int32_t> labels;
    labels.reserve(members.size());
    for (int32_t r : members) labels.push_back(fixture.split.train.y[static_cast<size_t>(r)]);
    Rng rng(derive_seed(seed, {stream::kGroupShuffle}));
    rng.shuffle(labels);
    for (size_t j = 0; j < members.size(); ++j) {
      fixture.split.train.y[static_cast<size_t>(members[j])] = labels[j];
    }
  }
  return fixture;
}

}  // namespace shapval
