#include "runner.hpp"

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "dataset.hpp"
#include "error.hpp"
#include "estimators.hpp"
#include "exact.hpp"
#include "experiments.hpp"
#include "learners.hpp"
#include "report.hpp"
#include "rng.hpp"

namespace shapval {

using nlohmann::json;

namespace {

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  return it->get<T>();
}

const json& need(const json& obj, const char* key, const char* what) {
  auto it = obj.find(key);
  require(it != obj.end(), ErrorCode::InvalidArgument, std::string("config needs ") + what);
  return *it;
}

FFamily parse_f(const json& f) {
  std::string kind = get_or<std::string>(f, "kind", "harmonic");
  if (kind == "constant") return FFamily::constant();
  if (kind == "harmonic") return FFamily::harmonic();
  if (kind == "power") return FFamily::power(get_or<double>(f, "a", -1.0));
  fail(ErrorCode::InvalidArgument, "unknown weighting family '" + kind + "'");
}

json echo_f(const FFamily& f) {
  json out;
  switch (f.kind) {
    case FFamily::Kind::Constant:
      out["kind"] = "constant";
      break;
    case FFamily::Kind::Harmonic:
      out["kind"] = "harmonic";
      break;
    case FFamily::Kind::Power:
      out["kind"] = "power";
      out["a"] = f.a;
      break;
  }
  return out;
}

struct MethodConfig {
  MethodSpec spec;
  json echo;
};

MethodConfig parse_method(const json& config) {
  int64_t budget = get_or<int64_t>(config, "budget", 100);
  json method_json = get_or<json>(config, "method", json::object());
  std::string kind = get_or<std::string>(method_json, "kind", "stratified");

  MethodConfig out;
  if (kind == "permutation") {
    out.spec = MethodSpec::permutation(budget);
  } else if (kind == "stratified") {
    FFamily f = parse_f(get_or<json>(method_json, "f", json::object()));
    out.spec = MethodSpec::stratified(f, budget);
  } else {
    fail(ErrorCode::InvalidArgument, "unknown method kind '" + kind + "'");
  }
  out.echo["kind"] = kind;
  if (kind == "stratified") out.echo["f"] = echo_f(out.spec.f);
  out.echo["label"] = out.spec.label();
  return out;
}

struct GameConfig {
  Game game;
  json echo;
};

GameConfig parse_game(const json& g) {
  std::string kind = need(g, "kind", "game.kind").get<std::string>();
  SyntheticGameSpec spec;
  json echo;
  echo["kind"] = kind;
  if (kind == "additive") {
    spec = SyntheticGameSpec::additive(need(g, "weights", "game.weights").get<std::vector<double>>());
    echo["weights"] = spec.weights;
  } else if (kind == "glove") {
    spec = SyntheticGameSpec::glove(get_or<int32_t>(g, "left", 1), get_or<int32_t>(g, "right", 2));
    echo["left"] = spec.left_gloves;
    echo["right"] = spec.right_gloves;
  } else if (kind == "weighted-voting") {
    spec = SyntheticGameSpec::weighted_voting(
        need(g, "weights", "game.weights").get<std::vector<double>>(),
        need(g, "quota", "game.quota").get<double>());
    echo["weights"] = spec.weights;
    echo["quota"] = spec.quota;
  } else if (kind == "symmetric-majority") {
    spec = SyntheticGameSpec::symmetric_majority(need(g, "players", "game.players").get<int32_t>());
    echo["players"] = spec.players;
  } else if (kind == "random-bounded") {
    spec = SyntheticGameSpec::random_bounded(
        need(g, "players", "game.players").get<int32_t>(), get_or<double>(g, "lo", 0.0),
        get_or<double>(g, "hi", 1.0), get_or<uint64_t>(g, "seed", 1));
    echo["players"] = spec.players;
    echo["lo"] = spec.lo;
    echo["hi"] = spec.hi;
    echo["seed"] = spec.seed;
  } else {
    fail(ErrorCode::InvalidArgument, "unknown game kind '" + kind + "'");
  }
  return {make_synthetic_game(spec), echo};
}

struct LearnerConfig {
  LearnerSpec spec;
  json echo;
};

LearnerConfig parse_learner(const json& l) {
  std::string kind = get_or<std::string>(l, "kind", "knn");
  LearnerConfig out;
  out.echo["kind"] = kind;
  if (kind == "knn") {
    out.spec = LearnerSpec::knn(get_or<int32_t>(l, "k", 5));
    out.echo["k"] = out.spec.k;
  } else if (kind == "naive-bayes") {
    out.spec = LearnerSpec::naive_bayes(get_or<double>(l, "var_smoothing", 1e-9));
    out.echo["var_smoothing"] = out.spec.var_smoothing;
  } else if (kind == "logreg") {
    out.spec = LearnerSpec::logreg(get_or<int32_t>(l, "iterations", 200),
                                   get_or<double>(l, "step", 0.1));
    out.echo["iterations"] = out.spec.iterations;
    out.echo["step"] = out.spec.step;
  } else {
    fail(ErrorCode::InvalidArgument, "unknown learner kind '" + kind + "'");
  }
  out.spec.validate();
  return out;
}

// Either a synthetic game, or a dataset plus learner turned into an accuracy
// game over training points.
struct Context {
  Game game;
  std::optional<TrainTestSplit> split;
  std::optional<LearnerSpec> learner;
  json echo;  // game, or dataset + split + learner
};

Context parse_context(const json& config, uint64_t master_seed) {
  bool has_game = config.contains("game") && !config["game"].is_null();
  bool has_dataset = config.contains("dataset") && !config["dataset"].is_null();
  require(has_game != has_dataset, ErrorCode::InvalidArgument,
          "config needs exactly one of game or dataset");

  if (has_game) {
    GameConfig g = parse_game(config["game"]);
    Context ctx{std::move(g.game), std::nullopt, std::nullopt, json::object()};
    ctx.echo["game"] = g.echo;
    return ctx;
  }

  const json& d = config["dataset"];
  std::string kind = need(d, "kind", "dataset.kind").get<std::string>();
  Dataset data;
  json dataset_echo;
  dataset_echo["kind"] = kind;
  if (kind == "blobs") {
    int32_t per_class = get_or<int32_t>(d, "per_class", 15);
    int32_t classes = get_or<int32_t>(d, "classes", 2);
    int32_t dims = get_or<int32_t>(d, "dims", 2);
    double separation = get_or<double>(d, "separation", 4.0);
    double noise = get_or<double>(d, "noise", 1.0);
    uint64_t seed = get_or<uint64_t>(d, "seed", master_seed);
    data = generate_blobs(per_class, classes, dims, separation, noise, seed);
    dataset_echo["per_class"] = per_class;
    dataset_echo["classes"] = classes;
    dataset_echo["dims"] = dims;
    dataset_echo["separation"] = separation;
    dataset_echo["noise"] = noise;
    dataset_echo["seed"] = seed;
  } else if (kind == "csv") {
    std::string path = need(d, "path", "dataset.path").get<std::string>();
    bool header = get_or<bool>(d, "header", true);
    ColumnRef label_column;
    const json& col = need(d, "label_column", "dataset.label_column");
    if (col.is_string()) {
      label_column = col.get<std::string>();
    } else {
      label_column = col.get<int32_t>();
    }
    data = load_csv(path, label_column, header).data;
    dataset_echo["path"] = path;
    dataset_echo["header"] = header;
    dataset_echo["label_column"] = col;
  } else {
    fail(ErrorCode::InvalidArgument, "unknown dataset kind '" + kind + "'");
  }

  json split_json = get_or<json>(config, "split", json::object());
  double train_fraction = get_or<double>(split_json, "train_fraction", 0.75);
  uint64_t split_seed = get_or<uint64_t>(split_json, "seed", master_seed);
  TrainTestSplit split = split_dataset(data, train_fraction, split_seed);

  LearnerConfig learner = parse_learner(get_or<json>(config, "learner", json::object()));

  Context ctx{accuracy_utility(split, learner.spec), std::move(split), learner.spec,
              json::object()};
  ctx.echo["dataset"] = dataset_echo;
  ctx.echo["split"] = {{"train_fraction", train_fraction}, {"seed", split_seed}};
  ctx.echo["learner"] = learner.echo;
  return ctx;
}

json axiom_check_json(const AxiomCheck& check) {
  return {{"pass", check.pass}, {"residual", check.residual}};
}

json summary_details(const RepeatedRunSummary& summary) {
  json out;
  out["per_run"] = summary.per_run;
  out["evals_per_run"] = summary.evals_per_run;
  return out;
}

double mean_evals(const RepeatedRunSummary& summary) {
  double total = 0.0;
  for (int64_t e : summary.evals_per_run) total += static_cast<double>(e);
  return total / static_cast<double>(summary.runs);
}

struct CommandOutput {
  json document;
  std::vector<ValuationReport> plot_reports;
  std::optional<PlotKind> default_plot_kind;
};

json base_document(const json& method_echo, const json& config_echo) {
  json doc;
  doc["schema_version"] = ValuationReport::kSchemaVersion;
  doc["method"] = method_echo;
  doc["config"] = config_echo;
  doc["details"] = json::object();
  return doc;
}

CommandOutput cmd_value(const json& config, json& echo, uint64_t seed, int32_t repeats,
                        int32_t cap, const EstimatorOptions& opts) {
  Context ctx = parse_context(config, seed);
  echo.update(ctx.echo);
  MethodConfig method = parse_method(config);
  method.echo["budget"] = method.spec.budget;
  echo["budget"] = method.spec.budget;
  echo["method"] = method.echo;

  RepeatedRunSummary summary = repeated_runs(method.spec, ctx.game, repeats, seed, opts);

  CommandOutput out;
  out.document = base_document(method.echo, echo);
  out.document["estimates"] = summary.mean_phi;
  out.document["variances"] = summary.var_phi;
  out.document["budgets"] = {{"requested", method.spec.budget},
                             {"runs", repeats},
                             {"mean_utility_evals", mean_evals(summary)}};
  out.document["seeds"] = {{"master", seed}};
  out.document["details"] = summary_details(summary);

  if (method.spec.kind == MethodSpec::Kind::Stratified) {
    AllocationPlan plan = integerize_allocation(
        allocate_f(ctx.game.players(), method.spec.budget, method.spec.f), method.spec.budget);
    out.document["details"]["allocation"] = {{"counts", plan.counts},
                                             {"actual_total", plan.actual_total},
                                             {"overrun", plan.overrun}};
  }

  bool want_plot = config.contains("emit_plot_data") && !config["emit_plot_data"].is_null();
  bool with_exact = get_or<bool>(config, "with_exact", want_plot);
  echo["with_exact"] = with_exact;
  if (with_exact) {
    ExactShapleyResult exact = exact_shapley(ctx.game, ExactOptions{cap, opts.workers});
    out.document["details"]["exact"] = exact.phi;
  }
  out.default_plot_kind = PlotKind::ExactVsEstimate;
  ValuationReport report;
  report.body = out.document;
  out.plot_reports.push_back(std::move(report));
  return out;
}

CommandOutput cmd_exact(const json& config, json& echo, uint64_t seed, int32_t cap,
                        const EstimatorOptions& opts) {
  Context ctx = parse_context(config, seed);
  echo.update(ctx.echo);
  json method_echo = {{"kind", "exact"}, {"label", "exact"}};
  echo["method"] = method_echo;

  ExactShapleyResult exact = exact_shapley(ctx.game, ExactOptions{cap, opts.workers});
  AxiomOptions axiom_opts;
  axiom_opts.cap = cap;
  axiom_opts.workers = opts.workers;
  AxiomReport axioms = check_axioms(ctx.game, exact.phi, axiom_opts);

  CommandOutput out;
  out.document = base_document(method_echo, echo);
  out.document["estimates"] = exact.phi;
  out.document["variances"] = std::vector<double>(exact.phi.size(), 0.0);
  out.document["budgets"] = {{"utility_evals", int64_t{1} << ctx.game.players()}};
  out.document["seeds"] = {{"master", seed}};
  out.document["details"]["stratum_means"] = exact.stratum_means;
  out.document["details"]["stratum_variances"] = exact.stratum_variances;
  out.document["details"]["stratum_ranges"] = exact.stratum_ranges;
  out.document["details"]["axioms"] = {{"efficiency", axiom_check_json(axioms.efficiency)},
                                       {"symmetry", axiom_check_json(axioms.symmetry)},
                                       {"dummy", axiom_check_json(axioms.dummy)},
                                       {"symmetric_pairs", axioms.symmetric_pairs},
                                       {"dummy_players", axioms.dummy_players},
                                       {"all_pass", axioms.all_pass()}};
  out.document["details"]["exact"] = exact.phi;
  out.default_plot_kind = PlotKind::ExactVsEstimate;
  ValuationReport report;
  report.body = out.document;
  out.plot_reports.push_back(std::move(report));
  return out;
}

CommandOutput cmd_sweep(const json& config, json& echo, uint64_t seed, int32_t repeats,
                        const EstimatorOptions& opts) {
  Context ctx = parse_context(config, seed);
  echo.update(ctx.echo);

  json sweep_json = get_or<json>(config, "sweep", json::object());
  SweepGrid grid;
  grid.a_values = get_or<std::vector<double>>(sweep_json, "a_values", {-2.0, -1.0, -0.5, 0.0});
  grid.m_values = get_or<std::vector<int64_t>>(sweep_json, "m_values", {100, 500, 1000});
  grid.include_permutation = get_or<bool>(sweep_json, "include_permutation", true);
  grid.repeats = repeats;
  grid.seed = seed;
  echo["sweep"] = {{"a_values", grid.a_values},
                   {"m_values", grid.m_values},
                   {"include_permutation", grid.include_permutation}};
  json method_echo = {{"kind", "sweep"}, {"label", "sweep"}};
  echo["method"] = method_echo;

  std::vector<SweepCell> cells = variance_study(ctx.game, grid, opts);

  json cell_list = json::array();
  for (const SweepCell& cell : cells) {
    json c;
    c["method"] = cell.method;
    c["a"] = cell.a ? json(*cell.a) : json(nullptr);
    c["m"] = cell.m;
    c["mean_variance"] = cell.mean_variance;
    c["mean_utility_evals"] = cell.mean_evals;
    c["mean_phi"] = cell.mean_phi;
    c["var_phi"] = cell.var_phi;
    cell_list.push_back(std::move(c));
  }

  const SweepCell& last = cells.back();
  CommandOutput out;
  out.document = base_document(method_echo, echo);
  out.document["estimates"] = last.mean_phi;
  out.document["variances"] = last.var_phi;
  out.document["budgets"] = {{"requested", last.m}, {"runs", repeats}};
  out.document["seeds"] = {{"master", seed}};
  out.document["details"]["cells"] = cell_list;
  out.default_plot_kind = PlotKind::SweepGrid;
  ValuationReport report;
  report.body = out.document;
  out.plot_reports.push_back(std::move(report));
  return out;
}

CommandOutput cmd_removal(const json& config, json& echo, uint64_t seed, int32_t repeats,
                          const EstimatorOptions& opts) {
  Context ctx = parse_context(config, seed);
  require(ctx.split.has_value(), ErrorCode::InvalidArgument,
          "removal needs a dataset and learner");
  echo.update(ctx.echo);
  MethodConfig method = parse_method(config);
  method.echo["budget"] = method.spec.budget;
  echo["budget"] = method.spec.budget;
  echo["method"] = method.echo;

  json removal_json = get_or<json>(config, "removal", json::object());
  int32_t group_count = get_or<int32_t>(removal_json, "groups", 10);
  int32_t junk_group = get_or<int32_t>(removal_json, "junk_group", -1);
  double c = get_or<double>(removal_json, "c", 100.0);
  int32_t random_orders = get_or<int32_t>(removal_json, "random_orders", 10);
  std::vector<std::string> rankings = get_or<std::vector<std::string>>(
      removal_json, "rankings", {"value-desc", "random"});
  require(!rankings.empty(), ErrorCode::InvalidArgument, "removal needs at least one ranking");
  require(random_orders >= 1, ErrorCode::InvalidArgument, "need at least one random order");
  echo["removal"] = {{"groups", group_count},
                     {"junk_group", junk_group},
                     {"c", c},
                     {"random_orders", random_orders},
                     {"rankings", rankings}};

  TrainTestSplit split = *ctx.split;
  GroupAssignment assignment = round_robin_groups(split.train.rows, group_count);
  if (junk_group >= 0) {
    require(junk_group < group_count, ErrorCode::InvalidArgument,
            "junk group index outside the group count");
    auto members = assignment.members()[static_cast<size_t>(junk_group)];
    std::vector<int32_t> labels;
    for (int32_t r : members) labels.push_back(split.train.y[static_cast<size_t>(r)]);
    Rng rng(derive_seed(seed, {stream::kGroupShuffle}));
    rng.shuffle(labels);
    for (size_t j = 0; j < members.size(); ++j) {
      split.train.y[static_cast<size_t>(members[j])] = labels[j];
    }
  }

  Game game = accuracy_utility(split, *ctx.learner);
  RepeatedRunSummary values = group_shapley(game, assignment, method.spec, repeats, seed, opts);

  json curve_list = json::array();
  for (const std::string& name : rankings) {
    RankingRule rule = ranking_rule_from_string(name);
    RemovalCurve curve;
    if (rule == RankingRule::Random) {
      // Mean accuracy curve over several random orders.
      std::vector<double> mean_acc;
      for (int32_t oi = 0; oi < random_orders; ++oi) {
        RemovalCurve one = group_removal(
            game, assignment, rule, c, values,
            derive_seed(seed, {stream::kRemovalOrder, static_cast<uint64_t>(oi)}));
        if (mean_acc.empty()) {
          mean_acc = one.accuracies;
          curve = one;
        } else {
          for (size_t i = 0; i < mean_acc.size(); ++i) mean_acc[i] += one.accuracies[i];
        }
      }
      for (double& a : mean_acc) a /= static_cast<double>(random_orders);
      curve.accuracies = mean_acc;
      curve.order.clear();
    } else {
      curve = group_removal(game, assignment, rule, c, values, seed);
    }
    json cj;
    cj["ranking"] = curve.ranking;
    cj["order"] = curve.order;
    cj["accuracies"] = curve.accuracies;
    cj["auc"] = curve_auc(curve);
    curve_list.push_back(std::move(cj));
  }

  CommandOutput out;
  out.document = base_document(method.echo, echo);
  out.document["estimates"] = values.mean_phi;
  out.document["variances"] = values.var_phi;
  out.document["budgets"] = {{"requested", method.spec.budget},
                             {"runs", repeats},
                             {"mean_utility_evals", mean_evals(values)}};
  out.document["seeds"] = {{"master", seed}};
  out.document["details"]["curves"] = curve_list;
  out.document["details"]["groups"] = group_count;
  out.document["details"]["junk_group"] = junk_group;
  out.default_plot_kind = PlotKind::RemovalCurve;
  ValuationReport report;
  report.body = out.document;
  out.plot_reports.push_back(std::move(report));
  return out;
}

CommandOutput cmd_bound(const json& config, json& echo) {
  ApproximationSpec spec;
  spec.epsilon = get_or<double>(config, "epsilon", 0.1);
  spec.delta = get_or<double>(config, "delta", 0.05);
  spec.range = get_or<double>(config, "range", 1.0);
  spec.players = get_or<int32_t>(config, "players", 0);
  FFamily f = parse_f(get_or<json>(config, "f", json::object()));
  echo["epsilon"] = spec.epsilon;
  echo["delta"] = spec.delta;
  echo["range"] = spec.range;
  if (spec.players > 0) echo["players"] = spec.players;
  echo["f"] = echo_f(f);

  json bounds;
  bounds["permutation"] = permutation_sample_bound(spec);
  if (spec.players > 0) {
    bounds["stratified"] = stratified_sample_bound(spec, f);
    if (f.kind == FFamily::Kind::Harmonic) {
      bounds["stratified_harmonic"] = stratified_sample_bound_harmonic(spec);
    }
  }

  CommandOutput out;
  out.document["schema_version"] = ValuationReport::kSchemaVersion;
  out.document["config"] = echo;
  out.document["bounds"] = bounds;
  return out;
}

CommandOutput cmd_check(const json& config, json& echo, uint64_t seed, int32_t cap,
                        const EstimatorOptions& opts) {
  Context ctx = parse_context(config, seed);
  echo.update(ctx.echo);
  MethodConfig method = parse_method(config);
  echo["method"] = method.echo;

  ApproximationSpec spec;
  spec.epsilon = get_or<double>(config, "epsilon", 0.1);
  spec.delta = get_or<double>(config, "delta", 0.05);
  spec.range = get_or<double>(config, "range", ctx.game.range().width());
  spec.players = ctx.game.players();
  int32_t trials = get_or<int32_t>(config, "trials", 500);
  echo["epsilon"] = spec.epsilon;
  echo["delta"] = spec.delta;
  echo["range"] = spec.range;
  echo["trials"] = trials;

  ExactShapleyResult exact = exact_shapley(ctx.game, ExactOptions{cap, opts.workers});
  EmpiricalCheckResult result =
      empirical_epsilon_delta_check(method.spec, ctx.game, exact.phi, spec, trials, seed, opts);

  // Allow sampling noise on top of delta before calling the check failed.
  double threshold =
      spec.delta + 2.0 * std::sqrt(spec.delta * (1.0 - spec.delta) / static_cast<double>(trials));
  bool pass = true;
  for (double e : result.exceedance) pass = pass && e <= threshold;

  CommandOutput out;
  out.document = base_document(method.echo, echo);
  out.document["estimates"] = exact.phi;
  out.document["variances"] = std::vector<double>(exact.phi.size(), 0.0);
  out.document["budgets"] = {{"requested", result.budget}, {"trials", trials}};
  out.document["seeds"] = {{"master", seed}};
  out.document["details"]["exceedance"] = result.exceedance;
  out.document["details"]["threshold"] = threshold;
  out.document["details"]["pass"] = pass;
  out.document["details"]["exact"] = exact.phi;
  return out;
}

json run_command_inner(const json& config, bool write_files, bool allow_verify) {
  auto started = std::chrono::steady_clock::now();

  std::string command = need(config, "command", "a command").get<std::string>();
  uint64_t seed = get_or<uint64_t>(config, "seed", 1);
  int32_t repeats = get_or<int32_t>(config, "repeats", 10);
  int32_t cap = get_or<int32_t>(config, "cap", 20);
  int workers = get_or<int>(config, "workers", 1);
  require(workers >= 1, ErrorCode::InvalidArgument, "workers must be at least 1");
  EstimatorOptions opts;
  opts.workers = workers;
  opts.cache = get_or<bool>(config, "cache", false);

  // Echo of the resolved config; workers is execution detail and stays out.
  json echo;
  echo["command"] = command;
  echo["seed"] = seed;
  echo["cap"] = cap;
  echo["cache"] = opts.cache;
  echo["verify"] = get_or<bool>(config, "verify", false);
  if (command == "value" || command == "sweep" || command == "removal") {
    echo["repeats"] = repeats;
  }
  for (const char* key : {"out", "emit_plot_data", "plot_kind"}) {
    if (config.contains(key) && !config[key].is_null()) echo[key] = config[key];
  }

  CommandOutput out;
  if (command == "value") {
    out = cmd_value(config, echo, seed, repeats, cap, opts);
  } else if (command == "exact") {
    out = cmd_exact(config, echo, seed, cap, opts);
  } else if (command == "sweep") {
    out = cmd_sweep(config, echo, seed, repeats, opts);
  } else if (command == "removal") {
    out = cmd_removal(config, echo, seed, repeats, opts);
  } else if (command == "bound") {
    out = cmd_bound(config, echo);
  } else if (command == "check") {
    out = cmd_check(config, echo, seed, cap, opts);
  } else {
    fail(ErrorCode::InvalidArgument, "unknown command '" + command + "'");
  }
  out.document["config"] = echo;

  if (get_or<bool>(config, "verify", false) && allow_verify) {
    json again = run_command_inner(out.document["config"], false, false);
    json a = out.document;
    a.erase("timing");
    json b = again;
    b.erase("timing");
    require(a == b, ErrorCode::Internal, "verification re-run diverged from the first run");
    out.document["details"]["verified"] = true;
  }

  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  out.document["timing"] = {{"seconds", seconds}, {"workers", workers}};

  if (write_files) {
    std::string out_path = get_or<std::string>(config, "out", "");
    if (!out_path.empty()) {
      if (out.document.contains("estimates")) {
        ValuationReport report;
        report.body = out.document;
        save_report(report, out_path);
      } else {
        write_text_atomic(out_path, out.document.dump(2) + "\n");
      }
    }
    std::string plot_path = get_or<std::string>(config, "emit_plot_data", "");
    if (!plot_path.empty()) {
      require(!out.plot_reports.empty(), ErrorCode::InvalidArgument,
              "command '" + command + "' has no plot data");
      std::string kind_name = get_or<std::string>(config, "plot_kind", "");
      PlotKind kind = kind_name.empty() ? *out.default_plot_kind
                                        : plot_kind_from_string(kind_name);
      // Plot reports carry the document before timing was attached; refresh.
      out.plot_reports.back().body = out.document;
      emit_plot_data(out.plot_reports, kind, plot_path);
    }
  }
  return out.document;
}

}  // namespace

json run_command(const json& config, bool write_files) {
  require(config.is_object(), ErrorCode::InvalidArgument, "config must be a JSON object");
  try {
    return run_command_inner(config, write_files, true);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("config error: ") + e.what());
  }
}

Game game_from_json(const json& spec) {
  require(spec.is_object(), ErrorCode::InvalidArgument, "game spec must be a JSON object");
  try {
    return parse_game(spec).game;
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("game spec error: ") + e.what());
  }
}

}  // namespace shapval
