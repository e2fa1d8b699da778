// Command-line front end; all computation goes through the shared C API.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "shapval/shapval.h"

namespace {

using nlohmann::json;

struct CommonFlags {
  // game
  std::string game_kind;
  std::vector<double> weights;
  int32_t left = 1, right = 2;
  double quota = 0.0;
  int32_t players = 0;
  double lo = 0.0, hi = 1.0;
  uint64_t game_seed = 1;
  // dataset
  std::string dataset_kind;
  std::string csv_path;
  std::string label_column = "label";
  bool no_header = false;
  int32_t per_class = 15, classes = 2, dims = 2;
  double separation = 4.0, noise = 1.0;
  uint64_t data_seed = 1;
  double train_fraction = 0.75;
  uint64_t split_seed = 1;
  // learner
  std::string learner_kind = "knn";
  int32_t knn_k = 5;
  double var_smoothing = 1e-9;
  int32_t iterations = 200;
  double step = 0.1;
  // method
  std::string method_kind = "stratified";
  std::string family = "harmonic";
  double exponent = -1.0;
  // run
  int64_t budget = 100;
  int32_t repeats = 10;
  uint64_t seed = 1;
  int workers = 1;
  int32_t cap = 20;
  bool cache = false;
  bool verify = false;
  std::string out_path;
  std::string plot_path;
  std::string plot_kind;
};

void add_context_flags(CLI::App* cmd, CommonFlags& f, bool dataset_only) {
  if (!dataset_only) {
    cmd->add_option("--game", f.game_kind,
                    "synthetic game: additive, glove, weighted-voting, symmetric-majority, "
                    "random-bounded");
    cmd->add_option("--weights", f.weights, "player weights (additive, weighted-voting)");
    cmd->add_option("--left", f.left, "left gloves");
    cmd->add_option("--right", f.right, "right gloves");
    cmd->add_option("--quota", f.quota, "voting quota");
    cmd->add_option("--players", f.players, "player count");
    cmd->add_option("--lo", f.lo, "random-bounded lower bound");
    cmd->add_option("--hi", f.hi, "random-bounded upper bound");
    cmd->add_option("--game-seed", f.game_seed, "random-bounded utility seed");
  }
  cmd->add_option("--dataset", f.dataset_kind, "dataset: blobs or csv");
  cmd->add_option("--csv-path", f.csv_path, "csv file path");
  cmd->add_option("--label-column", f.label_column, "label column name or index");
  cmd->add_flag("--no-header", f.no_header, "csv has no header line");
  cmd->add_option("--per-class", f.per_class, "blob points per class");
  cmd->add_option("--classes", f.classes, "blob class count");
  cmd->add_option("--dims", f.dims, "blob dimensions");
  cmd->add_option("--separation", f.separation, "blob center separation");
  cmd->add_option("--noise", f.noise, "blob noise level");
  cmd->add_option("--data-seed", f.data_seed, "dataset seed");
  cmd->add_option("--train-fraction", f.train_fraction, "train split fraction");
  cmd->add_option("--split-seed", f.split_seed, "train split seed");
  cmd->add_option("--learner", f.learner_kind, "learner: knn, naive-bayes, logreg");
  cmd->add_option("--k", f.knn_k, "knn neighbours");
  cmd->add_option("--var-smoothing", f.var_smoothing, "naive-bayes variance floor factor");
  cmd->add_option("--iterations", f.iterations, "logreg iterations");
  cmd->add_option("--step", f.step, "logreg learning rate");
}

void add_run_flags(CLI::App* cmd, CommonFlags& f, bool with_method) {
  if (with_method) {
    cmd->add_option("--method", f.method_kind, "estimator: permutation or stratified");
    cmd->add_option("--f", f.family, "stratum weighting: constant, harmonic, power");
    cmd->add_option("--a", f.exponent, "power-family exponent");
    cmd->add_option("--budget", f.budget, "per-run sample budget");
    cmd->add_option("--repeats", f.repeats, "independent runs");
  }
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--workers", f.workers, "worker threads")->envname("SHAPVAL_WORKERS");
  cmd->add_option("--cap", f.cap, "exact-solver player cap");
  cmd->add_flag("--cache", f.cache, "memoize utilities within a run");
  cmd->add_flag("--verify", f.verify, "re-run and require identical output");
  cmd->add_option("--out", f.out_path, "write the report here");
  cmd->add_option("--emit-plot-data", f.plot_path, "write plot csv here");
  cmd->add_option("--plot-kind", f.plot_kind,
                  "variance-vs-m, sweep-grid, removal-curve, exact-vs-estimate");
}

json build_context(const CLI::App* cmd, const CommonFlags& f, bool dataset_only) {
  json config;
  if (!dataset_only && cmd->count("--game") > 0) {
    json game;
    game["kind"] = f.game_kind;
    if (cmd->count("--weights") > 0) game["weights"] = f.weights;
    if (cmd->count("--left") > 0) game["left"] = f.left;
    if (cmd->count("--right") > 0) game["right"] = f.right;
    if (cmd->count("--quota") > 0) game["quota"] = f.quota;
    if (cmd->count("--players") > 0) game["players"] = f.players;
    if (cmd->count("--lo") > 0) game["lo"] = f.lo;
    if (cmd->count("--hi") > 0) game["hi"] = f.hi;
    if (cmd->count("--game-seed") > 0) game["seed"] = f.game_seed;
    config["game"] = game;
  }
  if (cmd->count("--dataset") > 0) {
    json dataset;
    dataset["kind"] = f.dataset_kind;
    if (f.dataset_kind == "csv") {
      dataset["path"] = f.csv_path;
      dataset["header"] = !f.no_header;
      // Numeric strings select by position.
      try {
        size_t used = 0;
        int32_t idx = std::stoi(f.label_column, &used);
        if (used == f.label_column.size()) {
          dataset["label_column"] = idx;
        } else {
          dataset["label_column"] = f.label_column;
        }
      } catch (...) {
        dataset["label_column"] = f.label_column;
      }
    } else {
      if (cmd->count("--per-class") > 0) dataset["per_class"] = f.per_class;
      if (cmd->count("--classes") > 0) dataset["classes"] = f.classes;
      if (cmd->count("--dims") > 0) dataset["dims"] = f.dims;
      if (cmd->count("--separation") > 0) dataset["separation"] = f.separation;
      if (cmd->count("--noise") > 0) dataset["noise"] = f.noise;
      if (cmd->count("--data-seed") > 0) dataset["seed"] = f.data_seed;
    }
    config["dataset"] = dataset;

    json split;
    if (cmd->count("--train-fraction") > 0) split["train_fraction"] = f.train_fraction;
    if (cmd->count("--split-seed") > 0) split["seed"] = f.split_seed;
    if (!split.empty()) config["split"] = split;

    json learner;
    learner["kind"] = f.learner_kind;
    if (cmd->count("--k") > 0) learner["k"] = f.knn_k;
    if (cmd->count("--var-smoothing") > 0) learner["var_smoothing"] = f.var_smoothing;
    if (cmd->count("--iterations") > 0) learner["iterations"] = f.iterations;
    if (cmd->count("--step") > 0) learner["step"] = f.step;
    config["learner"] = learner;
  }
  return config;
}

void apply_run_flags(json& config, const CLI::App* cmd, const CommonFlags& f,
                     bool with_method) {
  if (with_method) {
    if (cmd->count("--method") > 0 || cmd->count("--f") > 0 || cmd->count("--a") > 0) {
      json method;
      method["kind"] = f.method_kind;
      if (f.method_kind == "stratified") {
        json family;
        family["kind"] = f.family;
        if (f.family == "power") family["a"] = f.exponent;
        method["f"] = family;
      }
      config["method"] = method;
    }
    if (cmd->count("--budget") > 0) config["budget"] = f.budget;
    if (cmd->count("--repeats") > 0) config["repeats"] = f.repeats;
  }
  if (cmd->count("--seed") > 0) config["seed"] = f.seed;
  if (cmd->count("--workers") > 0 || f.workers != 1) config["workers"] = f.workers;
  if (cmd->count("--cap") > 0) config["cap"] = f.cap;
  if (f.cache) config["cache"] = true;
  if (f.verify) config["verify"] = true;
  if (!f.out_path.empty()) config["out"] = f.out_path;
  if (!f.plot_path.empty()) config["emit_plot_data"] = f.plot_path;
  if (!f.plot_kind.empty()) config["plot_kind"] = f.plot_kind;
}

void print_values(const json& report, const char* estimates_name) {
  const json& estimates = report["estimates"];
  const json& variances = report["variances"];
  size_t n = estimates.size();
  size_t show = n < 12 ? n : 12;
  std::printf("%s (%zu entries%s):\n", estimates_name, n, n > show ? ", first 12" : "");
  for (size_t i = 0; i < show; ++i) {
    std::printf("  [%2zu]  %+.6f  (var %.3e)\n", i, estimates[i].get<double>(),
                variances[i].get<double>());
  }
}

void print_report(const std::string& command, const json& report) {
  if (command == "bound") {
    const json& bounds = report["bounds"];
    std::printf("permutation bound: %lld\n",
                static_cast<long long>(bounds["permutation"].get<int64_t>()));
    if (bounds.contains("stratified")) {
      std::printf("stratified bound:  %lld\n",
                  static_cast<long long>(bounds["stratified"].get<int64_t>()));
    }
    if (bounds.contains("stratified_harmonic")) {
      std::printf("harmonic closed form: %lld\n",
                  static_cast<long long>(bounds["stratified_harmonic"].get<int64_t>()));
    }
    return;
  }
  if (command == "check") {
    const json& details = report["details"];
    double worst = 0.0;
    for (const json& e : details["exceedance"]) worst = std::max(worst, e.get<double>());
    std::printf("budget %lld, trials %d\n",
                static_cast<long long>(report["budgets"]["requested"].get<int64_t>()),
                report["config"]["trials"].get<int32_t>());
    std::printf("worst exceedance %.4f vs threshold %.4f -> %s\n", worst,
                details["threshold"].get<double>(),
                details["pass"].get<bool>() ? "pass" : "FAIL");
    return;
  }
  if (command == "sweep") {
    const json& cells = report["details"]["cells"];
    std::printf("%zu sweep cells (method, a, m, mean variance):\n", cells.size());
    for (const json& cell : cells) {
      std::string a = cell["a"].is_null() ? "-" : std::to_string(cell["a"].get<double>());
      std::printf("  %-24s %8s %8lld  %.6e\n", cell["method"].get<std::string>().c_str(),
                  a.c_str(), static_cast<long long>(cell["m"].get<int64_t>()),
                  cell["mean_variance"].get<double>());
    }
    return;
  }
  if (command == "removal") {
    print_values(report, "group values");
    for (const json& curve : report["details"]["curves"]) {
      std::printf("auc[%s] = %.4f\n", curve["ranking"].get<std::string>().c_str(),
                  curve["auc"].get<double>());
    }
    return;
  }
  print_values(report, command == "exact" ? "exact values" : "estimates");
  if (report["details"].contains("verified")) std::printf("verification: ok\n");
}

int run_config(const std::string& command, const json& config) {
  std::string text = config.dump();
  char* out = nullptr;
  shapval_status status = shapval_run(text.c_str(), &out);
  if (status != SHAPVAL_OK) {
    std::fprintf(stderr, "error (%s): %s\n", shapval_status_name(status),
                 shapval_last_error());
    // Usage, data and size-cap failures keep distinct exit codes.
    if (status == SHAPVAL_ERROR_DATA) return 2;
    if (status == SHAPVAL_ERROR_SIZE_CAP) return 3;
    return 1;
  }
  json report = json::parse(out);
  shapval_free(out);
  print_report(command, report);
  if (config.contains("out")) {
    std::printf("report written to %s\n", config["out"].get<std::string>().c_str());
  }
  if (config.contains("emit_plot_data")) {
    std::printf("plot data written to %s\n",
                config["emit_plot_data"].get<std::string>().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"data valuation with exact and sampled Shapley values"};
  app.require_subcommand(1);
  app.set_version_flag("--version", shapval_version());

  CommonFlags f;

  CLI::App* value = app.add_subcommand("value", "estimate values with repeated runs");
  add_context_flags(value, f, false);
  add_run_flags(value, f, true);

  CLI::App* exact = app.add_subcommand("exact", "exhaustive values, stratum stats, axioms");
  add_context_flags(exact, f, false);
  add_run_flags(exact, f, false);

  CLI::App* sweep = app.add_subcommand("sweep", "variance sweep over exponents and budgets");
  add_context_flags(sweep, f, false);
  add_run_flags(sweep, f, true);
  std::vector<double> a_values;
  std::vector<int64_t> m_values;
  bool no_permutation = false;
  sweep->add_option("--a-values", a_values, "power exponents to sweep");
  sweep->add_option("--m-values", m_values, "budgets to sweep");
  sweep->add_flag("--no-permutation", no_permutation, "skip the permutation baseline");

  CLI::App* removal = app.add_subcommand("removal", "group values and removal curves");
  add_context_flags(removal, f, true);
  add_run_flags(removal, f, true);
  int32_t groups = 10, junk_group = -1, random_orders = 10;
  double c = 100.0;
  std::vector<std::string> rankings;
  removal->add_option("--groups", groups, "round-robin group count");
  removal->add_option("--junk-group", junk_group, "shuffle this group's labels");
  removal->add_option("--c", c, "variance penalty in value-minus-c-variance-desc");
  removal->add_option("--random-orders", random_orders, "random orders to average");
  removal->add_option("--rankings", rankings,
                      "value-desc, value-minus-c-variance-desc, random");

  CLI::App* bound = app.add_subcommand("bound", "sample-size calculators");
  double epsilon = 0.1, delta = 0.05, range = 1.0;
  int32_t bound_players = 0;
  bound->add_option("--epsilon", epsilon, "accuracy target");
  bound->add_option("--delta", delta, "failure probability");
  bound->add_option("--range", range, "marginal-contribution range");
  bound->add_option("--players", bound_players, "player count for stratified bounds");
  bound->add_option("--f", f.family, "stratum weighting: constant, harmonic, power");
  bound->add_option("--a", f.exponent, "power-family exponent");
  bound->add_option("--out", f.out_path, "write the result here");

  CLI::App* check = app.add_subcommand("check", "empirical (epsilon, delta) soundness check");
  add_context_flags(check, f, false);
  add_run_flags(check, f, true);
  int32_t trials = 500;
  check->add_option("--epsilon", epsilon, "accuracy target");
  check->add_option("--delta", delta, "failure probability");
  check->add_option("--range", range, "marginal range override");
  check->add_option("--trials", trials, "estimator trials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  CLI::App* cmd = app.get_subcommands().front();
  std::string command = cmd->get_name();
  json config;
  if (command != "bound") config = build_context(cmd, f, command == "removal");
  config["command"] = command;
  if (command != "bound") {
    apply_run_flags(config, cmd, f, command == "value" || command == "sweep" ||
                                        command == "removal" || command == "check");
  }

  if (command == "sweep") {
    json grid;
    if (cmd->count("--a-values") > 0) grid["a_values"] = a_values;
    if (cmd->count("--m-values") > 0) grid["m_values"] = m_values;
    if (no_permutation) grid["include_permutation"] = false;
    if (!grid.empty()) config["sweep"] = grid;
  } else if (command == "removal") {
    json r;
    if (cmd->count("--groups") > 0) r["groups"] = groups;
    if (cmd->count("--junk-group") > 0) r["junk_group"] = junk_group;
    if (cmd->count("--c") > 0) r["c"] = c;
    if (cmd->count("--random-orders") > 0) r["random_orders"] = random_orders;
    if (cmd->count("--rankings") > 0) r["rankings"] = rankings;
    if (!r.empty()) config["removal"] = r;
  } else if (command == "bound") {
    if (cmd->count("--epsilon") > 0) config["epsilon"] = epsilon;
    if (cmd->count("--delta") > 0) config["delta"] = delta;
    if (cmd->count("--range") > 0) config["range"] = range;
    if (cmd->count("--players") > 0) config["players"] = bound_players;
    if (cmd->count("--f") > 0 || cmd->count("--a") > 0) {
      json family;
      family["kind"] = f.family;
      if (f.family == "power") family["a"] = f.exponent;
      config["f"] = family;
    }
    if (!f.out_path.empty()) config["out"] = f.out_path;
  } else if (command == "check") {
    if (cmd->count("--epsilon") > 0) config["epsilon"] = epsilon;
    if (cmd->count("--delta") > 0) config["delta"] = delta;
    if (cmd->count("--range") > 0) config["range"] = range;
    if (cmd->count("--trials") > 0) config["trials"] = trials;
  }

  return run_config(command, config);
}
