#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/report.hpp"

using namespace shapval;
using nlohmann::json;

namespace {

std::filesystem::path temp_path(const std::string& stem) {
  static int counter = 0;
  return std::filesystem::temp_directory_path() /
         (stem + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
}

ValuationReport minimal_report(const std::string& label, int64_t requested,
                               std::vector<double> estimates, std::vector<double> variances) {
  ValuationReport r;
  r.body = {{"schema_version", ValuationReport::kSchemaVersion},
            {"method", {{"kind", "test"}, {"label", label}}},
            {"config", {{"command", "value"}}},
            {"estimates", estimates},
            {"variances", variances},
            {"budgets", {{"requested", requested}}},
            {"seeds", {{"master", 1}}},
            {"timing", {{"seconds", 0.5}, {"workers", 1}}},
            {"details", json::object()}};
  return r;
}

std::vector<std::string> lines_of(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("reports round trip through disk") {
  ValuationReport r = minimal_report("permutation", 100, {1.0, 2.0}, {0.1, 0.2});
  auto path = temp_path("report");
  save_report(r, path.string());
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  ValuationReport back = load_report(path.string());
  CHECK(back.body == r.body);
  std::filesystem::remove(path);
}

TEST_CASE("comparable body drops only timing") {
  ValuationReport r = minimal_report("permutation", 100, {1.0}, {0.1});
  json cmp = r.comparable_body();
  CHECK_FALSE(cmp.contains("timing"));
  CHECK(cmp["estimates"] == json::array({1.0}));
  CHECK(r.body.contains("timing"));

  ValuationReport slower = minimal_report("permutation", 100, {1.0}, {0.1});
  slower.body["timing"] = {{"seconds", 99.0}, {"workers", 8}};
  CHECK(slower.comparable_body() == cmp);
}

TEST_CASE("validation rejects malformed reports") {
  ValuationReport r = minimal_report("x", 1, {1.0}, {0.1});
  r.body.erase("budgets");
  CHECK_THROWS_AS(r.validate(), Error);

  ValuationReport empty = minimal_report("x", 1, {}, {});
  CHECK_THROWS_AS(empty.validate(), Error);

  ValuationReport misaligned = minimal_report("x", 1, {1.0, 2.0}, {0.1});
  CHECK_THROWS_AS(misaligned.validate(), Error);

  ValuationReport wrong_version = minimal_report("x", 1, {1.0}, {0.1});
  wrong_version.body["schema_version"] = 99;
  CHECK_THROWS_AS(save_report(wrong_version, temp_path("nope").string()), Error);
}

TEST_CASE("loading rejects bad files") {
  auto path = temp_path("junk");
  {
    std::ofstream out(path);
    out << "not json";
  }
  CHECK_THROWS_AS(load_report(path.string()), Error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_report(path.string()), Error);
}

TEST_CASE("atomic writes leave no temp file behind") {
  auto path = temp_path("atomic");
  write_text_atomic(path.string(), "hello\n");
  CHECK(lines_of(path) == std::vector<std::string>{"hello"});
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  write_text_atomic(path.string(), "replaced\n");
  CHECK(lines_of(path) == std::vector<std::string>{"replaced"});
  std::filesystem::remove(path);
}

TEST_CASE("plot kinds parse by name") {
  CHECK(plot_kind_from_string("variance-vs-m") == PlotKind::VarianceVsM);
  CHECK(plot_kind_from_string("sweep-grid") == PlotKind::SweepGrid);
  CHECK(plot_kind_from_string("removal-curve") == PlotKind::RemovalCurve);
  CHECK(plot_kind_from_string("exact-vs-estimate") == PlotKind::ExactVsEstimate);
  CHECK_THROWS_AS(plot_kind_from_string("pie"), Error);
}

TEST_CASE("variance-vs-m plot data pivots methods into columns") {
  std::vector<ValuationReport> reports;
  reports.push_back(minimal_report("permutation", 100, {1.0, 1.0}, {0.4, 0.2}));
  reports.push_back(minimal_report("stratified-harmonic", 100, {1.0, 1.0}, {0.04, 0.02}));
  reports.push_back(minimal_report("permutation", 500, {1.0, 1.0}, {0.08, 0.04}));
  auto path = temp_path("vvm.csv");
  emit_plot_data(reports, PlotKind::VarianceVsM, path.string());
  auto lines = lines_of(path);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] ==
        "m,permutation_var,permutation_log10var,stratified-harmonic_var,"
        "stratified-harmonic_log10var");
  CHECK(lines[1].rfind("100,", 0) == 0);
  CHECK(lines[2].rfind("500,", 0) == 0);
  // the stratified method has no 500-budget report, so those cells stay empty
  CHECK(lines[2].substr(lines[2].size() - 2) == ",,");
  std::filesystem::remove(path);
}

TEST_CASE("sweep grid plot data flattens and sorts cells") {
  ValuationReport r = minimal_report("sweep", 1, {1.0}, {0.0});
  r.body["details"]["cells"] = json::array(
      {{{"method", "stratified-power(-1)"}, {"a", -1.0}, {"m", 500}, {"mean_variance", 0.01}},
       {{"method", "permutation"}, {"a", nullptr}, {"m", 100}, {"mean_variance", 0.5}},
       {{"method", "stratified-power(-1)"}, {"a", -1.0}, {"m", 100}, {"mean_variance", 0.05}}});
  auto path = temp_path("grid.csv");
  emit_plot_data({&r, 1}, PlotKind::SweepGrid, path.string());
  auto lines = lines_of(path);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "method,a,m,var,log10var");
  CHECK(lines[1].rfind("permutation,,100,", 0) == 0);
  CHECK(lines[2].rfind("stratified-power(-1),-1,100,", 0) == 0);
  CHECK(lines[3].rfind("stratified-power(-1),-1,500,", 0) == 0);
  std::filesystem::remove(path);
}

TEST_CASE("removal curve plot data lays rankings side by side") {
  ValuationReport r = minimal_report("stratified-harmonic", 100, {1.0}, {0.0});
  r.body["details"]["curves"] = json::array(
      {{{"ranking", "value-desc"}, {"accuracies", {0.9, 0.5, 0.3}}},
       {{"ranking", "random"}, {"accuracies", {0.9, 0.8, 0.7}}}});
  auto path = temp_path("curve.csv");
  emit_plot_data({&r, 1}, PlotKind::RemovalCurve, path.string());
  auto lines = lines_of(path);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "groups_removed,value-desc,random");
  CHECK(lines[1] == "0,0.90000000000000002,0.90000000000000002");
  CHECK(lines[3].rfind("2,0.2", 0) == 0);
  std::filesystem::remove(path);
}

TEST_CASE("exact-vs-estimate plot data pairs estimates with truth") {
  ValuationReport est = minimal_report("permutation", 100, {0.6, 0.2}, {0.01, 0.02});
  est.body["details"]["exact"] = {0.5, 0.25};
  auto path = temp_path("exact.csv");
  emit_plot_data({&est, 1}, PlotKind::ExactVsEstimate, path.string());
  auto lines = lines_of(path);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "point_index,exact,permutation_estimate,permutation_variance");
  CHECK(lines[1].rfind("0,0.5,", 0) == 0);
  std::filesystem::remove(path);

  ValuationReport no_exact = minimal_report("permutation", 100, {0.6}, {0.01});
  CHECK_THROWS_AS(emit_plot_data({&no_exact, 1}, PlotKind::ExactVsEstimate, path.string()),
                  Error);
}
