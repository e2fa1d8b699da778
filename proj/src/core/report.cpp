#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <vector>

#include "error.hpp"

namespace shapval {

using nlohmann::json;

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const json& field(const json& body, const char* key) {
  auto it = body.find(key);
  require(it != body.end(), ErrorCode::Data, std::string("report lacks field '") + key + "'");
  return *it;
}

}  // namespace

void ValuationReport::validate() const {
  require(body.is_object(), ErrorCode::Data, "report body is not an object");
  require(field(body, "schema_version").is_number_integer(), ErrorCode::Data,
          "schema_version is not an integer");
  field(body, "method");
  field(body, "config");
  field(body, "budgets");
  field(body, "seeds");
  field(body, "timing");
  const json& estimates = field(body, "estimates");
  require(estimates.is_array() && !estimates.empty(), ErrorCode::Data,
          "report needs a non-empty estimates array");
  const json& variances = field(body, "variances");
  require(variances.is_array() && variances.size() == estimates.size(), ErrorCode::Data,
          "variances must align with estimates");
}

json ValuationReport::comparable_body() const {
  json copy = body;
  copy.erase("timing");
  return copy;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    require(out.good(), ErrorCode::Data, "cannot write " + tmp);
    out << content;
    require(out.good(), ErrorCode::Data, "failed writing " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  require(!ec, ErrorCode::Data, "cannot move " + tmp + " to " + path);
}

void save_report(const ValuationReport& report, const std::string& path) {
  report.validate();
  require(report.body["schema_version"].get<int>() == ValuationReport::kSchemaVersion,
          ErrorCode::Data, "refusing to save an unsupported schema version");
  write_text_atomic(path, report.body.dump(2) + "\n");
}

ValuationReport load_report(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::Data, "cannot open " + path);
  ValuationReport report;
  try {
    in >> report.body;
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Data, path + " is not valid JSON: " + e.what());
  }
  const json& version = field(report.body, "schema_version");
  require(version.is_number_integer() &&
              version.get<int>() == ValuationReport::kSchemaVersion,
          ErrorCode::Data, path + " has an unsupported schema version");
  report.validate();
  return report;
}

PlotKind plot_kind_from_string(const std::string& name) {
  if (name == "variance-vs-m") return PlotKind::VarianceVsM;
  if (name == "sweep-grid") return PlotKind::SweepGrid;
  if (name == "removal-curve") return PlotKind::RemovalCurve;
  if (name == "exact-vs-estimate") return PlotKind::ExactVsEstimate;
  fail(ErrorCode::InvalidArgument, "unknown plot kind '" + name + "'");
}

namespace {

std::string method_label(const ValuationReport& r) {
  const json& method = field(r.body, "method");
  const json& label = field(method, "label");
  require(label.is_string(), ErrorCode::Data, "method label is not a string");
  return label.get<std::string>();
}

double mean_variance(const ValuationReport& r) {
  const json& variances = field(r.body, "variances");
  require(variances.is_array() && !variances.empty(), ErrorCode::InvalidArgument,
          "report has no variances to plot");
  double sum = 0.0;
  for (const json& v : variances) sum += v.get<double>();
  return sum / static_cast<double>(variances.size());
}

std::string log10_or_floor(double v) {
  return format_number(std::log10(std::max(v, 1e-300)));
}

std::string emit_variance_vs_m(std::span<const ValuationReport> reports) {
  std::vector<std::string> labels;
  std::set<int64_t> budgets;
  std::map<std::pair<std::string, int64_t>, double> cells;
  for (const auto& r : reports) {
    std::string label = method_label(r);
    int64_t m = field(field(r.body, "budgets"), "requested").get<int64_t>();
    if (std::find(labels.begin(), labels.end(), label) == labels.end()) labels.push_back(label);
    budgets.insert(m);
    cells[{label, m}] = mean_variance(r);
  }
  std::sort(labels.begin(), labels.end());

  std::string out = "m";
  for (const auto& label : labels) out += "," + label + "_var," + label + "_log10var";
  out += "\n";
  for (int64_t m : budgets) {
    out += std::to_string(m);
    for (const auto& label : labels) {
      auto it = cells.find({label, m});
      if (it == cells.end()) {
        out += ",,";
      } else {
        out += "," + format_number(it->second) + "," + log10_or_floor(it->second);
      }
    }
    out += "\n";
  }
  return out;
}

std::string emit_sweep_grid(std::span<const ValuationReport> reports) {
  struct Row {
    std::string method;
    bool has_a;
    double a;
    int64_t m;
    double var;
  };
  std::vector<Row> rows;
  for (const auto& r : reports) {
    const json& details = field(r.body, "details");
    const json& cells = field(details, "cells");
    require(cells.is_array() && !cells.empty(), ErrorCode::InvalidArgument,
            "report has no sweep cells");
    for (const json& cell : cells) {
      Row row;
      row.method = field(cell, "method").get<std::string>();
      row.has_a = cell.contains("a") && !cell["a"].is_null();
      row.a = row.has_a ? cell["a"].get<double>() : 0.0;
      row.m = field(cell, "m").get<int64_t>();
      row.var = field(cell, "mean_variance").get<double>();
      rows.push_back(row);
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    if (x.method != y.method) return x.method < y.method;
    if (x.a != y.a) return x.a < y.a;
    return x.m < y.m;
  });
  std::string out = "method,a,m,var,log10var\n";
  for (const Row& row : rows) {
    out += row.method + ",";
    if (row.has_a) out += format_number(row.a);
    out += "," + std::to_string(row.m) + "," + format_number(row.var) + "," +
           log10_or_floor(row.var) + "\n";
  }
  return out;
}

std::string emit_removal_curve(std::span<const ValuationReport> reports) {
  std::vector<std::string> rankings;
  std::vector<std::vector<double>> curves;
  for (const auto& r : reports) {
    const json& details = field(r.body, "details");
    const json& list = field(details, "curves");
    require(list.is_array() && !list.empty(), ErrorCode::InvalidArgument,
            "report has no removal curves");
    for (const json& curve : list) {
      rankings.push_back(field(curve, "ranking").get<std::string>());
      curves.push_back(field(curve, "accuracies").get<std::vector<double>>());
    }
  }
  size_t length = 0;
  for (const auto& c : curves) length = std::max(length, c.size());
  std::string out = "groups_removed";
  for (const auto& name : rankings) out += "," + name;
  out += "\n";
  for (size_t i = 0; i < length; ++i) {
    out += std::to_string(i);
    for (const auto& c : curves) {
      out += ",";
      if (i < c.size()) out += format_number(c[i]);
    }
    out += "\n";
  }
  return out;
}

std::string emit_exact_vs_estimate(std::span<const ValuationReport> reports) {
  std::vector<double> exact;
  for (const auto& r : reports) {
    const json& details = field(r.body, "details");
    auto it = details.find("exact");
    if (it != details.end() && it->is_array()) {
      exact = it->get<std::vector<double>>();
      break;
    }
  }
  require(!exact.empty(), ErrorCode::InvalidArgument,
          "no report carries exact values to compare against");

  std::string out = "point_index,exact";
  for (const auto& r : reports) {
    std::string label = method_label(r);
    out += "," + label + "_estimate," + label + "_variance";
  }
  out += "\n";
  for (size_t i = 0; i < exact.size(); ++i) {
    out += std::to_string(i) + "," + format_number(exact[i]);
    for (const auto& r : reports) {
      const json& estimates = field(r.body, "estimates");
      const json& variances = field(r.body, "variances");
      require(estimates.size() == exact.size(), ErrorCode::InvalidArgument,
              "estimate length does not match exact values");
      out += "," + format_number(estimates[i].get<double>()) + "," +
             format_number(variances[i].get<double>());
    }
    out += "\n";
  }
  return out;
}

}  // namespace

void emit_plot_data(std::span<const ValuationReport> reports, PlotKind kind,
                    const std::string& path) {
  require(!reports.empty(), ErrorCode::InvalidArgument, "no reports to plot");
  std::string content;
  switch (kind) {
    case PlotKind::VarianceVsM:
      content = emit_variance_vs_m(reports);
      break;
    case PlotKind::SweepGrid:
      content = emit_sweep_grid(reports);
      break;
    case PlotKind::RemovalCurve:
      content = emit_removal_curve(reports);
      break;
    case PlotKind::ExactVsEstimate:
      content = emit_exact_vs_estimate(reports);
      break;
  }
  write_text_atomic(path, content);
}

}  // namespace shapval
