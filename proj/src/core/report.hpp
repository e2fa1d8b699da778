#pragma once

#include <span>
#include <string>

#include <nlohmann/json.hpp>

namespace shapval {

// A valuation result as a JSON document. Top level always carries
// schema_version, method, config, estimates, variances, budgets, seeds and
// timing; command-specific extras live under details.
struct ValuationReport {
  static constexpr int kSchemaVersion = 1;

  nlohmann::json body;

  void validate() const;

  // Everything except timing; two runs of the same config must match on this.
  nlohmann::json comparable_body() const;
};

void save_report(const ValuationReport& report, const std::string& path);
ValuationReport load_report(const std::string& path);

enum class PlotKind { VarianceVsM, SweepGrid, RemovalCurve, ExactVsEstimate };

PlotKind plot_kind_from_string(const std::string& name);

// Flattens one or more reports into a CSV for plotting. Each kind has fixed
// columns; reports missing the needed fields are rejected.
void emit_plot_data(std::span<const ValuationReport> reports, PlotKind kind,
                    const std::string& path);

// Writes via a temp file and rename so readers never see partial output.
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace shapval
