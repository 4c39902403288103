#pragma once

#include <optional>
#include <string>
#include <vector>

#include "otnplan/configuration.h"

namespace otnplan {

enum class ReportFormat { kTable, kCsv, kJson };
/// "table", "csv" or "json"; throws std::invalid_argument otherwise.
ReportFormat parse_report_format(const std::string& text);

/// One configuration's resource usage and cost.
struct ReportColumn {
  std::string name;
  SurvivabilityMode mode = SurvivabilityMode::kNone;
  CostBreakdown cost;
};

/// Named "<mode>/<approach>" unless `name` is given. With `costs` the
/// resource counts are priced with those unit costs instead of the
/// instance's own.
ReportColumn report_column(const NetworkConfiguration& config, const std::string& name = "",
                           const std::optional<UnitCosts>& costs = std::nullopt);

/// Cells of one column, top to bottom: transit traffic, lightpaths
/// (protection-carrying count in brackets), wavelengths (BRS extra in
/// brackets), total cost, optical layer cost.
std::vector<std::string> report_cells(const ReportColumn& column);

/// (a - b) / b * 100.
double relative_difference(double a, double b);
/// One decimal with explicit sign, e.g. "+6.9%".
std::string format_relative(double percent);

/// With `baseline`, adds a row with each column's total cost relative to
/// that column.
std::string emit_report(const std::vector<ReportColumn>& columns, ReportFormat format,
                        std::optional<std::size_t> baseline = std::nullopt);

}  // namespace otnplan
