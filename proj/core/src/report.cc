#include "otnplan/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace otnplan {

namespace {

const char* const kRowNames[] = {"transit traffic (Gbps)", "lightpaths", "wavelengths", "total cost",
                                 "optical layer cost"};

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s == "-0" || s == "-0.0") s.erase(0, 1);
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ReportFormat parse_report_format(const std::string& text) {
  if (text == "table") return ReportFormat::kTable;
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "json") return ReportFormat::kJson;
  throw std::invalid_argument("unknown report format '" + text + "'");
}

ReportColumn report_column(const NetworkConfiguration& config, const std::string& name,
                           const std::optional<UnitCosts>& costs) {
  ReportColumn col;
  col.name = name.empty() ? to_string(config.mode) + "/" + to_string(config.approach) : name;
  col.mode = config.mode;
  col.cost = total_cost(config);
  if (costs) {
    CostBreakdown priced = total_cost(col.cost.lightpaths, col.cost.wavelengths, col.cost.transit_gbps, *costs);
    priced.protection_lightpaths = col.cost.protection_lightpaths;
    priced.extra_wavelengths = col.cost.extra_wavelengths;
    col.cost = priced;
  }
  return col;
}

std::vector<std::string> report_cells(const ReportColumn& col) {
  const CostBreakdown& c = col.cost;
  std::string lightpaths = std::to_string(c.lightpaths);
  if (col.mode != SurvivabilityMode::kNone) lightpaths += " (" + std::to_string(c.protection_lightpaths) + ")";
  std::string wavelengths = std::to_string(c.wavelengths);
  if (col.mode == SurvivabilityMode::kInterlayerBrs) wavelengths += " (" + std::to_string(c.extra_wavelengths) + ")";
  return {fixed(c.transit_gbps, 1), lightpaths, wavelengths, fixed(c.total, 0), fixed(c.optical(), 0)};
}

double relative_difference(double a, double b) { return (a - b) / b * 100.0; }

std::string format_relative(double percent) {
  std::string s = fixed(percent, 1);
  if (s[0] != '-') s = "+" + s;
  return s + "%";
}

std::string emit_report(const std::vector<ReportColumn>& columns, ReportFormat format,
                        std::optional<std::size_t> baseline) {
  if (baseline && *baseline >= columns.size()) throw std::out_of_range("baseline column out of range");
  std::vector<std::string> labels(std::begin(kRowNames), std::end(kRowNames));
  std::vector<std::vector<std::string>> cells;
  for (const auto& col : columns) cells.push_back(report_cells(col));
  if (baseline) {
    labels.push_back("relative to " + columns[*baseline].name);
    for (std::size_t k = 0; k < columns.size(); ++k) {
      cells[k].push_back(
          format_relative(relative_difference(columns[k].cost.total, columns[*baseline].cost.total)));
    }
  }

  std::ostringstream out;
  switch (format) {
    case ReportFormat::kCsv: {
      out << "row";
      for (const auto& col : columns) out << ',' << csv_field(col.name);
      out << '\n';
      for (std::size_t r = 0; r < labels.size(); ++r) {
        out << csv_field(labels[r]);
        for (const auto& c : cells) out << ',' << csv_field(c[r]);
        out << '\n';
      }
      break;
    }
    case ReportFormat::kTable: {
      std::size_t label_width = 0;
      for (const auto& l : labels) label_width = std::max(label_width, l.size());
      std::vector<std::size_t> width;
      for (std::size_t k = 0; k < columns.size(); ++k) {
        std::size_t w = columns[k].name.size();
        for (const auto& c : cells[k]) w = std::max(w, c.size());
        width.push_back(w);
      }
      auto line = [&](const std::string& label, auto cell) {
        out << label << std::string(label_width - label.size(), ' ');
        for (std::size_t k = 0; k < columns.size(); ++k) {
          const std::string s = cell(k);
          out << " | " << std::string(width[k] - s.size(), ' ') << s;
        }
        out << '\n';
      };
      line("", [&](std::size_t k) { return columns[k].name; });
      out << std::string(label_width, '-');
      for (std::size_t w : width) out << "-+-" << std::string(w, '-');
      out << '\n';
      for (std::size_t r = 0; r < labels.size(); ++r) line(labels[r], [&](std::size_t k) { return cells[k][r]; });
      break;
    }
    case ReportFormat::kJson: {
      nlohmann::json doc = nlohmann::json::array();
      for (std::size_t k = 0; k < columns.size(); ++k) {
        const CostBreakdown& c = columns[k].cost;
        nlohmann::json j = {{"name", columns[k].name},
                            {"mode", to_string(columns[k].mode)},
                            {"transit_gbps", c.transit_gbps},
                            {"lightpaths", c.lightpaths},
                            {"protection_lightpaths", c.protection_lightpaths},
                            {"wavelengths", c.wavelengths},
                            {"extra_wavelengths", c.extra_wavelengths},
                            {"total", c.total},
                            {"optical", c.optical()}};
        if (baseline) j["relative_percent"] = relative_difference(c.total, columns[*baseline].cost.total);
        doc.push_back(std::move(j));
      }
      out << doc.dump(2) << '\n';
      break;
    }
  }
  return out.str();
}

}  // namespace otnplan
