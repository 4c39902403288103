#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "otnplan/planner.h"
#include "otnplan/report.h"

namespace otnplan {
namespace {

const std::string kData = OTNPLAN_TEST_DATA_DIR;

UnitCosts cr1() { return derive_unit_costs(CostRatios::cr1(), Bandwidth::from_gbps(10)); }

ReportColumn priced_column(const std::string& name, SurvivabilityMode mode, int lps, int plps, int wl,
                           int extra, double transit) {
  ReportColumn c{name, mode, total_cost(lps, wl, transit, cr1())};
  c.cost.protection_lightpaths = plps;
  c.cost.extra_wavelengths = extra;
  return c;
}

std::vector<std::string> split(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t at = 0;
  for (;;) {
    const std::size_t next = s.find(sep, at);
    out.push_back(s.substr(at, next - at));
    if (next == std::string::npos) return out;
    at = next + sep.size();
  }
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(' ');
  const auto b = s.find_last_not_of(' ');
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

TEST(Report, SingleLayerColumnShape) {
  const auto c = priced_column("SL", SurvivabilityMode::kSingleLayer, 143, 79, 329, 0, 262.5);
  const auto cells = report_cells(c);
  ASSERT_EQ(cells.size(), 5u);
  EXPECT_EQ(cells[1] + " | " + cells[2] + " | " + cells[3] + " | " + cells[4], "143 (79) | 329 | 3628 | 987");
  EXPECT_EQ(cells[0], "262.5");
}

TEST(Report, BracketConventions) {
  const auto none = report_cells(priced_column("none", SurvivabilityMode::kNone, 10, 0, 20, 0, 5));
  EXPECT_EQ(none[1], "10");
  EXPECT_EQ(none[2], "20");
  const auto brs = report_cells(priced_column("BRS", SurvivabilityMode::kInterlayerBrs, 216, 0, 480, 30, 52.5));
  EXPECT_EQ(brs[1], "216 (0)");
  EXPECT_EQ(brs[2], "480 (30)");
  EXPECT_EQ(brs[3], "5154");
  EXPECT_EQ(brs[4], "1440");
}

TEST(Report, RelativeDifference) {
  EXPECT_EQ(format_relative(relative_difference(3628, 3395)), "+6.9%");
  EXPECT_EQ(format_relative(relative_difference(1471, 1537)), "-4.3%");
  EXPECT_EQ(format_relative(relative_difference(5, 5)), "+0.0%");
}

TEST(Report, TableAndCsvCarrySameCells) {
  const std::vector<ReportColumn> cols = {
      priced_column("SL", SurvivabilityMode::kSingleLayer, 143, 79, 329, 0, 262.5),
      priced_column("BRS", SurvivabilityMode::kInterlayerBrs, 216, 0, 480, 30, 52.5)};
  const auto table = lines(emit_report(cols, ReportFormat::kTable, 1));
  const auto csv = lines(emit_report(cols, ReportFormat::kCsv, 1));
  ASSERT_EQ(table.size(), csv.size() + 1);  // table has a rule line
  for (std::size_t r = 1; r < csv.size(); ++r) {
    const auto t = split(table[r + 1], " | ");
    const auto c = split(csv[r], ",");
    ASSERT_EQ(t.size(), c.size());
    for (std::size_t k = 0; k < t.size(); ++k) EXPECT_EQ(trim(t[k]), c[k]);
  }
  EXPECT_EQ(csv.back(), "relative to BRS,-29.6%,+0.0%");
}

TEST(Report, JsonNumbers) {
  const std::vector<ReportColumn> cols = {
      priced_column("SL", SurvivabilityMode::kSingleLayer, 143, 79, 329, 0, 262.5)};
  const auto doc = nlohmann::json::parse(emit_report(cols, ReportFormat::kJson));
  ASSERT_EQ(doc.size(), 1u);
  EXPECT_EQ(doc[0]["lightpaths"], 143);
  EXPECT_EQ(doc[0]["protection_lightpaths"], 79);
  EXPECT_DOUBLE_EQ(doc[0]["total"].get<double>(), 3628.0);
  EXPECT_DOUBLE_EQ(doc[0]["optical"].get<double>(), 987.0);
  EXPECT_FALSE(doc[0].contains("relative_percent"));
}

TEST(Report, FromConfigurationIsDeterministic) {
  PlanOptions o;
  o.gap = 0.0;
  const Instance inst = load_instance(kData + "/ring4.json");
  const auto a = plan(inst, SurvivabilityMode::kSingleLayer, Approach::kSequential, o);
  const auto b = plan(inst, SurvivabilityMode::kSingleLayer, Approach::kSequential, o);
  const std::string ta = emit_report({report_column(a)}, ReportFormat::kTable);
  EXPECT_EQ(ta, emit_report({report_column(b)}, ReportFormat::kTable));
  EXPECT_NE(ta.find("single-layer/sequential"), std::string::npos);
  const auto col = report_column(a);
  EXPECT_DOUBLE_EQ(col.cost.total, 46.0);
  const auto doubled = report_column(a, "x2", cr1().scaled(2.0));
  EXPECT_DOUBLE_EQ(doubled.cost.total, 92.0);
  EXPECT_EQ(doubled.name, "x2");
}

TEST(Report, Errors) {
  EXPECT_EQ(parse_report_format("csv"), ReportFormat::kCsv);
  EXPECT_THROW(parse_report_format("xml"), std::invalid_argument);
  const std::vector<ReportColumn> one = {priced_column("a", SurvivabilityMode::kNone, 1, 0, 1, 0, 0)};
  EXPECT_THROW(emit_report(one, ReportFormat::kTable, 3), std::out_of_range);
}

}  // namespace
}  // namespace otnplan
