#include "primecycles/report.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "primecycles/errors.h"

namespace primecycles {
namespace {

Report sample_report() {
  return Report{{"x", "y"}, {{1.0, 0.1}, {2.0, 1.0 / 3.0}, {1e100, -2.5e-300}}};
}

TEST(ReportTest, CsvLayout) {
  std::ostringstream out;
  emit_report(Report{{"a", "b"}, {{1.0, 0.5}}}, ReportFormat::kCsv, out);
  EXPECT_EQ(out.str(), "a,b\n1,0.5\n");
  std::ostringstream three;
  emit_report(sample_report(), ReportFormat::kCsv, three);
  EXPECT_EQ(three.str(),
            "x,y\n1,0.10000000000000001\n2,0.33333333333333331\n1e+100,-2.5e-300\n");
}

TEST(ReportTest, RoundTripsBitExactly) {
  for (auto format : {ReportFormat::kCsv, ReportFormat::kJson}) {
    std::stringstream buffer;
    emit_report(sample_report(), format, buffer);
    const Report back = parse_report(buffer, format);
    EXPECT_EQ(back.columns, sample_report().columns);
    EXPECT_EQ(back.rows, sample_report().rows);
  }
}

TEST(ReportTest, JsonIsAnArrayOfOrderedObjects) {
  std::ostringstream out;
  emit_report(Report{{"z", "a"}, {{1.5, std::numeric_limits<double>::infinity()}}},
              ReportFormat::kJson, out);
  const auto doc = nlohmann::ordered_json::parse(out.str());
  ASSERT_TRUE(doc.is_array());
  ASSERT_EQ(doc.size(), 1u);
  EXPECT_EQ(doc[0].begin().key(), "z");
  EXPECT_EQ(doc[0]["z"].get<double>(), 1.5);
  EXPECT_TRUE(doc[0]["a"].is_null());
}

TEST(ReportTest, DeterministicBytes) {
  for (auto format : {ReportFormat::kCsv, ReportFormat::kJson}) {
    std::ostringstream a, b;
    emit_report(sample_report(), format, a);
    emit_report(sample_report(), format, b);
    EXPECT_EQ(a.str(), b.str());
  }
}

TEST(ReportTest, Errors) {
  std::ostringstream out;
  try {
    emit_report(Report{{"x"}, {}}, ReportFormat::kCsv, out);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  try {
    emit_report(sample_report(), ReportFormat::kCsv,
                std::filesystem::path("/nonexistent-dir/sub/report.csv"));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
  EXPECT_THROW(parse_report_format("xml"), Error);
  EXPECT_EQ(parse_report_format("json"), ReportFormat::kJson);
  std::istringstream bad("a,b\n1,zz\n");
  EXPECT_THROW(parse_report(bad, ReportFormat::kCsv), Error);
}

TEST(ReportTest, WritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "primecycles_report_test.csv";
  emit_report(sample_report(), ReportFormat::kCsv, path);
  std::ifstream in(path);
  const Report back = parse_report(in, ReportFormat::kCsv);
  EXPECT_EQ(back.rows, sample_report().rows);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace primecycles
