#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace primecycles {

enum class ReportFormat { kCsv, kJson };

ReportFormat parse_report_format(std::string_view text);

// A rectangular numeric table with named columns.
struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// "%.17g": enough digits for every double to round-trip.
std::string format_g17(double value);

// CSV is a header line plus one line per row; JSON is an array of objects
// keyed by column name. Both are byte-for-byte deterministic. Throws
// invalid-argument on an empty report and io-error on an unwritable path.
void emit_report(const Report& report, ReportFormat format, std::ostream& out);
void emit_report(const Report& report, ReportFormat format,
                 const std::filesystem::path& destination);

Report parse_report(std::istream& in, ReportFormat format);

}  // namespace primecycles
