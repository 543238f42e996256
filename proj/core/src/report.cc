#include "primecycles/report.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "primecycles/errors.h"

namespace primecycles {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_double(const std::string& text) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    fail(ErrorCode::kInvalidArgument, "malformed number '" + text + "' in report");
  }
  return value;
}

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "json") return ReportFormat::kJson;
  fail(ErrorCode::kInvalidArgument, "unknown report format '" + std::string(text) + "'");
}

std::string format_g17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void emit_report(const Report& report, ReportFormat format, std::ostream& out) {
  if (report.rows.empty()) fail(ErrorCode::kInvalidArgument, "refusing to emit an empty report");
  for (const auto& row : report.rows) {
    if (row.size() != report.columns.size()) {
      fail(ErrorCode::kInternal, "report row width does not match its header");
    }
  }
  if (format == ReportFormat::kCsv) {
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
      out << (i ? "," : "") << report.columns[i];
    }
    out << '\n';
    for (const auto& row : report.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_g17(row[i]);
      out << '\n';
    }
    return;
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (std::isfinite(row[i])) {
        obj[report.columns[i]] = row[i];
      } else {
        obj[report.columns[i]] = nullptr;
      }
    }
    doc.push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

void emit_report(const Report& report, ReportFormat format,
                 const std::filesystem::path& destination) {
  std::ostringstream buffer;
  emit_report(report, format, buffer);
  std::ofstream file(destination, std::ios::binary | std::ios::trunc);
  if (!file) fail(ErrorCode::kIo, "cannot open '" + destination.string() + "' for writing");
  file << buffer.str();
  if (!file) fail(ErrorCode::kIo, "write to '" + destination.string() + "' failed");
}

Report parse_report(std::istream& in, ReportFormat format) {
  Report report;
  if (format == ReportFormat::kCsv) {
    std::string line;
    if (!std::getline(in, line)) fail(ErrorCode::kInvalidArgument, "report has no header");
    report.columns = split_csv_line(line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<double> row;
      for (const auto& cell : split_csv_line(line)) row.push_back(parse_double(cell));
      if (row.size() != report.columns.size()) {
        fail(ErrorCode::kInvalidArgument, "report row width does not match its header");
      }
      report.rows.push_back(std::move(row));
    }
    return report;
  }
  const auto doc = nlohmann::ordered_json::parse(in);
  for (const auto& obj : doc) {
    if (report.columns.empty()) {
      for (const auto& item : obj.items()) report.columns.push_back(item.key());
    }
    std::vector<double> row;
    for (const auto& name : report.columns) {
      const auto& v = obj.at(name);
      row.push_back(v.is_null() ? std::nan("") : v.get<double>());
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace primecycles
