#include "csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace xiboot::cli {

namespace {

std::string_view trim(std::string_view field) {
  while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front()))) {
    field.remove_prefix(1);
  }
  while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back()))) {
    field.remove_suffix(1);
  }
  return field;
}

}  // namespace

std::optional<double> parse_double(std::string_view field) {
  field = trim(field);
  if (field.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

CsvReadResult parse_paired_csv(std::string_view text) {
  CsvReadResult result;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool seen_data_or_header = false;

  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;

    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos) {
      if (!seen_data_or_header) {
        throw CsvError(line_no, "expected two comma-separated columns");
      }
      throw CsvError(line_no, "expected two comma-separated columns");
    }
    const std::string_view x_field = line.substr(0, comma);
    const std::string_view y_field = line.substr(comma + 1);
    if (y_field.find(',') != std::string_view::npos) {
      throw CsvError(line_no, "expected exactly two columns");
    }

    const auto x = parse_double(x_field);
    const auto y = parse_double(y_field);
    if (!x || !y) {
      if (!seen_data_or_header) {
        // Non-numeric first row: header.
        result.had_header = true;
        seen_data_or_header = true;
        continue;
      }
      throw CsvError(line_no, "could not parse '" +
                                  std::string(!x ? x_field : y_field) +
                                  "' as a finite number");
    }
    seen_data_or_header = true;
    result.sample.xs.push_back(*x);
    result.sample.ys.push_back(*y);
  }

  if (result.sample.size() < 2) {
    throw CsvError(line_no, "need at least 2 data rows, got " +
                                std::to_string(result.sample.size()));
  }
  return result;
}

CsvReadResult read_paired_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_paired_csv(buffer.str());
}

}  // namespace xiboot::cli
