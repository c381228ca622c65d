#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "xiboot/sample.hpp"

namespace xiboot::cli {

// Parse failure with the 1-based line it occurred on.
class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct CsvReadResult {
  PairedSample sample;
  bool had_header = false;
};

// Reads a two-column x,y CSV (UTF-8, LF or CRLF, blank lines ignored). A
// non-numeric first row is treated as a header and skipped; any later
// unparsable row raises CsvError with its line number.
CsvReadResult read_paired_csv(const std::string& path);
CsvReadResult parse_paired_csv(std::string_view text);

// Strict, locale-independent double parsing; rejects trailing junk and
// non-finite values.
std::optional<double> parse_double(std::string_view field);

// Shortest representation that is exact at 17 significant digits.
std::string format_double(double value);

}  // namespace xiboot::cli
