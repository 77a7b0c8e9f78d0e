#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace memrelax {

/// 12 significant digits, '.' decimal separator.
std::string format_number(double v);

/// Comma-separated, LF-terminated rows; comment lines start with "# ".
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(const std::string& text);
  void header(const std::vector<std::string>& names);
  /// Missing values are written as empty fields.
  void row(const std::vector<std::optional<double>>& values);

 private:
  std::ostream& out_;
};

}  // namespace memrelax
