#include "memrelax/csv.hpp"

#include <cmath>
#include <cstdio>

namespace memrelax {

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << '\n'; }

void CsvWriter::header(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) out_ << (i ? "," : "") << names[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<std::optional<double>>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    if (values[i]) out_ << format_number(*values[i]);
  }
  out_ << '\n';
}

}  // namespace memrelax
