#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace macres {

/// Floats rendered with 12 significant digits; stable across runs.
std::string format_sig(double v);

using CsvCell = std::variant<std::string, double, long long, unsigned long long>;

/// Deterministic CSV writer: '\n' line endings, no quoting (cells must not
/// contain commas), header written once.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& names);
  void row(const std::vector<CsvCell>& cells);

 private:
  std::ostream& out_;
  bool wrote_header_ = false;
};

}  // namespace macres
