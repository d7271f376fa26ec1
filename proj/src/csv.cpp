#include "macres/csv.hpp"

#include <cstdio>

#include "macres/common.hpp"

namespace macres {

std::string format_sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void CsvWriter::header(const std::vector<std::string>& names) {
  if (wrote_header_) throw Error("CsvWriter: header already written");
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out_ << ',';
    out_ << names[i];
  }
  out_ << '\n';
  wrote_header_ = true;
}

void CsvWriter::row(const std::vector<CsvCell>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    std::visit(
        [&](const auto& c) {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, double>) {
            out_ << format_sig(c);
          } else {
            out_ << c;
          }
        },
        cells[i]);
  }
  out_ << '\n';
}

}  // namespace macres
