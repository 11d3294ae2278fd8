#include "isaclim/csv.hpp"

#include <cstdio>
#include <stdexcept>

#include "isaclim/errors.hpp"

namespace isac {

CsvWriter::CsvWriter(const std::string& path,
                     std::vector<std::string> columns)
    : out_(path, std::ios::binary), n_columns_(columns.size()) {
  if (!out_) throw ConfigError("cannot open output file: " + path);
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out_ << ',';
    out_ << columns[i];
  }
  out_ << '\n';
}

std::string CsvWriter::format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void CsvWriter::put(const std::string& text) {
  if (row_fields_ >= n_columns_)
    throw std::logic_error("CSV row has more fields than columns");
  if (row_fields_) out_ << ',';
  out_ << text;
  ++row_fields_;
}

CsvWriter& CsvWriter::field(double v) {
  put(format_double(v));
  return *this;
}

CsvWriter& CsvWriter::field(long v) {
  put(std::to_string(v));
  return *this;
}

CsvWriter& CsvWriter::field(std::uint64_t v) {
  put(std::to_string(v));
  return *this;
}

CsvWriter& CsvWriter::field(const std::string& v) {
  put(v);
  return *this;
}

void CsvWriter::end_row() {
  if (row_fields_ != n_columns_)
    throw std::logic_error("CSV row field count does not match header");
  out_ << '\n';
  row_fields_ = 0;
}

}  // namespace isac
