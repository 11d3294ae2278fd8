#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace isac {

/// Minimal CSV emitter with a fixed schema: header row first, floating
/// point printed with 12 significant digits, no locale surprises. Output is
/// byte-identical across runs for identical inputs.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::vector<std::string> columns);

  CsvWriter& field(double v);
  CsvWriter& field(long v);
  CsvWriter& field(int v) { return field(static_cast<long>(v)); }
  CsvWriter& field(std::uint64_t v);
  CsvWriter& field(const std::string& v);
  void end_row();

  static std::string format_double(double v);

 private:
  std::ofstream out_;
  std::size_t n_columns_;
  std::size_t row_fields_ = 0;
  void put(const std::string& text);
};

}  // namespace isac
