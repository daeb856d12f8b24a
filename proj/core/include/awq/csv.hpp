#pragma once

#include <string>
#include <vector>

namespace awq {

// Shortest decimal representation that round-trips binary64, so CSV
// output is byte-deterministic and lossless to reload.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(const std::vector<std::string>& cells);
  std::string to_string() const;
  void write(const std::string& path) const;
};

}  // namespace awq
