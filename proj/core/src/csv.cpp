#include "awq/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "awq/errors.hpp"

namespace awq {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void CsvTable::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns.size())
    throw NumericError("csv: row width does not match the header");
  rows.push_back(cells);
}

std::string CsvTable::to_string() const {
  std::ostringstream os;
  for (std::size_t c = 0; c < columns.size(); ++c)
    os << columns[c] << (c + 1 < columns.size() ? ',' : '\n');
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      os << row[c] << (c + 1 < row.size() ? ',' : '\n');
  return os.str();
}

void CsvTable::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("csv: cannot write " + path);
  out << to_string();
}

}  // namespace awq
