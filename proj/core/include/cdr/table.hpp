#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cdr {

/// Column-named numeric table with ordered key=value metadata.
struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Index of a named column; throws UnknownName.
  std::size_t column(const std::string& name) const;
};

/// Optional `# key=value ...` metadata line (omitted when there is no
/// metadata), column line, then one line per row. Floats use 12
/// significant digits, LF endings; output is byte-deterministic.
/// Throws NonFiniteValue before writing anything if a value is NaN/inf.
std::string format_csv(const Table& table);

/// Writes format_csv(table) to `path`; IoError on failure.
void write_csv(const Table& table, const std::string& path);

std::string format_number(double value);

}  // namespace cdr
