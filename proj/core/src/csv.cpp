#include <cmath>
#include <cstdio>
#include <fstream>

#include "cdr/error.hpp"
#include "cdr/table.hpp"

namespace cdr {

std::size_t Table::column(const std::string& name) const {
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k] == name) return k;
  }
  throw Error(ErrorCode::UnknownName, "no column named '" + name + "'");
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string format_csv(const Table& table) {
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].size() != table.columns.size()) {
      throw Error(ErrorCode::InvalidArgument,
                  "row " + std::to_string(r) + " has the wrong column count");
    }
    for (double v : table.rows[r]) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::NonFiniteValue,
                    "row " + std::to_string(r) + " holds a non-finite value");
      }
    }
  }

  std::string out;
  if (!table.metadata.empty()) {
    out += '#';
    for (const auto& [key, value] : table.metadata) {
      out += ' ';
      out += key;
      out += '=';
      out += value;
    }
    out += '\n';
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_number(row[c]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const Table& table, const std::string& path) {
  const std::string text = format_csv(table);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  }
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  file.close();
  if (!file) {
    throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
  }
}

}  // namespace cdr
