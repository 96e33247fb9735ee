#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace molqa {

// Column-oriented table for CSV/SVG emission. Cells are either text or
// full-precision doubles.
using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  bool empty() const { return rows.empty(); }
};

// Formats a double with 17 significant digits (round-trip exact).
std::string format_full(double value);

// Writes UTF-8, LF-terminated CSV atomically (temp file + rename).
void write_csv(const std::filesystem::path& path, const Table& table);

// Atomic whole-file write used by every emitter.
void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

}  // namespace molqa
