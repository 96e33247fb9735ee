#include "molqa/csv.hpp"

#include <cstdio>
#include <fstream>

#include "molqa/errors.hpp"

namespace molqa {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw ConfigError("table row width does not match the header");
  rows.push_back(std::move(row));
}

std::string format_full(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw NumericalError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw NumericalError("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

void write_csv(const std::filesystem::path& path, const Table& table) {
  std::string out;
  for (size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (std::holds_alternative<double>(row[c]))
        out += format_full(std::get<double>(row[c]));
      else
        out += std::get<std::string>(row[c]);
    }
    out += '\n';
  }
  write_text_file(path, out);
}

}  // namespace molqa
