#pragma once

#include <filesystem>

#include "molqa/csv.hpp"

namespace molqa {

enum class PlotKind { lines, bars };

// Renders a table as a standalone SVG 1.1 document with an 800x600 viewport
// and linear labeled axes. lines: column 0 is x, every further column is one
// polyline series. bars: column 0 holds category labels, further columns are
// grouped bars. Identical input produces byte-identical output.
void emit_svg(const std::filesystem::path& path, const Table& table,
              PlotKind kind, const std::string& title = "");

}  // namespace molqa
