#include "molqa/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "molqa/errors.hpp"

namespace molqa {

namespace {

constexpr double kWidth = 800.0, kHeight = 600.0;
constexpr double kLeft = 70.0, kRight = 770.0, kTop = 40.0, kBottom = 550.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f",
                          "#bcbd22", "#e377c2"};
constexpr int kPaletteSize = 10;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double cell_value(const Cell& c) {
  if (!std::holds_alternative<double>(c))
    throw ConfigError("numeric cell expected in plot table");
  return std::get<double>(c);
}

struct NiceTicks {
  double lo, hi, step;
};

NiceTicks nice_ticks(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = (lo == 0.0) ? 1.0 : std::abs(lo) * 0.5;
    lo -= pad;
    hi += pad;
  }
  const double span = hi - lo;
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  double step;
  if (norm < 1.5)
    step = 1.0;
  else if (norm < 3.5)
    step = 2.0;
  else if (norm < 7.5)
    step = 5.0;
  else
    step = 10.0;
  step *= mag;
  return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

std::string header(const std::string& title) {
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" "
       "height=\"600\" viewBox=\"0 0 800 600\">\n";
  s += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  if (!title.empty())
    s += "<text x=\"400\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" "
         "text-anchor=\"middle\">" + title + "</text>\n";
  return s;
}

void axes(std::string& s, const NiceTicks& tx, const NiceTicks& ty,
          const std::string& x_label, const std::string& y_label) {
  const auto map_x = [&](double v) {
    return kLeft + (v - tx.lo) / (tx.hi - tx.lo) * (kRight - kLeft);
  };
  const auto map_y = [&](double v) {
    return kBottom - (v - ty.lo) / (ty.hi - ty.lo) * (kBottom - kTop);
  };
  s += "<g stroke=\"black\" stroke-width=\"1\">\n";
  s += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kBottom) + "\" x2=\"" +
       fmt(kRight) + "\" y2=\"" + fmt(kBottom) + "\"/>\n";
  s += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" +
       fmt(kLeft) + "\" y2=\"" + fmt(kBottom) + "\"/>\n";
  s += "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  for (double v = tx.lo; v <= tx.hi + 0.5 * tx.step; v += tx.step) {
    const double x = map_x(v);
    s += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kBottom) + "\" x2=\"" +
         fmt(x) + "\" y2=\"" + fmt(kBottom + 5) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kBottom + 18) +
         "\" text-anchor=\"middle\">" + fmt(v) + "</text>\n";
  }
  for (double v = ty.lo; v <= ty.hi + 0.5 * ty.step; v += ty.step) {
    const double y = map_y(v);
    s += "<line x1=\"" + fmt(kLeft - 5) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
         fmt(kLeft) + "\" y2=\"" + fmt(y) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt(kLeft - 8) + "\" y=\"" + fmt(y + 4) +
         "\" text-anchor=\"end\">" + fmt(v) + "</text>\n";
  }
  s += "<text x=\"" + fmt(0.5 * (kLeft + kRight)) + "\" y=\"" +
       fmt(kBottom + 38) + "\" text-anchor=\"middle\" font-size=\"13\">" +
       x_label + "</text>\n";
  s += "<text x=\"18\" y=\"" + fmt(0.5 * (kTop + kBottom)) +
       "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " +
       fmt(0.5 * (kTop + kBottom)) + ")\">" + y_label + "</text>\n";
  s += "</g>\n";
}

void legend(std::string& s, const std::vector<std::string>& names) {
  s += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  double y = kTop + 8.0;
  for (size_t i = 0; i < names.size(); ++i) {
    const char* color = kPalette[i % kPaletteSize];
    s += "<rect x=\"" + fmt(kRight - 150) + "\" y=\"" + fmt(y - 9) +
         "\" width=\"18\" height=\"4\" fill=\"" + std::string(color) + "\"/>\n";
    s += "<text x=\"" + fmt(kRight - 126) + "\" y=\"" + fmt(y - 3) + "\">" +
         names[i] + "</text>\n";
    y += 18.0;
  }
  s += "</g>\n";
}

void emit_lines(std::string& s, const Table& table) {
  const size_t n_series = table.columns.size() - 1;
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const auto& row : table.rows) {
    const double x = cell_value(row[0]);
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
    for (size_t c = 1; c < row.size(); ++c) {
      const double y = cell_value(row[c]);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  const NiceTicks tx = nice_ticks(x_min, x_max);
  const NiceTicks ty = nice_ticks(y_min, y_max);
  axes(s, tx, ty, table.columns[0],
       n_series == 1 ? table.columns[1] : std::string());

  const auto map_x = [&](double v) {
    return kLeft + (v - tx.lo) / (tx.hi - tx.lo) * (kRight - kLeft);
  };
  const auto map_y = [&](double v) {
    return kBottom - (v - ty.lo) / (ty.hi - ty.lo) * (kBottom - kTop);
  };
  for (size_t c = 1; c < table.columns.size(); ++c) {
    std::string pts;
    for (const auto& row : table.rows) {
      pts += fmt(map_x(cell_value(row[0])));
      pts += ',';
      pts += fmt(map_y(cell_value(row[c])));
      pts += ' ';
    }
    if (!pts.empty()) pts.pop_back();
    s += "<polyline fill=\"none\" stroke=\"" +
         std::string(kPalette[(c - 1) % kPaletteSize]) +
         "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
  }
  std::vector<std::string> names(table.columns.begin() + 1, table.columns.end());
  if (names.size() > 1) legend(s, names);
}

void emit_bars(std::string& s, const Table& table) {
  const size_t n_series = table.columns.size() - 1;
  double y_min = 0.0, y_max = -std::numeric_limits<double>::infinity();
  for (const auto& row : table.rows)
    for (size_t c = 1; c < row.size(); ++c) {
      const double y = cell_value(row[c]);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  const NiceTicks ty = nice_ticks(y_min, y_max);
  const auto map_y = [&](double v) {
    return kBottom - (v - ty.lo) / (ty.hi - ty.lo) * (kBottom - kTop);
  };

  s += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  s += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kBottom) + "\" x2=\"" +
       fmt(kRight) + "\" y2=\"" + fmt(kBottom) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" +
       fmt(kLeft) + "\" y2=\"" + fmt(kBottom) + "\" stroke=\"black\"/>\n";
  for (double v = ty.lo; v <= ty.hi + 0.5 * ty.step; v += ty.step) {
    const double y = map_y(v);
    s += "<line x1=\"" + fmt(kLeft - 5) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
         fmt(kLeft) + "\" y2=\"" + fmt(y) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt(kLeft - 8) + "\" y=\"" + fmt(y + 4) +
         "\" text-anchor=\"end\">" + fmt(v) + "</text>\n";
  }
  s += "</g>\n";

  const size_t n_groups = table.rows.size();
  const double group_w = (kRight - kLeft) / static_cast<double>(n_groups);
  const double bar_w = 0.8 * group_w / static_cast<double>(n_series);
  s += "<g font-family=\"sans-serif\" font-size=\"10\" fill=\"black\">\n";
  for (size_t g = 0; g < n_groups; ++g) {
    const auto& row = table.rows[g];
    const double gx = kLeft + (static_cast<double>(g) + 0.1) * group_w;
    for (size_t c = 1; c < row.size(); ++c) {
      const double v = cell_value(row[c]);
      const double y0 = map_y(std::max(0.0, v));
      const double h = std::abs(map_y(0.0) - map_y(v));
      s += "<rect x=\"" + fmt(gx + (c - 1) * bar_w) + "\" y=\"" + fmt(y0) +
           "\" width=\"" + fmt(bar_w) + "\" height=\"" + fmt(h) + "\" fill=\"" +
           std::string(kPalette[(c - 1) % kPaletteSize]) + "\"/>\n";
    }
    const std::string label = std::holds_alternative<std::string>(row[0])
                                  ? std::get<std::string>(row[0])
                                  : fmt(cell_value(row[0]));
    s += "<text x=\"" + fmt(gx + 0.4 * group_w) + "\" y=\"" + fmt(kBottom + 14) +
         "\" text-anchor=\"middle\" transform=\"rotate(45 " +
         fmt(gx + 0.4 * group_w) + " " + fmt(kBottom + 14) + ")\">" + label +
         "</text>\n";
  }
  s += "</g>\n";
  std::vector<std::string> names(table.columns.begin() + 1, table.columns.end());
  if (names.size() > 1) legend(s, names);
}

}  // namespace

void emit_svg(const std::filesystem::path& path, const Table& table,
              PlotKind kind, const std::string& title) {
  if (table.empty()) throw ConfigError("cannot plot an empty table");
  std::string s = header(title);
  if (kind == PlotKind::lines)
    emit_lines(s, table);
  else
    emit_bars(s, table);
  s += "</svg>\n";
  write_text_file(path, s);
}

}  // namespace molqa
