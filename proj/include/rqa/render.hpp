#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rqa/csv.hpp"
#include "rqa/recurrence.hpp"
#include "rqa/series.hpp"
#include "rqa/windowed.hpp"

namespace rqa {

// Binary P5 graymap of the plot, origin bottom-left (row 0 of the plot is
// the bottom raster line); set bits are black.
inline void export_rp_raster(const RecurrencePlot& rp, const std::string& path) {
  const std::int64_t n = rp.n();
  if (n < 1) throw Error("cannot render an empty plot");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);

  out << "P5\n" << n << ' ' << n << "\n255\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < n; ++r) {
    const std::int64_t i = n - 1 - r;  // flip so index 0 sits at the bottom
    for (std::int64_t j = 0; j < n; ++j)
      row[static_cast<std::size_t>(j)] = rp.test(i, j) ? 0 : 255;
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw IoError("failed while writing " + path);
}

// One named curve for the chart; gaps (nullopt) split the polyline.
struct ChartSeries {
  std::string name;
  std::vector<std::pair<Date, std::optional<double>>> points;
};

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct PanelScale {
  double lo = 0, hi = 1;
  double y0 = 0, y1 = 1;  // pixel range, y0 = bottom
  double map(double v) const {
    return y0 - (v - lo) / (hi - lo) * (y0 - y1);
  }
};

inline PanelScale panel_scale(const std::vector<const ChartSeries*>& curves,
                              double y_top, double y_bottom) {
  double lo = 0, hi = 1;
  bool seen = false;
  for (const ChartSeries* s : curves)
    for (const auto& [d, v] : s->points)
      if (v) {
        lo = seen ? std::min(lo, *v) : *v;
        hi = seen ? std::max(hi, *v) : *v;
        seen = true;
      }
  if (!seen) {
    lo = 0;
    hi = 1;
  }
  double pad = 0.05 * (hi - lo);
  if (pad == 0) pad = hi == 0 ? 1.0 : std::abs(hi) * 0.05;
  return {lo - pad, hi + pad, y_bottom, y_top};
}

inline void emit_polylines(std::ofstream& out, const ChartSeries& s,
                           double x_lo, double x_span, double plot_x0,
                           double plot_w, const PanelScale& scale,
                           const std::string& color) {
  std::vector<std::string> coords;
  auto flush = [&]() {
    if (coords.size() >= 2) {
      out << "  <polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1\" points=\"";
      for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) out << ' ';
        out << coords[i];
      }
      out << "\"/>\n";
    }
    coords.clear();
  };
  for (const auto& [d, v] : s.points) {
    if (!v) {
      flush();
      continue;
    }
    const double fx = x_span > 0
                          ? (static_cast<double>(d.serial()) - x_lo) / x_span
                          : 0.5;
    coords.push_back(svg_num(plot_x0 + fx * plot_w) + "," +
                     svg_num(scale.map(*v)));
  }
  flush();
}

}  // namespace detail

// Two stacked panels sharing the date axis: the price series above, the
// measure curves below. Output is plain SVG and byte-identical for
// identical inputs.
inline void export_chart(const ChartSeries& price,
                         const std::vector<ChartSeries>& measures,
                         const std::string& path) {
  if (price.points.empty()) throw Error("chart needs a nonempty price series");
  if (measures.empty()) throw Error("chart needs at least one measure series");

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);

  const double width = 1000, height = 620;
  const double x0 = 70, x1 = 975;
  const double top_y0 = 40, top_y1 = 290;     // price panel (y0 = top edge)
  const double bot_y0 = 330, bot_y1 = 580;    // measure panel

  double date_lo = 0, date_hi = 0;
  bool seen = false;
  auto widen = [&](const ChartSeries& s) {
    for (const auto& [d, v] : s.points) {
      const double x = static_cast<double>(d.serial());
      date_lo = seen ? std::min(date_lo, x) : x;
      date_hi = seen ? std::max(date_hi, x) : x;
      seen = true;
    }
  };
  widen(price);
  for (const ChartSeries& s : measures) widen(s);
  const double x_span = date_hi - date_lo;

  const detail::PanelScale top =
      detail::panel_scale({&price}, top_y0, top_y1);
  std::vector<const ChartSeries*> bottom_curves;
  for (const ChartSeries& s : measures) bottom_curves.push_back(&s);
  const detail::PanelScale bottom =
      detail::panel_scale(bottom_curves, bot_y0, bot_y1);

  static const char* kPalette[] = {"#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#e377c2"};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\""
      << height << "\" fill=\"white\"/>\n";

  auto panel_frame = [&](double y_top, double y_bot, const std::string& label,
                         const detail::PanelScale& scale) {
    out << "  <rect x=\"" << detail::svg_num(x0) << "\" y=\""
        << detail::svg_num(y_top) << "\" width=\"" << detail::svg_num(x1 - x0)
        << "\" height=\"" << detail::svg_num(y_bot - y_top)
        << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    out << "  <text x=\"" << detail::svg_num(x0) << "\" y=\""
        << detail::svg_num(y_top - 8) << "\" font-family=\"sans-serif\" "
        << "font-size=\"13\" fill=\"#333\">" << label << "</text>\n";
    out << "  <text x=\"" << detail::svg_num(x0 - 6) << "\" y=\""
        << detail::svg_num(y_bot) << "\" font-family=\"sans-serif\" "
        << "font-size=\"11\" fill=\"#333\" text-anchor=\"end\">"
        << detail::svg_num(scale.lo) << "</text>\n";
    out << "  <text x=\"" << detail::svg_num(x0 - 6) << "\" y=\""
        << detail::svg_num(y_top + 10) << "\" font-family=\"sans-serif\" "
        << "font-size=\"11\" fill=\"#333\" text-anchor=\"end\">"
        << detail::svg_num(scale.hi) << "</text>\n";
  };

  std::string bottom_label;
  for (const ChartSeries& s : measures) {
    if (!bottom_label.empty()) bottom_label += ", ";
    bottom_label += s.name;
  }
  panel_frame(top_y0, top_y1, price.name, top);
  panel_frame(bot_y0, bot_y1, bottom_label, bottom);

  // Date labels under the bottom panel.
  if (seen) {
    Date first{}, last{};
    bool have = false;
    for (const auto& [d, v] : price.points) {
      if (!have) {
        first = d;
        have = true;
      }
      last = d;
    }
    out << "  <text x=\"" << detail::svg_num(x0) << "\" y=\""
        << detail::svg_num(bot_y1 + 18) << "\" font-family=\"sans-serif\" "
        << "font-size=\"11\" fill=\"#333\">" << first.to_string()
        << "</text>\n";
    out << "  <text x=\"" << detail::svg_num(x1) << "\" y=\""
        << detail::svg_num(bot_y1 + 18) << "\" font-family=\"sans-serif\" "
        << "font-size=\"11\" fill=\"#333\" text-anchor=\"end\">"
        << last.to_string() << "</text>\n";
  }

  detail::emit_polylines(out, price, date_lo, x_span, x0, x1 - x0, top,
                         "#1f77b4");
  for (std::size_t i = 0; i < measures.size(); ++i)
    detail::emit_polylines(out, measures[i], date_lo, x_span, x0, x1 - x0,
                           bottom, kPalette[i % 6]);

  out << "</svg>\n";
  if (!out) throw IoError("failed while writing " + path);
}

// Convenience overload: price from the time series, measure dates resolved
// through the series' own calendar.
inline void export_chart(const TimeSeries& series,
                         const std::vector<MeasureSeries>& measures,
                         const std::string& path) {
  ChartSeries price;
  price.name = "price";
  price.points.reserve(series.size());
  for (std::size_t i = 0; i < series.size(); ++i)
    price.points.emplace_back(series.dates[i], series.values[i]);

  std::vector<ChartSeries> curves;
  curves.reserve(measures.size());
  for (const MeasureSeries& m : measures) {
    ChartSeries c;
    c.name = m.name;
    c.points.reserve(m.points.size());
    for (const SeriesPoint& pt : m.points) {
      if (pt.index < 0 || pt.index >= static_cast<std::int64_t>(series.size()))
        throw Error("measure index " + std::to_string(pt.index) +
                    " outside the series");
      c.points.emplace_back(series.dates[static_cast<std::size_t>(pt.index)],
                            pt.value);
    }
    curves.push_back(std::move(c));
  }
  export_chart(price, curves, path);
}

}  // namespace rqa
