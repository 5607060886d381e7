#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rqa/log.hpp"
#include "rqa/series.hpp"
#include "rqa/windowed.hpp"

namespace rqa {

namespace detail {

inline std::vector<std::string> split_csv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> cells;
  std::size_t from = 0;
  while (true) {
    const std::size_t comma = line.find(',', from);
    if (comma == std::string_view::npos) {
      cells.emplace_back(line.substr(from));
      break;
    }
    cells.emplace_back(line.substr(from, comma - from));
    from = comma + 1;
  }
  return cells;
}

inline std::optional<double> parse_double(std::string_view cell) {
  double v = 0;
  const char* end = cell.data() + cell.size();
  auto [p, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc{} || p != end) return {};
  return v;
}

// %.15g keeps well over 12 significant digits through a round trip.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

inline std::size_t find_column(const std::vector<std::string>& header,
                               const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw MissingColumn(name);
}

}  // namespace detail

// Read one value column of a daily CSV. Expects a header row with a `date`
// column (ISO-8601) and the named value column; rows must be complete and
// dated in strictly increasing order. Row numbers in errors are 1-based
// file lines (header = line 1).
inline TimeSeries load_csv(const std::string& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "empty file");
  const std::vector<std::string> header = detail::split_csv_line(line);
  const std::size_t date_col = detail::find_column(header, "date");
  const std::size_t value_col = detail::find_column(header, column);

  TimeSeries ts;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = detail::split_csv_line(line);
    if (cells.size() != header.size())
      throw ParseError(row, "expected " + std::to_string(header.size()) +
                                " fields, got " + std::to_string(cells.size()));

    const std::optional<Date> date = Date::parse(cells[date_col]);
    if (!date) throw ParseError(row, "invalid date '" + cells[date_col] + "'");
    if (!ts.dates.empty() && !(ts.dates.back() < *date))
      throw ParseError(row, "dates not strictly increasing at '" +
                                cells[date_col] + "'");

    if (cells[value_col].empty())
      throw ParseError(row, "missing value in column '" + column + "'");
    const std::optional<double> value = detail::parse_double(cells[value_col]);
    if (!value || !std::isfinite(*value))
      throw ParseError(row, "invalid number '" + cells[value_col] + "'");

    ts.dates.push_back(*date);
    ts.values.push_back(*value);
  }

  ts.check();
  log_info("loaded " + path + ": " + std::to_string(ts.size()) + " rows, " +
           ts.dates.front().to_string() + " .. " + ts.dates.back().to_string());
  return ts;
}

// Write measure series sharing one index grid as
// `date,index,<measure>...`; undefined values become empty cells.
// UTF-8, LF line endings.
inline void write_measures_csv(const std::string& path,
                               std::span<const Date> dates_by_index,
                               const std::vector<MeasureSeries>& series) {
  if (series.empty()) throw Error("no measure series to write");
  for (const MeasureSeries& s : series) {
    if (s.points.size() != series.front().points.size())
      throw Error("measure series disagree on the index grid");
    for (std::size_t i = 0; i < s.points.size(); ++i)
      if (s.points[i].index != series.front().points[i].index)
        throw Error("measure series disagree on the index grid");
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);

  out << "date,index";
  for (const MeasureSeries& s : series) out << ',' << s.name;
  out << '\n';

  for (std::size_t i = 0; i < series.front().points.size(); ++i) {
    const std::int64_t index = series.front().points[i].index;
    if (index < 0 || index >= static_cast<std::int64_t>(dates_by_index.size()))
      throw Error("series index " + std::to_string(index) +
                  " outside the date range");
    out << dates_by_index[static_cast<std::size_t>(index)].to_string() << ','
        << index;
    for (const MeasureSeries& s : series) {
      out << ',';
      if (s.points[i].value) out << detail::format_double(*s.points[i].value);
    }
    out << '\n';
  }
  if (!out) throw IoError("failed while writing " + path);
}

// A measures CSV read back: shared date/index grid plus one optional-valued
// column per measure, keyed by header name.
struct MeasuresCsv {
  std::vector<Date> dates;
  std::vector<std::int64_t> indices;
  std::vector<std::string> names;  // in file order
  std::map<std::string, std::vector<std::optional<double>>> columns;

  MeasureSeries series(const std::string& name) const {
    const auto it = columns.find(name);
    if (it == columns.end()) throw MissingColumn(name);
    MeasureSeries s;
    s.name = name;
    s.points.reserve(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i)
      s.points.push_back({indices[i], it->second[i]});
    return s;
  }

  Date date_of(std::int64_t index) const {
    for (std::size_t i = 0; i < indices.size(); ++i)
      if (indices[i] == index) return dates[i];
    throw Error("index " + std::to_string(index) + " not present in CSV");
  }
};

inline MeasuresCsv read_measures_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "empty file");
  const std::vector<std::string> header = detail::split_csv_line(line);
  const std::size_t date_col = detail::find_column(header, "date");
  const std::size_t index_col = detail::find_column(header, "index");

  MeasuresCsv csv;
  for (std::size_t c = 0; c < header.size(); ++c)
    if (c != date_col && c != index_col) {
      csv.names.push_back(header[c]);
      csv.columns[header[c]] = {};
    }

  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = detail::split_csv_line(line);
    if (cells.size() != header.size())
      throw ParseError(row, "expected " + std::to_string(header.size()) +
                                " fields, got " + std::to_string(cells.size()));

    const std::optional<Date> date = Date::parse(cells[date_col]);
    if (!date) throw ParseError(row, "invalid date '" + cells[date_col] + "'");
    std::int64_t index = 0;
    {
      const std::string& cell = cells[index_col];
      auto [p, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), index);
      if (ec != std::errc{} || p != cell.data() + cell.size())
        throw ParseError(row, "invalid index '" + cell + "'");
    }
    csv.dates.push_back(*date);
    csv.indices.push_back(index);

    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c == date_col || c == index_col) continue;
      if (cells[c].empty()) {
        csv.columns[header[c]].push_back(std::nullopt);
        continue;
      }
      const std::optional<double> v = detail::parse_double(cells[c]);
      if (!v) throw ParseError(row, "invalid number '" + cells[c] + "'");
      csv.columns[header[c]].push_back(*v);
    }
  }
  return csv;
}

// Two-column helper for diagnostic curves (AMI by lag, FNN by dimension).
inline void write_curve_csv(const std::string& path, const std::string& x_name,
                            const std::string& y_name,
                            std::span<const std::pair<std::int64_t, double>> points) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << x_name << ',' << y_name << '\n';
  for (const auto& [x, y] : points)
    out << x << ',' << detail::format_double(y) << '\n';
  if (!out) throw IoError("failed while writing " + path);
}

}  // namespace rqa
