#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rqa/measures.hpp"
#include "rqa/recurrence.hpp"

namespace rqa {

struct SeriesPoint {
  std::int64_t index = 0;
  std::optional<double> value;
};

// One measure sampled along the series, indices strictly increasing.
struct MeasureSeries {
  std::string name;
  std::vector<SeriesPoint> points;
  int ws = 0;
  int step = 1;
  EmbeddingConfig embedding;
};

// All selected measures for every window position.
struct WindowedMeasures {
  int ws = 0;
  int step = 1;
  EmbeddingConfig embedding;
  std::vector<MeasureSet> rows;

  MeasureSeries series(Measure m) const {
    MeasureSeries s;
    s.name = measure_name(m);
    s.ws = ws;
    s.step = step;
    s.embedding = embedding;
    s.points.reserve(rows.size());
    for (const MeasureSet& row : rows)
      s.points.push_back({row.window_end, row.get(m)});
    return s;
  }
};

// The standard windowed method: slide a ws x ws submatrix along the LOI,
// one step at a time, and evaluate the measures on each submatrix as a
// standalone plot. The value for window [k, k+ws) is assigned to source
// index k+ws-1, the window end, so no point reflects future data.
inline WindowedMeasures windowed_measures(
    const RecurrencePlot& rp, const EmbeddingConfig& cfg, int ws, int step = 1,
    MeasureSelection sel = MeasureSelection::all()) {
  if (ws < 1) throw Error("window size must be >= 1");
  if (step < 1) throw Error("step must be >= 1");
  if (ws > rp.n())
    throw WindowTooLarge("window size " + std::to_string(ws) +
                         " exceeds plot of size " + std::to_string(rp.n()));

  WindowedMeasures out;
  out.ws = ws;
  out.step = step;
  out.embedding = cfg;
  out.rows.reserve(
      static_cast<std::size_t>((rp.n() - ws) / step + 1));
  for (std::int64_t k = 0; k + ws <= rp.n(); k += step)
    out.rows.push_back(compute_measures(rp.window(k, ws), cfg, sel));
  return out;
}

}  // namespace rqa
