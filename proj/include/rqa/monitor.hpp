#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rqa/series.hpp"
#include "rqa/windowed.hpp"

namespace rqa {

// How the trailing subseries is normalized before each monitoring point.
// PerWindow is the real-time procedure; Global exists to expose that the
// per-subseries normalization is the only difference from the windowed
// method; None feeds raw values through (synthetic fixtures).
enum class NormalizationScope { PerWindow, Global, None };

struct MonitorConfig {
  std::int64_t lpr = 1500;  // trailing subseries length
  int ws = 250;
  EmbeddingConfig embedding;
  MeasureSelection measures = MeasureSelection::of({Measure::Lam});
  NormalizationScope scope = NormalizationScope::PerWindow;
};

namespace detail {

// Measures of the final ws x ws window of the plot built from `working`,
// a subseries that is already in the space the plot should see.
inline MeasureSet monitor_tail_measures(std::span<const double> working,
                                        const MonitorConfig& cfg) {
  const EmbeddedSeries full = delay_embed(working, cfg.embedding.m,
                                          cfg.embedding.tau);
  const std::int64_t states = full.count();
  if (states < cfg.ws)
    throw WindowTooLarge("ws exceeds the embedded trailing subseries");

  // Only the last ws states enter the final window; the plot restricted to
  // them is bit-identical to that window of the full-subseries plot.
  EmbeddedSeries tail;
  tail.m = full.m;
  tail.tau = full.tau;
  tail.data.assign(full.data.end() - static_cast<std::ptrdiff_t>(cfg.ws) * full.m,
                   full.data.end());
  const RecurrencePlot rp = build_rp(tail, cfg.embedding);
  return compute_measures(rp, cfg.embedding, cfg.measures);
}

}  // namespace detail

// One real-time monitoring point: normalize values[t-lpr+1 .. t], embed,
// build the plot, and read the measures of its final ws x ws window.
// Uses no data past index t.
inline MeasureSet monitor_point(std::span<const double> values, std::int64_t t,
                                const MonitorConfig& cfg) {
  const std::int64_t n = static_cast<std::int64_t>(values.size());
  if (cfg.lpr < cfg.ws) throw Error("lpr must be >= ws");
  if (cfg.lpr > n) throw SeriesTooShort("series shorter than lpr");
  if (t < cfg.lpr - 1 || t >= n)
    throw SeriesTooShort("monitor point needs lpr-1 <= t < N");

  const std::span<const double> slice =
      values.subspan(static_cast<std::size_t>(t - cfg.lpr + 1),
                     static_cast<std::size_t>(cfg.lpr));

  MeasureSet ms;
  switch (cfg.scope) {
    case NormalizationScope::PerWindow:
      ms = detail::monitor_tail_measures(normalize(slice), cfg);
      break;
    case NormalizationScope::Global: {
      const std::vector<double> whole = normalize(values);
      ms = detail::monitor_tail_measures(
          std::span<const double>(whole).subspan(
              static_cast<std::size_t>(t - cfg.lpr + 1),
              static_cast<std::size_t>(cfg.lpr)),
          cfg);
      break;
    }
    case NormalizationScope::None:
      ms = detail::monitor_tail_measures(slice, cfg);
      break;
  }
  ms.window_end = t;
  return ms;
}

inline MeasureSet monitor_point(const TimeSeries& series, std::int64_t t,
                                const MonitorConfig& cfg) {
  return monitor_point(std::span<const double>(series.values), t, cfg);
}

struct MonitorResult {
  MonitorConfig config;
  // One entry per t in [lpr-1, N-1]. nullopt marks a degenerate trailing
  // window (constant prices), which is skipped rather than fatal.
  std::vector<std::pair<std::int64_t, std::optional<MeasureSet>>> points;

  MeasureSeries series(Measure m) const {
    MeasureSeries s;
    s.name = measure_name(m);
    s.ws = config.ws;
    s.step = 1;
    s.embedding = config.embedding;
    s.points.reserve(points.size());
    for (const auto& [t, ms] : points)
      s.points.push_back({t, ms ? ms->get(m) : std::nullopt});
    return s;
  }
};

// The rolling simulation: one monitor_point per day from the first index
// with a full trailing subseries to the end. Strictly causal.
inline MonitorResult monitor_series(std::span<const double> values,
                                    const MonitorConfig& cfg) {
  const std::int64_t n = static_cast<std::int64_t>(values.size());
  if (cfg.lpr > n) throw SeriesTooShort("series shorter than lpr");

  MonitorResult out;
  out.config = cfg;
  out.points.reserve(static_cast<std::size_t>(n - cfg.lpr + 1));

  // Global scope normalizes once; each point then slices the shared row.
  std::vector<double> whole;
  MonitorConfig point_cfg = cfg;
  std::span<const double> source = values;
  if (cfg.scope == NormalizationScope::Global) {
    whole = normalize(values);
    source = whole;
    point_cfg.scope = NormalizationScope::None;
  }

  for (std::int64_t t = cfg.lpr - 1; t < n; ++t) {
    try {
      out.points.emplace_back(t, monitor_point(source, t, point_cfg));
    } catch (const DegenerateSeries&) {
      out.points.emplace_back(t, std::nullopt);
    }
  }
  return out;
}

inline MonitorResult monitor_series(const TimeSeries& series,
                                    const MonitorConfig& cfg) {
  return monitor_series(std::span<const double>(series.values), cfg);
}

}  // namespace rqa
