#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rqa/date.hpp"
#include "rqa/errors.hpp"
#include "rqa/windowed.hpp"

namespace rqa {

enum class PeriodKind { Normal, Instability, Crisis, Relaxation };

inline const char* period_kind_name(PeriodKind k) {
  switch (k) {
    case PeriodKind::Normal: return "normal";
    case PeriodKind::Instability: return "instability";
    case PeriodKind::Crisis: return "crisis";
    case PeriodKind::Relaxation: return "relaxation";
  }
  return "?";
}

struct Period {
  PeriodKind kind = PeriodKind::Normal;
  std::int64_t start_index = 0;
  std::int64_t end_index = 0;
  Date start_date;
  Date end_date;
};

struct SegmentParams {
  // Centered moving-average width (odd). Also the run length that makes a
  // band exit "sustained".
  int smooth_width = 11;
  // Normal band on the smoothed curve: [max - band_fraction, max].
  double band_fraction = 0.02;
  // Sustained drop below the band that marks instability.
  double instability_drop = 0.02;
  // Total smoothed drop within one decline run that marks a crisis.
  double crisis_drop = 0.05;

  void check() const {
    if (smooth_width < 1 || smooth_width % 2 == 0)
      throw Error("smoothing width must be odd and >= 1");
    if (!(crisis_drop > instability_drop && instability_drop > 0))
      throw Error("need crisis_drop > instability_drop > 0");
  }
};

// Dated regime periods plus the crisis statistics. Crisis fields stay
// nullopt when no decline run reaches the crisis drop.
struct SegmentReport {
  std::vector<Period> periods;
  double band_low = 0;
  double band_high = 0;
  std::optional<double> lam_at_crisis_start;
  std::optional<double> lam_minimum;
  std::optional<double> lam_drop;
  std::optional<double> lam_drop_pct;
  std::optional<std::int64_t> crisis_time_days;

  bool crisis_detected() const { return lam_at_crisis_start.has_value(); }
};

// Turn a laminarity series into dated periods. Detection runs on a
// moving-average smooth of the series; the reported statistics read the
// raw values at the detected indices. Points with no value are skipped.
inline SegmentReport segment_lam(
    const MeasureSeries& lam, const SegmentParams& params,
    const std::function<Date(std::int64_t)>& date_of) {
  params.check();

  std::vector<std::int64_t> idx;
  std::vector<double> raw;
  for (const SeriesPoint& pt : lam.points)
    if (pt.value) {
      idx.push_back(pt.index);
      raw.push_back(*pt.value);
    }
  const std::int64_t m = static_cast<std::int64_t>(raw.size());
  if (m == 0) throw Error("laminarity series has no values");

  // Centered moving average, shrunk at the edges.
  const std::int64_t h = (params.smooth_width - 1) / 2;
  std::vector<double> smooth(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) {
    const std::int64_t lo = std::max<std::int64_t>(0, i - h);
    const std::int64_t hi = std::min<std::int64_t>(m - 1, i + h);
    double acc = 0;
    for (std::int64_t k = lo; k <= hi; ++k)
      acc += raw[static_cast<std::size_t>(k)];
    smooth[static_cast<std::size_t>(i)] = acc / static_cast<double>(hi - lo + 1);
  }

  SegmentReport report;
  report.band_high = *std::max_element(smooth.begin(), smooth.end());
  report.band_low = report.band_high - params.band_fraction;

  // Instability: first run of smooth_width consecutive smoothed points more
  // than instability_drop below the band.
  std::optional<std::int64_t> instability_onset;
  {
    const double floor_level = report.band_low - params.instability_drop;
    std::int64_t run = 0;
    for (std::int64_t i = 0; i < m; ++i) {
      run = smooth[static_cast<std::size_t>(i)] < floor_level ? run + 1 : 0;
      if (run >= params.smooth_width) {
        instability_onset = i - run + 1;
        break;
      }
    }
  }

  // Crisis: first maximal non-increasing run of the smoothed curve whose
  // drop from the decline onset reaches crisis_drop. The onset is the first
  // real decrease inside the run (a flat stretch ahead of the fall does not
  // count); the first index attaining the run minimum ends the crisis.
  //
  // "Flat" tolerates last-ulp dust from the moving-average sums; the
  // tolerance scales with crisis_drop so detection stays affine-invariant.
  const double flat_eps = 1e-9 * params.crisis_drop;
  auto value_at = [&](std::int64_t i) {
    return smooth[static_cast<std::size_t>(i)];
  };
  std::optional<std::int64_t> crisis_onset, crisis_min;
  for (std::int64_t a = 0; a < m;) {
    std::int64_t b = a;
    while (b + 1 < m && value_at(b + 1) <= value_at(b) + flat_eps) ++b;
    std::int64_t onset = -1;
    for (std::int64_t j = a; j < b; ++j)
      if (value_at(j + 1) < value_at(j) - flat_eps) {
        onset = j;
        break;
      }
    if (onset >= 0 && value_at(onset) - value_at(b) >= params.crisis_drop) {
      std::int64_t p = onset;
      while (value_at(p) > value_at(b) + flat_eps) ++p;
      crisis_onset = onset;
      crisis_min = p;
      break;
    }
    a = b + 1;
  }

  // Assemble periods in source coordinates.
  auto push = [&](PeriodKind kind, std::int64_t from, std::int64_t to) {
    if (from > to) return;
    Period p;
    p.kind = kind;
    p.start_index = idx[static_cast<std::size_t>(from)];
    p.end_index = idx[static_cast<std::size_t>(to)];
    p.start_date = date_of(p.start_index);
    p.end_date = date_of(p.end_index);
    report.periods.push_back(p);
  };

  const bool instability_applies =
      instability_onset && (!crisis_onset || *instability_onset < *crisis_onset);

  std::int64_t first_onset = m;  // one past the end = all normal
  if (instability_applies) first_onset = *instability_onset;
  else if (crisis_onset) first_onset = *crisis_onset;

  push(PeriodKind::Normal, 0, first_onset - 1);
  if (instability_applies)
    push(PeriodKind::Instability, *instability_onset,
         (crisis_onset ? *crisis_onset : m) - 1);
  if (crisis_onset) {
    push(PeriodKind::Crisis, *crisis_onset, *crisis_min);
    push(PeriodKind::Relaxation, *crisis_min + 1, m - 1);

    const double at_start = raw[static_cast<std::size_t>(*crisis_onset)];
    const double at_min = raw[static_cast<std::size_t>(*crisis_min)];
    report.lam_at_crisis_start = at_start;
    report.lam_minimum = at_min;
    report.lam_drop = at_start - at_min;
    if (at_start > 0) report.lam_drop_pct = (at_start - at_min) / at_start;
    report.crisis_time_days = idx[static_cast<std::size_t>(*crisis_min)] -
                              idx[static_cast<std::size_t>(*crisis_onset)];
  }

  return report;
}

}  // namespace rqa
