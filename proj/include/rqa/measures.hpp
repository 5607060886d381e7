#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rqa/recurrence.hpp"

namespace rqa {

enum class Measure : unsigned {
  Rr = 0,
  Det,
  LMean,
  LMax,
  Div,
  Entr,
  Trend,
  Lam,
  Tt,
  T1,
  T2,
};

inline constexpr int kMeasureCount = 11;

// Canonical order, also the measures-CSV column order.
inline constexpr const char* kMeasureNames[kMeasureCount] = {
    "rr", "det", "l", "lmax", "div", "entr", "trend", "lam", "tt", "t1", "t2"};

inline const char* measure_name(Measure m) {
  return kMeasureNames[static_cast<unsigned>(m)];
}

inline std::optional<Measure> parse_measure(const std::string& name) {
  for (int i = 0; i < kMeasureCount; ++i)
    if (name == kMeasureNames[i]) return static_cast<Measure>(i);
  return {};
}

// Which measures to evaluate. Skipping a family skips its extraction pass,
// which matters when thousands of windows are scanned.
class MeasureSelection {
public:
  static MeasureSelection all() {
    return MeasureSelection((1u << kMeasureCount) - 1);
  }
  static MeasureSelection none() { return MeasureSelection(0); }
  static MeasureSelection of(std::initializer_list<Measure> ms) {
    MeasureSelection s(0);
    for (Measure m : ms) s.add(m);
    return s;
  }

  MeasureSelection& add(Measure m) {
    mask_ |= 1u << static_cast<unsigned>(m);
    return *this;
  }
  bool contains(Measure m) const {
    return (mask_ >> static_cast<unsigned>(m)) & 1u;
  }
  bool empty() const { return mask_ == 0; }

  std::vector<Measure> ordered() const {
    std::vector<Measure> out;
    for (int i = 0; i < kMeasureCount; ++i)
      if ((mask_ >> i) & 1u) out.push_back(static_cast<Measure>(i));
    return out;
  }

  bool needs_diagonals() const {
    return contains(Measure::Det) || contains(Measure::LMean) ||
           contains(Measure::LMax) || contains(Measure::Div) ||
           contains(Measure::Entr) || contains(Measure::Trend);
  }
  bool needs_verticals() const {
    return contains(Measure::Lam) || contains(Measure::Tt) ||
           contains(Measure::T1) || contains(Measure::T2);
  }

private:
  explicit MeasureSelection(unsigned mask) : mask_(mask) {}
  unsigned mask_;
};

// Distribution of maximal line lengths. For the diagonal kind the Theiler
// band |i-j| < theiler is excluded and total_recurrence_points counts the
// set bits outside that band; the vertical kind covers the full matrix.
struct LineHistogram {
  enum class Kind { Diagonal, Vertical };
  Kind kind = Kind::Diagonal;
  std::map<std::int64_t, std::int64_t> counts;
  std::int64_t total_recurrence_points = 0;
};

namespace detail {

struct DiagonalScan {
  LineHistogram hist;
  std::vector<std::int64_t> upper_bits_by_offset;  // one-sided, index = offset
};

// Walk every diagonal at offset >= max(theiler, 1) in the upper triangle
// and mirror the counts; the LOI itself is included only when theiler == 0.
// Symmetry of the plot makes the lower triangle a mirror image.
inline DiagonalScan scan_diagonals(const RecurrencePlot& rp, int theiler) {
  if (theiler < 0) throw Error("theiler must be >= 0");
  const std::int64_t n = rp.n();
  DiagonalScan scan;
  scan.hist.kind = LineHistogram::Kind::Diagonal;
  scan.upper_bits_by_offset.assign(static_cast<std::size_t>(n), 0);

  for (std::int64_t k = theiler; k < n; ++k) {
    const int weight = k == 0 ? 1 : 2;
    std::int64_t run = 0, bits = 0;
    for (std::int64_t i = 0; i + k < n; ++i) {
      if (rp.test(i, i + k)) {
        ++run;
        ++bits;
      } else if (run > 0) {
        scan.hist.counts[run] += weight;
        run = 0;
      }
    }
    if (run > 0) scan.hist.counts[run] += weight;
    scan.upper_bits_by_offset[static_cast<std::size_t>(k)] = bits;
    scan.hist.total_recurrence_points += weight * bits;
  }
  return scan;
}

struct ColumnStats {
  std::int64_t bit_count = 0;
  std::int64_t first_bit = 0, last_bit = 0;
  std::int64_t run_count = 0;
  std::int64_t first_start = 0, last_start = 0;
};

}  // namespace detail

inline LineHistogram extract_diagonals(const RecurrencePlot& rp, int theiler) {
  return detail::scan_diagonals(rp, theiler).hist;
}

// Maximal vertical runs per column over the full matrix, LOI included.
// Columns equal rows by symmetry, so this scans the packed rows.
inline LineHistogram extract_verticals(const RecurrencePlot& rp) {
  LineHistogram hist;
  hist.kind = LineHistogram::Kind::Vertical;
  const std::int64_t n = rp.n();
  for (std::int64_t j = 0; j < n; ++j)
    rp.scan_row_runs(j, 0, n, [&](std::int64_t, std::int64_t len) {
      hist.counts[len] += 1;
      hist.total_recurrence_points += len;
    });
  return hist;
}

// One value per RQA measure for one plot or window. A measure is nullopt
// when it was not selected or is undefined for the plot (never NaN).
struct MeasureSet {
  std::int64_t window_end = 0;
  std::optional<double> rr, det, l_mean, l_max, div, entr, trend, lam, tt, t1,
      t2;

  std::optional<double> get(Measure m) const {
    switch (m) {
      case Measure::Rr: return rr;
      case Measure::Det: return det;
      case Measure::LMean: return l_mean;
      case Measure::LMax: return l_max;
      case Measure::Div: return div;
      case Measure::Entr: return entr;
      case Measure::Trend: return trend;
      case Measure::Lam: return lam;
      case Measure::Tt: return tt;
      case Measure::T1: return t1;
      case Measure::T2: return t2;
    }
    return {};
  }
};

// The full RQA measure suite on one plot.
//
// Conventions, fixed across the project:
//  - RR uses the full matrix, LOI included.
//  - Diagonal statistics exclude the band |i-j| < theiler, so theiler = 1
//    removes exactly the LOI. DET's denominator is the set bits outside
//    that band (0/0 is reported as 0).
//  - TREND regresses the one-sided per-diagonal recurrence rate against
//    the offset over max(theiler, 1) <= k <= floor(0.9 n).
//  - Vertical statistics (LAM, TT, T1, T2) use the full matrix; LAM's
//    denominator is every set bit.
//  - T1 averages, over columns with at least two set bits, the mean gap
//    between consecutive set bits; T2 does the same over the start indices
//    of vertical runs. Both in ascending column order.
inline MeasureSet compute_measures(const RecurrencePlot& rp,
                                   const EmbeddingConfig& cfg,
                                   MeasureSelection sel = MeasureSelection::all()) {
  const std::int64_t n = rp.n();
  if (n < 1) throw Error("cannot compute measures on an empty plot");

  MeasureSet out;
  out.window_end = rp.source_start() + n - 1;

  const std::int64_t total_bits =
      (sel.contains(Measure::Rr) || sel.needs_verticals())
          ? rp.count_set_bits()
          : 0;

  if (sel.contains(Measure::Rr))
    out.rr = static_cast<double>(total_bits) /
             (static_cast<double>(n) * static_cast<double>(n));

  if (sel.needs_diagonals()) {
    const detail::DiagonalScan scan = detail::scan_diagonals(rp, cfg.theiler);

    std::int64_t sum_ge = 0, cnt_ge = 0, longest = 0;
    for (const auto& [len, c] : scan.hist.counts) {
      longest = std::max(longest, len);
      if (len >= cfg.l_min) {
        sum_ge += len * c;
        cnt_ge += c;
      }
    }

    if (sel.contains(Measure::Det))
      out.det = scan.hist.total_recurrence_points > 0
                    ? static_cast<double>(sum_ge) /
                          static_cast<double>(scan.hist.total_recurrence_points)
                    : 0.0;
    if (sel.contains(Measure::LMean) && cnt_ge > 0)
      out.l_mean = static_cast<double>(sum_ge) / static_cast<double>(cnt_ge);
    if (sel.contains(Measure::LMax)) out.l_max = static_cast<double>(longest);
    if (sel.contains(Measure::Div) && longest > 0)
      out.div = 1.0 / static_cast<double>(longest);

    if (sel.contains(Measure::Entr)) {
      double entr = 0;
      if (cnt_ge > 0) {
        for (const auto& [len, c] : scan.hist.counts) {
          if (len < cfg.l_min) continue;
          const double p = static_cast<double>(c) / static_cast<double>(cnt_ge);
          entr -= p * std::log(p);
        }
      }
      out.entr = entr;
    }

    if (sel.contains(Measure::Trend)) {
      const std::int64_t k_min = std::max<std::int64_t>(cfg.theiler, 1);
      const std::int64_t k_max = static_cast<std::int64_t>(
          std::floor(0.9 * static_cast<double>(n)));
      std::int64_t count = 0;
      double mean_k = 0, mean_r = 0;
      for (std::int64_t k = k_min; k <= k_max && k < n; ++k) {
        mean_k += static_cast<double>(k);
        mean_r += static_cast<double>(
                      scan.upper_bits_by_offset[static_cast<std::size_t>(k)]) /
                  static_cast<double>(n - k);
        ++count;
      }
      if (count >= 2) {
        mean_k /= static_cast<double>(count);
        mean_r /= static_cast<double>(count);
        double sxy = 0, sxx = 0;
        for (std::int64_t k = k_min; k <= k_max && k < n; ++k) {
          const double rk =
              static_cast<double>(
                  scan.upper_bits_by_offset[static_cast<std::size_t>(k)]) /
              static_cast<double>(n - k);
          sxy += (static_cast<double>(k) - mean_k) * (rk - mean_r);
          sxx += (static_cast<double>(k) - mean_k) *
                 (static_cast<double>(k) - mean_k);
        }
        out.trend = sxy / sxx;
      }
    }
  }

  if (sel.needs_verticals()) {
    std::int64_t sum_ge = 0, cnt_ge = 0;
    double t1_sum = 0, t2_sum = 0;
    std::int64_t t1_cols = 0, t2_cols = 0;

    for (std::int64_t j = 0; j < n; ++j) {
      detail::ColumnStats col;
      rp.scan_row_runs(j, 0, n, [&](std::int64_t start, std::int64_t len) {
        if (col.run_count == 0) {
          col.first_bit = start;
          col.first_start = start;
        }
        col.last_bit = start + len - 1;
        col.last_start = start;
        col.bit_count += len;
        col.run_count += 1;
        if (len >= cfg.v_min) {
          sum_ge += len;
          cnt_ge += 1;
        }
      });
      if (col.bit_count >= 2) {
        t1_sum += static_cast<double>(col.last_bit - col.first_bit) /
                  static_cast<double>(col.bit_count - 1);
        ++t1_cols;
      }
      if (col.run_count >= 2) {
        t2_sum += static_cast<double>(col.last_start - col.first_start) /
                  static_cast<double>(col.run_count - 1);
        ++t2_cols;
      }
    }

    if (sel.contains(Measure::Lam))
      out.lam = total_bits > 0
                    ? static_cast<double>(sum_ge) / static_cast<double>(total_bits)
                    : 0.0;
    if (sel.contains(Measure::Tt) && cnt_ge > 0)
      out.tt = static_cast<double>(sum_ge) / static_cast<double>(cnt_ge);
    if (sel.contains(Measure::T1) && t1_cols > 0)
      out.t1 = t1_sum / static_cast<double>(t1_cols);
    if (sel.contains(Measure::T2) && t2_cols > 0)
      out.t2 = t2_sum / static_cast<double>(t2_cols);
  }

  return out;
}

}  // namespace rqa
