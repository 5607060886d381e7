#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rqa/errors.hpp"

namespace rqa {

enum class NormKind { Maximum, Euclidean };

inline std::string to_string(NormKind norm) {
  return norm == NormKind::Maximum ? "maximum" : "euclidean";
}

inline std::optional<NormKind> parse_norm(const std::string& name) {
  if (name == "maximum" || name == "max") return NormKind::Maximum;
  if (name == "euclidean" || name == "l2") return NormKind::Euclidean;
  return {};
}

// Embedding and recurrence parameters. Defaults are the working set for
// daily market data: scalar embedding, threshold 0.1 in sd units under the
// maximum norm, minimal line length 2, LOI-only Theiler exclusion.
struct EmbeddingConfig {
  int m = 1;
  int tau = 1;
  double epsilon = 0.1;
  NormKind norm = NormKind::Maximum;
  int l_min = 2;
  int v_min = 2;
  int theiler = 1;

  void check() const {
    if (m < 1) throw Error("embedding dimension must be >= 1");
    if (tau < 1) throw Error("delay must be >= 1");
    if (!(epsilon > 0)) throw Error("threshold must be > 0");
    if (l_min < 2) throw Error("l_min must be >= 2");
    if (v_min < 2) throw Error("v_min must be >= 2");
    if (theiler < 0) throw Error("theiler must be >= 0");
  }
};

// Time-delay reconstruction of a scalar series: point i is
// (s_i, s_{i+tau}, ..., s_{i+(m-1)tau}), stored row-major.
//
// source_start anchors plot/window indices to the source series. A state is
// indexed by its most recent sample, so state i maps to source index
// source_start + i and windowed values always land on the sample they were
// computed through. With m = 1 this is the identity.
struct EmbeddedSeries {
  int m = 1;
  int tau = 1;
  std::vector<double> data;  // size() == count()*m
  std::int64_t source_start = 0;

  std::int64_t count() const {
    return m == 0 ? 0 : static_cast<std::int64_t>(data.size()) / m;
  }
  std::span<const double> point(std::int64_t i) const {
    return {data.data() + i * m, static_cast<std::size_t>(m)};
  }
};

inline double mean_of(std::span<const double> xs) {
  double sum = 0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

// Sample standard deviation (N-1 denominator).
inline double sample_sd(std::span<const double> xs) {
  const double mu = mean_of(xs);
  double ss = 0;
  for (double x : xs) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

// Z-score the series: output has mean 0 and sample sd 1. Constant input is
// an error; synthetic fixtures that need raw values skip this step instead.
inline std::vector<double> normalize(std::span<const double> series) {
  if (series.size() < 2) throw SeriesTooShort("normalize needs >= 2 points");
  const double mu = mean_of(series);
  const double sd = sample_sd(series);
  if (sd == 0) throw DegenerateSeries();
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i)
    out[i] = (series[i] - mu) / sd;
  return out;
}

inline EmbeddedSeries delay_embed(std::span<const double> series, int m,
                                  int tau) {
  if (m < 1 || tau < 1) throw Error("embedding needs m >= 1 and tau >= 1");
  const std::int64_t n = static_cast<std::int64_t>(series.size());
  const std::int64_t count = n - static_cast<std::int64_t>(m - 1) * tau;
  if (count < 2)
    throw SeriesTooShort("need N - (m-1)*tau >= 2, got " +
                         std::to_string(count));
  EmbeddedSeries e;
  e.m = m;
  e.tau = tau;
  e.source_start = static_cast<std::int64_t>(m - 1) * tau;
  e.data.resize(static_cast<std::size_t>(count) * m);
  for (std::int64_t i = 0; i < count; ++i)
    for (int k = 0; k < m; ++k)
      e.data[static_cast<std::size_t>(i) * m + k] =
          series[static_cast<std::size_t>(i + static_cast<std::int64_t>(k) * tau)];
  return e;
}

namespace detail {

// Equal-width bin index over [lo, hi]; the top edge folds into the last bin.
inline int bin_index(double x, double lo, double inv_width, int bins) {
  int b = static_cast<int>((x - lo) * inv_width);
  if (b < 0) b = 0;
  if (b >= bins) b = bins - 1;
  return b;
}

}  // namespace detail

// Average mutual information (nats) between the series and its lag-L copy,
// for L = 0..max_lag. Joint distribution estimated on a bins x bins
// equal-width histogram spanning the range of the full series, so the
// estimate is invariant to reversing the series.
//
// Terms are accumulated per unordered bin pair, which makes that reversal
// symmetry exact in floating point, not just up to rounding.
inline std::vector<double> average_mutual_information(
    std::span<const double> series, int max_lag, int bins) {
  const std::int64_t n = static_cast<std::int64_t>(series.size());
  if (bins < 2) throw Error("AMI needs bins >= 2");
  if (max_lag < 0) throw Error("AMI needs max_lag >= 0");
  if (n <= static_cast<std::int64_t>(max_lag) + 1)
    throw SeriesTooShort("AMI needs N > max_lag + 1");

  double lo = series[0], hi = series[0];
  for (double x : series) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (hi == lo) throw DegenerateSeries();
  const double inv_width = bins / (hi - lo);

  std::vector<double> ami(static_cast<std::size_t>(max_lag) + 1, 0.0);
  std::vector<std::int64_t> joint(static_cast<std::size_t>(bins) * bins);
  std::vector<std::int64_t> row(bins), col(bins);

  for (int lag = 0; lag <= max_lag; ++lag) {
    std::fill(joint.begin(), joint.end(), 0);
    std::fill(row.begin(), row.end(), 0);
    std::fill(col.begin(), col.end(), 0);
    const std::int64_t pairs = n - lag;
    for (std::int64_t t = 0; t < pairs; ++t) {
      const int a = detail::bin_index(series[static_cast<std::size_t>(t)], lo,
                                      inv_width, bins);
      const int b = detail::bin_index(
          series[static_cast<std::size_t>(t + lag)], lo, inv_width, bins);
      ++joint[static_cast<std::size_t>(a) * bins + b];
      ++row[a];
      ++col[b];
    }
    const double inv_n = 1.0 / static_cast<double>(pairs);
    auto term = [&](int a, int b) -> double {
      const std::int64_t c = joint[static_cast<std::size_t>(a) * bins + b];
      if (c == 0) return 0.0;
      const double p = static_cast<double>(c) * inv_n;
      const double pa = static_cast<double>(row[a]) * inv_n;
      const double qb = static_cast<double>(col[b]) * inv_n;
      return p * std::log(p / (pa * qb));
    };
    double acc = 0;
    for (int a = 0; a < bins; ++a) {
      acc += term(a, a);
      for (int b = a + 1; b < bins; ++b) acc += term(a, b) + term(b, a);
    }
    ami[static_cast<std::size_t>(lag)] = acc;
  }
  return ami;
}

// First strict local minimum: smallest i with curve[i-1] > curve[i] and
// curve[i] <= curve[i+1]. Plateaus report their first index. nullopt when
// the curve is monotone.
inline std::optional<std::size_t> first_minimum(std::span<const double> curve) {
  if (curve.size() < 3) throw Error("first_minimum needs >= 3 points");
  for (std::size_t i = 1; i + 1 < curve.size(); ++i)
    if (curve[i - 1] > curve[i] && curve[i] <= curve[i + 1]) return i;
  return {};
}

// Delay suggestion from an AMI curve: the lag of the curve's minimum over
// lags >= 1. Binned AMI estimates of deterministic signals carry enough
// cell-occupancy noise that the literal first local dip can fire at lag 1;
// the scanned-range minimum is stable, and on smooth curves the two
// coincide. nullopt when the minimum sits at the last lag (no dip inside
// the scanned range).
inline std::optional<std::size_t> ami_minimum_lag(
    std::span<const double> curve) {
  if (curve.size() < 3) throw Error("ami_minimum_lag needs >= 3 points");
  std::size_t best = 1;
  for (std::size_t i = 1; i < curve.size(); ++i)
    if (curve[i] < curve[best]) best = i;
  if (best + 1 == curve.size()) return {};
  return best;
}

// False-nearest-neighbor fraction for each dimension m = 1..max_m (Kennel
// criteria). The neighbor search and base distance use the Euclidean norm;
// a neighbor is false when the coordinate added by dimension m+1 jumps by
// more than rtol times the m-dimensional distance, or by more than
// atol * sd(series).
inline std::vector<double> false_nearest_neighbors(
    std::span<const double> series, int tau, int max_m, double rtol = 15.0,
    double atol = 2.0) {
  if (tau < 1 || max_m < 1) throw Error("FNN needs tau >= 1 and max_m >= 1");
  if (!(rtol > 0) || !(atol > 0)) throw Error("FNN needs rtol, atol > 0");
  const std::int64_t n = static_cast<std::int64_t>(series.size());
  // Dimension max_m+1 must still embed: N - max_m*tau points, at least 2.
  if (n - static_cast<std::int64_t>(max_m) * tau < 2)
    throw SeriesTooShort("FNN needs N - max_m*tau >= 2");

  const double sd = sample_sd(series);
  std::vector<double> fractions(static_cast<std::size_t>(max_m), 0.0);

  for (int m = 1; m <= max_m; ++m) {
    // Candidates must exist in dimension m+1 as well.
    const std::int64_t count = n - static_cast<std::int64_t>(m) * tau;
    std::int64_t false_count = 0, total = 0;
    for (std::int64_t i = 0; i < count; ++i) {
      double best = -1.0;
      std::int64_t best_j = -1;
      for (std::int64_t j = 0; j < count; ++j) {
        if (j == i) continue;
        double d2 = 0;
        for (int k = 0; k < m; ++k) {
          const double diff =
              series[static_cast<std::size_t>(i + static_cast<std::int64_t>(k) * tau)] -
              series[static_cast<std::size_t>(j + static_cast<std::int64_t>(k) * tau)];
          d2 += diff * diff;
        }
        if (best < 0 || d2 < best) {
          best = d2;
          best_j = j;
        }
      }
      if (best_j < 0) continue;
      const double base = std::sqrt(best);
      const double jump =
          std::abs(series[static_cast<std::size_t>(i + static_cast<std::int64_t>(m) * tau)] -
                   series[static_cast<std::size_t>(best_j + static_cast<std::int64_t>(m) * tau)]);
      const bool is_false =
          (base > 0 && jump / base > rtol) || (jump > atol * sd);
      false_count += is_false ? 1 : 0;
      ++total;
    }
    fractions[static_cast<std::size_t>(m - 1)] =
        total > 0 ? static_cast<double>(false_count) / static_cast<double>(total)
                  : 0.0;
  }
  return fractions;
}

}  // namespace rqa
