#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rqa/embedding.hpp"
#include "rqa/errors.hpp"

namespace rqa {

inline double state_distance(std::span<const double> a,
                             std::span<const double> b, NormKind norm) {
  if (a.size() != b.size() || a.empty())
    throw DimensionMismatch("state vectors of dimension " +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
  if (norm == NormKind::Maximum) {
    double best = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
      best = std::max(best, std::abs(a[k] - b[k]));
    return best;
  }
  double ss = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    ss += d * d;
  }
  return std::sqrt(ss);
}

// N x N binary recurrence matrix, one bit per cell, rows packed into 64-bit
// words (tail bits of each row are kept zero). Plots produced by build_rp
// are symmetric and carry the full LOI; measure extraction relies on that.
class RecurrencePlot {
public:
  RecurrencePlot() = default;
  RecurrencePlot(std::int64_t n, EmbeddingConfig config = {},
                 std::int64_t source_start = 0)
      : n_(n),
        words_per_row_((n + 63) / 64),
        bits_(static_cast<std::size_t>(n * words_per_row_), 0),
        config_(config),
        source_start_(source_start) {}

  std::int64_t n() const { return n_; }
  const EmbeddingConfig& config() const { return config_; }
  std::int64_t source_start() const { return source_start_; }
  void set_source_start(std::int64_t s) { source_start_ = s; }

  bool test(std::int64_t i, std::int64_t j) const {
    return (word(i, j >> 6) >> (j & 63)) & 1u;
  }

  void set(std::int64_t i, std::int64_t j) {
    bits_[static_cast<std::size_t>(i * words_per_row_ + (j >> 6))] |=
        std::uint64_t{1} << (j & 63);
  }

  // Raw word access for bulk construction. Bit k of word wi is column
  // wi*64 + k; bits at columns >= n() must stay zero.
  std::uint64_t& bits_word(std::int64_t i, std::int64_t wi) {
    return bits_[static_cast<std::size_t>(i * words_per_row_ + wi)];
  }

  std::int64_t count_set_bits() const {
    std::int64_t total = 0;
    for (std::uint64_t w : bits_) total += std::popcount(w);
    return total;
  }

  // Up to 64 bits of row `i` starting at column `c`; bit k = column c+k.
  std::uint64_t load_bits(std::int64_t i, std::int64_t c, int take) const {
    const std::int64_t wi = c >> 6;
    const int shift = static_cast<int>(c & 63);
    std::uint64_t w = word(i, wi) >> shift;
    if (shift != 0 && wi + 1 < words_per_row_)
      w |= word(i, wi + 1) << (64 - shift);
    if (take < 64) w &= (std::uint64_t{1} << take) - 1;
    return w;
  }

  // Visit every maximal run of set bits in row `i`, columns [c0, c1).
  // f(start_column, length). Runs are emitted left to right.
  template <class F>
  void scan_row_runs(std::int64_t i, std::int64_t c0, std::int64_t c1,
                     F&& f) const {
    std::int64_t open_start = -1;
    for (std::int64_t base = c0; base < c1; base += 64) {
      const int take = static_cast<int>(std::min<std::int64_t>(64, c1 - base));
      const std::uint64_t w = load_bits(i, base, take);
      int pos = 0;
      while (pos < take) {
        const std::uint64_t rest = w >> pos;
        if (rest == 0) {
          if (open_start >= 0) {
            f(open_start, base + pos - open_start);
            open_start = -1;
          }
          pos = take;
          break;
        }
        const int zeros = std::countr_zero(rest);
        if (zeros > 0 && open_start >= 0) {
          f(open_start, base + pos - open_start);
          open_start = -1;
        }
        const int first = pos + zeros;
        const int ones = std::countr_one(rest >> zeros);
        if (open_start < 0) open_start = base + first;
        pos = first + ones;
        if (pos < take) {
          f(open_start, base + pos - open_start);
          open_start = -1;
        }
      }
    }
    if (open_start >= 0) f(open_start, c1 - open_start);
  }

  // The ws x ws principal submatrix starting at row/column `k`, as a
  // standalone plot. Its source range shifts by k accordingly.
  RecurrencePlot window(std::int64_t k, std::int64_t ws) const {
    if (ws < 1 || k < 0 || k + ws > n_)
      throw WindowTooLarge("window [" + std::to_string(k) + ", " +
                           std::to_string(k + ws) + ") exceeds plot of size " +
                           std::to_string(n_));
    RecurrencePlot sub(ws, config_, source_start_ + k);
    for (std::int64_t i = 0; i < ws; ++i)
      for (std::int64_t c = 0; c < ws; c += 64) {
        const int take = static_cast<int>(std::min<std::int64_t>(64, ws - c));
        sub.bits_[static_cast<std::size_t>(i * sub.words_per_row_ + (c >> 6))] =
            load_bits(k + i, k + c, take);
      }
    return sub;
  }

private:
  std::uint64_t word(std::int64_t i, std::int64_t wi) const {
    return bits_[static_cast<std::size_t>(i * words_per_row_ + wi)];
  }

  std::int64_t n_ = 0;
  std::int64_t words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
  EmbeddingConfig config_;
  std::int64_t source_start_ = 0;
};

// R[i,j] = 1 iff the states i and j lie within epsilon of each other
// (closed ball), under the configured norm. Symmetric with full LOI.
inline RecurrencePlot build_rp(const EmbeddedSeries& embedded,
                               const EmbeddingConfig& config) {
  if (!(config.epsilon > 0)) throw Error("threshold must be > 0");
  const std::int64_t n = embedded.count();
  if (n < 1) throw SeriesTooShort("cannot build a plot from an empty embedding");

  RecurrencePlot rp(n, config, embedded.source_start);
  const double eps = config.epsilon;

  if (embedded.m == 1 && config.norm == NormKind::Maximum) {
    // Scalar maximum-norm fast path; rows are packed sequentially instead
    // of mirrored to keep the writes linear.
    const double* v = embedded.data.data();
    for (std::int64_t i = 0; i < n; ++i) {
      const double vi = v[i];
      std::uint64_t w = 0;
      for (std::int64_t j = 0; j < n; ++j) {
        w |= static_cast<std::uint64_t>(std::abs(vi - v[j]) <= eps)
             << (j & 63);
        if ((j & 63) == 63) {
          rp.bits_word(i, j >> 6) = w;
          w = 0;
        }
      }
      if (n & 63) rp.bits_word(i, (n - 1) >> 6) = w;
    }
    return rp;
  }

  for (std::int64_t i = 0; i < n; ++i) {
    std::uint64_t w = 0;
    for (std::int64_t j = 0; j < n; ++j) {
      const bool hit =
          state_distance(embedded.point(i), embedded.point(j), config.norm) <=
          eps;
      w |= static_cast<std::uint64_t>(hit) << (j & 63);
      if ((j & 63) == 63) {
        rp.bits_word(i, j >> 6) = w;
        w = 0;
      }
    }
    if (n & 63) rp.bits_word(i, (n - 1) >> 6) = w;
  }
  return rp;
}

inline RecurrencePlot build_rp(const EmbeddedSeries& embedded, double epsilon,
                               NormKind norm) {
  EmbeddingConfig cfg;
  cfg.m = embedded.m;
  cfg.tau = embedded.tau;
  cfg.epsilon = epsilon;
  cfg.norm = norm;
  return build_rp(embedded, cfg);
}

}  // namespace rqa
